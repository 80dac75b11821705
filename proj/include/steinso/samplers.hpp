#pragma once

#include <vector>

#include "steinso/kernels.hpp"
#include "steinso/rng.hpp"

namespace steinso {

/// Cayley distribution parameters: density proportional to det(I + X M^T)^kappa.
struct CayleyParams {
    Rotation m;
    double kappa = 0.0;
};

// Exact draws by rejection from Haar with envelope exp(tr(F^T X) - sigma*),
// sigma* the sum of singular values of F.
std::vector<Rotation> sample_vmf(const VmfParams& p, int count, RngStream& rng);

// Exact draws by rejection from Haar with envelope [det(I + X M^T) / 2^N]^kappa.
std::vector<Rotation> sample_cayley(const CayleyParams& p, int count,
                                    RngStream& rng);

// Exact draws by rejection from Haar; the density kernel is bounded by 1.
// Practical only for moderate varsigma at desk scale.
std::vector<Rotation> sample_rn(const RnParams& p, int count, RngStream& rng);

}  // namespace steinso
