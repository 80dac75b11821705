#pragma once

#include <variant>
#include <vector>

#include "steinso/kernels.hpp"
#include "steinso/rng.hpp"

namespace steinso {

/// Rotation samples with optional unnormalized importance ratios q/w.
class WeightedSamples {
public:
    explicit WeightedSamples(std::vector<Rotation> rotations,
                             std::vector<double> ratios = {});

    int size() const { return static_cast<int>(rotations_.size()); }
    const std::vector<Rotation>& rotations() const { return rotations_; }
    bool has_ratios() const { return !ratios_.empty(); }
    double ratio(int i) const { return ratios_.empty() ? 1.0 : ratios_[i]; }

private:
    std::vector<Rotation> rotations_;
    std::vector<double> ratios_;
};

// V-statistic (1/n^2) sum_{i,j} k(x_i,x_j) r_i r_j. Parallel with a
// deterministic per-row reduction order, so results do not depend on the
// thread count.
double ksd_v(const WeightedSamples& samples, const SteinKernelFn& k);

// Off-diagonal U-statistic; requires n >= 2 and may be negative.
double ksd_u(const WeightedSamples& samples, const SteinKernelFn& k);

namespace ref {
// Serial references: naive double loops over all ordered pairs.
double ksd_v(const WeightedSamples& samples, const SteinKernelFn& k);
double ksd_u(const WeightedSamples& samples, const SteinKernelFn& k);
}  // namespace ref

/// Quadratic system whose minimizer is the closed-form vMF MKSDE:
/// objective(F) = vec(F)^T a vec(F) - 2 b^T vec(F) + const.
struct MksdeVmfSystem {
    Matrix a;
    Vector b;
    bool rank_deficient = false;
};

MksdeVmfSystem mksde_vmf_system(const WeightedSamples& samples,
                                const KernelConfig& cfg);

struct EstimateReport {
    std::variant<VmfParams, RnParams> params;
    double objective = 0.0;
    int iterations = 0;
    bool converged = true;
    bool rank_deficient = false;
};

// Closed-form minimum-KSD estimate for the vMF family. Rank-deficient systems
// fall back to the minimum-norm least-squares solution and are flagged.
EstimateReport mksde_vmf(const WeightedSamples& samples, const KernelConfig& cfg);

struct RnOpts {
    double step = 1.0;      // initial line-search step
    int max_iters = 150;
    double tol = 1e-5;      // gradient norm stopping threshold
    double fd_step = 1e-5;  // central-difference step for the mu tangent gradient
};

// Riemannian descent for the Riemannian-normal family: mu moves along
// exponential retractions, varsigma is optimized as eta = log(varsigma).
// Backtracking keeps the objective non-increasing across accepted iterations.
EstimateReport mksde_rn(const WeightedSamples& samples, const KernelConfig& cfg,
                        const RnParams& init, const RnOpts& opts = {});

// Monte Carlo maximum likelihood baseline: ascends
// (1/n) sum tr(F^T X_i) - log Chat(F) with Chat estimated over mc_size Haar
// draws held fixed across evaluations (common random numbers).
VmfParams mle_vmf_numeric(const std::vector<Rotation>& samples, int mc_size,
                          RngStream& rng);

struct SmallFMle {
    VmfParams params;
    bool in_regime = true;  // false when the sample mean is too concentrated
};

// Small-concentration approximate MLE, F = N * mean(X), by moment matching.
SmallFMle mle_vmf_smallF(const std::vector<Rotation>& samples);

}  // namespace steinso
