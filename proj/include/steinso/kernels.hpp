#pragma once

#include <functional>
#include <vector>

#include "steinso/rotation.hpp"

namespace steinso {

/// Temperature of the base kernel exp(tau * tr(X^T Y)).
struct KernelConfig {
    double tau = 1.0;
};

/// von Mises-Fisher parameter: density proportional to exp(tr(F^T X)).
struct VmfParams {
    Matrix f;
};

/// Riemannian normal parameters: mode mu and inverse variance varsigma.
struct RnParams {
    Rotation mu;
    double varsigma = 1.0;
};

// Symmetric bivariate Stein kernel bound to a distribution family.
using SteinKernelFn = std::function<double(const Rotation&, const Rotation&)>;

// Riemannian gradient of log p, returned as the ambient N x N matrix
// (X^T score(X) must be skew).
using ScoreFn = std::function<Matrix(const Rotation&)>;

double base_kernel(const Rotation& x, const Rotation& y, const KernelConfig& cfg);

// Parameter-free part of every Stein kernel on SO(N):
// (tau/2)(N-1) tr(X^T Y) exp(tau tr(X^T Y)).
double c_term(const Rotation& x, const Rotation& y, const KernelConfig& cfg);

double kp_vmf(const Rotation& x, const Rotation& y, const VmfParams& p,
              const KernelConfig& cfg);

double kp_rn(const Rotation& x, const Rotation& y, const RnParams& p,
             const KernelConfig& cfg);

// Score-driven general form; validates tangency of the score output.
double kp_generic(const Rotation& x, const Rotation& y, const ScoreFn& score,
                  const KernelConfig& cfg);

// Gradients of the two family log-densities, usable as ScoreFn.
Matrix vmf_score(const Rotation& x, const VmfParams& p);
Matrix rn_score(const Rotation& x, const RnParams& p);

SteinKernelFn make_vmf_kernel(VmfParams p, KernelConfig cfg);
SteinKernelFn make_rn_kernel(RnParams p, KernelConfig cfg);

// Entry (i,j) = k(x_i, x_j) / n. Entries are computed independently, so the
// result is bitwise deterministic for any thread count.
Matrix gram_matrix(const std::vector<Rotation>& samples, const SteinKernelFn& k);

namespace ref {
// Serial reference, plain double loop.
Matrix gram_matrix(const std::vector<Rotation>& samples, const SteinKernelFn& k);
}  // namespace ref

}  // namespace steinso
