#pragma once

#include <functional>

#include "steinso/kernels.hpp"

namespace steinso {

using LogDensityFn = std::function<double(const Rotation&)>;

// Finite-difference test oracle: applies the Stein operator to the base kernel
// in both arguments, component by component along the basis directions, using
// Richardson-extrapolated central differences along curves t -> X exp(t E).
// Kernel-path arithmetic runs in long double so the mixed second differences
// stay well below the comparison tolerances. Step h must lie in [1e-6, 1e-3].
double stein_oracle(const Rotation& x, const Rotation& y,
                    const LogDensityFn& log_p_unnorm, const KernelConfig& cfg,
                    double h = 1e-4);

// Same, along an explicit basis (orthonormal recombinations leave the value
// unchanged).
double stein_oracle(const Rotation& x, const Rotation& y,
                    const LogDensityFn& log_p_unnorm, const KernelConfig& cfg,
                    const Basis& basis, double h = 1e-4);

}  // namespace steinso
