#pragma once

#include <cstdint>

#include "steinso/estimators.hpp"

namespace steinso {

enum class Family { vmf, rn };

/// Full output of the goodness-of-fit test.
struct GofResult {
    double m_star = 0.0;      // minimized V-statistic
    std::variant<VmfParams, RnParams> theta_hat;
    double statistic = 0.0;   // n * m_star
    Vector eigenvalues;       // clipped Gram spectrum, descending
    double quantile = 0.0;    // estimated (1 - beta)-quantile of the null law
    double beta = 0.0;
    bool reject = false;
    int m = 0;                // null draws used
    bool fit_converged = true;
};

// Empirical (1-beta)-quantile of sum_j lambda_j Z_j^2 from m draws, taken as
// the ascending order statistic at index ceil((1-beta) m). Draw i uses the
// substream (seed, i), so the result is independent of the worker count.
double weighted_chisq_quantile(const Vector& lambdas, int m, double beta,
                               std::uint64_t seed);

// Fits the family by minimum KSD, simulates the plug-in weighted chi-square
// null from the Gram spectrum, and decides at level beta.
GofResult gof_test(const std::vector<Rotation>& samples, Family family,
                   const KernelConfig& cfg, double beta, int m,
                   std::uint64_t seed);

}  // namespace steinso
