#include "steinso/gof.hpp"

#include <algorithm>
#include <cmath>

#include "steinso/lie.hpp"

namespace steinso {

double weighted_chisq_quantile(const Vector& lambdas, int m, double beta,
                               std::uint64_t seed) {
    if (m < 100) {
        throw InsufficientDrawsError("weighted_chisq_quantile: need m >= 100 draws");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
        throw ValidationError("weighted_chisq_quantile: beta must lie in (0, 1)");
    }
    for (Eigen::Index j = 0; j < lambdas.size(); ++j) {
        if (lambdas(j) < 0.0 || !std::isfinite(lambdas(j))) {
            throw ValidationError("weighted_chisq_quantile: lambdas must be nonnegative");
        }
    }
    std::vector<double> draws(m);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(i));
        double w = 0.0;
        for (Eigen::Index j = 0; j < lambdas.size(); ++j) {
            const double z = rng.normal();
            w += lambdas(j) * z * z;
        }
        draws[i] = w;
    }
    auto idx = static_cast<std::size_t>(
        std::ceil((1.0 - beta) * static_cast<double>(m) - 1e-12));
    idx = std::clamp<std::size_t>(idx, 1, static_cast<std::size_t>(m));
    std::nth_element(draws.begin(), draws.begin() + (idx - 1), draws.end());
    return draws[idx - 1];
}

GofResult gof_test(const std::vector<Rotation>& samples, Family family,
                   const KernelConfig& cfg, double beta, int m,
                   std::uint64_t seed) {
    if (samples.size() < 2) {
        throw EmptyInputError("gof_test: need at least two samples");
    }
    const auto n = static_cast<int>(samples.size());
    const WeightedSamples ws(samples);

    GofResult result;
    result.beta = beta;
    result.m = m;

    SteinKernelFn kernel;
    if (family == Family::vmf) {
        EstimateReport fit = mksde_vmf(ws, cfg);
        result.m_star = fit.objective;
        result.fit_converged = fit.converged;
        kernel = make_vmf_kernel(std::get<VmfParams>(fit.params), cfg);
        result.theta_hat = std::move(fit.params);
    } else {
        // Moment initialization: projected Euclidean mean for mu, matched
        // dispersion for varsigma.
        const int dim = samples[0].n();
        Matrix mean = Matrix::Zero(dim, dim);
        for (const Rotation& r : samples) {
            mean += r.m();
        }
        mean /= static_cast<double>(n);
        const Rotation mu0 = Rotation::unchecked(renormalize(mean));
        double disp = 0.0;
        int used = 0;
        for (const Rotation& r : samples) {
            try {
                disp += so_log(Rotation::unchecked(r.m().transpose() * mu0.m()))
                            .m()
                            .squaredNorm();
                ++used;
            } catch (const AntipodalError&) {
                // antipodal samples carry no usable moment information
            }
        }
        const int d = dim * (dim - 1) / 2;
        double varsigma0 = 1.0;
        if (used > 0 && disp > 0.0) {
            varsigma0 = static_cast<double>(d) * used / disp;
        }
        EstimateReport fit = mksde_rn(ws, cfg, RnParams{mu0, varsigma0});
        result.m_star = fit.objective;
        result.fit_converged = fit.converged;
        kernel = make_rn_kernel(std::get<RnParams>(fit.params), cfg);
        result.theta_hat = std::move(fit.params);
    }

    result.statistic = static_cast<double>(n) * result.m_star;

    const Matrix gram = gram_matrix(samples, kernel);
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    Vector lambdas = es.eigenvalues().cwiseMax(0.0);  // clip PSD round-off
    lambdas.reverseInPlace();
    result.eigenvalues = lambdas;

    result.quantile = weighted_chisq_quantile(lambdas, m, beta, seed);
    result.reject = result.statistic > result.quantile;
    return result;
}

}  // namespace steinso
