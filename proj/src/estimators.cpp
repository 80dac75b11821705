#include "steinso/estimators.hpp"

#include <cmath>
#include <exception>
#include <numeric>
#include <utility>

#include "steinso/haar.hpp"
#include "steinso/lie.hpp"
#include "steinso/parallel.hpp"
#include "steinso/vectorize.hpp"

namespace steinso {

WeightedSamples::WeightedSamples(std::vector<Rotation> rotations,
                                 std::vector<double> ratios)
    : rotations_(std::move(rotations)), ratios_(std::move(ratios)) {
    if (rotations_.empty()) {
        throw EmptyInputError("WeightedSamples: need at least one rotation");
    }
    if (!ratios_.empty()) {
        if (ratios_.size() != rotations_.size()) {
            throw DimensionError("WeightedSamples: ratios length mismatch");
        }
        for (double r : ratios_) {
            if (!(r > 0.0) || !std::isfinite(r)) {
                throw ValidationError("WeightedSamples: ratios must be positive and finite");
            }
        }
    }
}

double ksd_v(const WeightedSamples& samples, const SteinKernelFn& k) {
    const int n = samples.size();
    const auto& x = samples.rotations();
    std::vector<double> row(n, 0.0);
    parallel_for(n, [&](int i) {
        const double ri = samples.ratio(i);
        double acc = k(x[i], x[i]) * ri * ri;
        for (int j = i + 1; j < n; ++j) {
            acc += 2.0 * k(x[i], x[j]) * ri * samples.ratio(j);
        }
        row[i] = acc;
    });
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        total += row[i];
    }
    return total / (static_cast<double>(n) * n);
}

double ksd_u(const WeightedSamples& samples, const SteinKernelFn& k) {
    const int n = samples.size();
    if (n < 2) {
        throw EmptyInputError("ksd_u: need at least two samples");
    }
    const auto& x = samples.rotations();
    std::vector<double> row(n, 0.0);
    parallel_for(n, [&](int i) {
        const double ri = samples.ratio(i);
        double acc = 0.0;
        for (int j = i + 1; j < n; ++j) {
            acc += k(x[i], x[j]) * ri * samples.ratio(j);
        }
        row[i] = acc;
    });
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        total += row[i];
    }
    return 2.0 * total / (static_cast<double>(n) * (n - 1));
}

namespace ref {

double ksd_v(const WeightedSamples& samples, const SteinKernelFn& k) {
    const int n = samples.size();
    const auto& x = samples.rotations();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            total += k(x[i], x[j]) * samples.ratio(i) * samples.ratio(j);
        }
    }
    return total / (static_cast<double>(n) * n);
}

double ksd_u(const WeightedSamples& samples, const SteinKernelFn& k) {
    const int n = samples.size();
    if (n < 2) {
        throw EmptyInputError("ksd_u: need at least two samples");
    }
    const auto& x = samples.rotations();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                total += k(x[i], x[j]) * samples.ratio(i) * samples.ratio(j);
            }
        }
    }
    return total / (static_cast<double>(n) * (n - 1));
}

}  // namespace ref

namespace {

// Per-pair quadratic representer of the vMF Stein kernel:
// A(X,Y) = 1/2 [I (x) XY^T - (X^T (x) Y) S] exp(tau tr(X^T Y)).
Matrix mksde_a_pair(const Matrix& x, const Matrix& y, double e,
                    const std::vector<int>& perm) {
    const int n = static_cast<int>(x.rows());
    const int n2 = n * n;
    Matrix out = Matrix::Zero(n2, n2);
    const Matrix p = x * y.transpose();
    for (int c = 0; c < n; ++c) {
        out.block(c * n, c * n, n, n) = p;
    }
    // (X^T (x) Y) S: column b of the product is column perm[b] of X^T (x) Y.
    for (int bj = 0; bj < n; ++bj) {
        for (int bl = 0; bl < n; ++bl) {
            const int src = perm[bj * n + bl];
            const int sj = src / n, sl = src % n;
            // column src of X^T (x) Y stacks X(sj, i) * Y.col(sl) blocks
            for (int bi = 0; bi < n; ++bi) {
                out.block(bi * n, bj * n + bl, n, 1) -= x(sj, bi) * y.col(sl);
            }
        }
    }
    return 0.5 * e * out;
}

}  // namespace

MksdeVmfSystem mksde_vmf_system(const WeightedSamples& samples,
                                const KernelConfig& cfg) {
    const int n = samples.size();
    const auto& x = samples.rotations();
    const int dim = x[0].n();
    const int dim2 = dim * dim;
    const double tau = cfg.tau;
    const auto perm = perfect_shuffle_cols(dim);

    std::vector<Matrix> a_rows(n, Matrix::Zero(dim2, dim2));
    std::vector<Matrix> b_rows(n, Matrix::Zero(dim, dim));
    parallel_for(n, [&](int i) {
        const double ri = samples.ratio(i);
        const Matrix& xi = x[i].m();
        a_rows[i] += ri * ri * mksde_a_pair(xi, xi, std::exp(tau * dim), perm);
        for (int j = i + 1; j < n; ++j) {
            const double w = ri * samples.ratio(j);
            const Matrix& xj = x[j].m();
            const Matrix g = xi.transpose() * xj;
            const double e = std::exp(tau * g.trace());
            a_rows[i] += w * (mksde_a_pair(xi, xj, e, perm) +
                              mksde_a_pair(xj, xi, e, perm));
            const Matrix ag = 0.5 * (g - g.transpose());
            // (tau/2) (Xi - Xj) A(Xi^T Xj) e, doubled for the (j,i) twin.
            b_rows[i] += (tau * w * e) * ((xi - xj) * ag);
        }
    });

    Matrix a = Matrix::Zero(dim2, dim2);
    Matrix bm = Matrix::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        a += a_rows[i];
        bm += b_rows[i];
    }
    const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
    a *= inv_n2;
    bm *= inv_n2;
    a = 0.5 * (a + a.transpose());

    MksdeVmfSystem sys;
    sys.a = std::move(a);
    sys.b = vec(bm);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sys.a, Eigen::EigenvaluesOnly);
    const Vector evs = es.eigenvalues().cwiseAbs();
    const double max_ev = evs.maxCoeff();
    sys.rank_deficient = (max_ev <= 0.0) || (evs.minCoeff() < 1e-10 * max_ev);
    return sys;
}

EstimateReport mksde_vmf(const WeightedSamples& samples, const KernelConfig& cfg) {
    MksdeVmfSystem sys = mksde_vmf_system(samples, cfg);
    if (!sys.a.allFinite() || !sys.b.allFinite()) {
        throw SingularSystemError("mksde_vmf: non-finite system");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sys.a);
    const Vector& evs = es.eigenvalues();
    const double max_ev = evs.cwiseAbs().maxCoeff();
    if (max_ev <= 0.0 && sys.b.norm() > 0.0) {
        throw SingularSystemError("mksde_vmf: zero system with nonzero right-hand side");
    }
    const double cutoff = 1e-10 * max_ev;
    // Minimum-norm least-squares through the spectral decomposition; full-rank
    // systems reduce to the plain symmetric solve.
    Vector inv = Vector::Zero(evs.size());
    for (Eigen::Index i = 0; i < evs.size(); ++i) {
        if (std::abs(evs(i)) > cutoff) {
            inv(i) = 1.0 / evs(i);
        }
    }
    const Vector f = es.eigenvectors() *
                     (inv.asDiagonal() * (es.eigenvectors().transpose() * sys.b));

    EstimateReport report;
    VmfParams params{unvec(f)};
    report.objective = ksd_v(samples, make_vmf_kernel(params, cfg));
    report.params = std::move(params);
    report.iterations = 0;
    report.converged = true;
    report.rank_deficient = sys.rank_deficient;
    return report;
}

namespace {

// Objective machinery for the Riemannian-normal family. The skew parts and
// kernel weights of all pairs depend only on the samples, so they are cached
// up front at desk scale; per-evaluation work is the n matrix logs plus the
// pair reduction.
class RnObjective {
public:
    RnObjective(const WeightedSamples& samples, const KernelConfig& cfg)
        : samples_(samples),
          n_(samples.size()),
          dim_(samples.rotations()[0].n()),
          tau_(cfg.tau),
          cache_pairs_(n_ <= 1000) {
        if (cache_pairs_) {
            const auto& x = samples_.rotations();
            a_cache_.resize(static_cast<std::size_t>(n_) * n_);
            e_cache_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
            t_cache_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
            parallel_for(n_, [&](int i) {
                for (int j = i + 1; j < n_; ++j) {
                    const Matrix g = x[i].m().transpose() * x[j].m();
                    const std::size_t idx = static_cast<std::size_t>(i) * n_ + j;
                    a_cache_[idx] = 0.5 * (g - g.transpose());
                    t_cache_[idx] = g.trace();
                    e_cache_[idx] = std::exp(tau_ * t_cache_[idx]);
                }
            });
        }
    }

    struct Value {
        double v = 0.0;        // ksd_v at (mu, varsigma)
        double d_sigma = 0.0;  // d/d varsigma
    };

    // Throws AntipodalError when a sample sits at angle pi from mu.
    Value eval(const Rotation& mu, double varsigma) const {
        const auto& x = samples_.rotations();
        std::vector<Matrix> logs(n_);
        for (int i = 0; i < n_; ++i) {
            logs[i] = so_log(Rotation::unchecked(x[i].m().transpose() * mu.m())).m();
        }
        const double c_diag = 0.5 * tau_ * (dim_ - 1) * dim_;
        const double e_diag = std::exp(tau_ * dim_);
        std::vector<double> row_v(n_, 0.0), row_d(n_, 0.0);
        parallel_for(n_, [&](int i) {
            const double ri = samples_.ratio(i);
            const double li2 = logs[i].squaredNorm();
            double acc_v = (varsigma * varsigma * li2 + c_diag) * e_diag * ri * ri;
            double acc_d = 2.0 * varsigma * li2 * e_diag * ri * ri;
            for (int j = i + 1; j < n_; ++j) {
                const double w = 2.0 * ri * samples_.ratio(j);
                if (cache_pairs_) {
                    const std::size_t idx = static_cast<std::size_t>(i) * n_ + j;
                    pair_terms(logs[i], logs[j], a_cache_[idx], t_cache_[idx],
                               e_cache_[idx], varsigma, w, acc_v, acc_d);
                } else {
                    const Matrix g = x[i].m().transpose() * x[j].m();
                    const Matrix a = 0.5 * (g - g.transpose());
                    const double t = g.trace();
                    pair_terms(logs[i], logs[j], a, t, std::exp(tau_ * t), varsigma,
                               w, acc_v, acc_d);
                }
            }
            row_v[i] = acc_v;
            row_d[i] = acc_d;
        });
        Value out;
        for (int i = 0; i < n_; ++i) {
            out.v += row_v[i];
            out.d_sigma += row_d[i];
        }
        const double inv_n2 = 1.0 / (static_cast<double>(n_) * n_);
        out.v *= inv_n2;
        out.d_sigma *= inv_n2;
        return out;
    }

private:
    void pair_terms(const Matrix& li, const Matrix& lj, const Matrix& a, double t,
                    double e, double varsigma, double w, double& acc_v,
                    double& acc_d) const {
        const double ll = (li.array() * lj.array()).sum();
        const double la = (li.array() * a.array()).sum();
        const double al = (a.array() * lj.array()).sum();
        const double aa = a.squaredNorm();
        const double dot = varsigma * varsigma * ll +
                           varsigma * tau_ * (al - la) - tau_ * tau_ * aa;
        acc_v += w * (dot + 0.5 * tau_ * (dim_ - 1) * t) * e;
        acc_d += w * (2.0 * varsigma * ll + tau_ * (al - la)) * e;
    }

    const WeightedSamples& samples_;
    int n_;
    int dim_;
    double tau_;
    bool cache_pairs_;
    std::vector<Matrix> a_cache_;
    std::vector<double> e_cache_, t_cache_;
};

}  // namespace

EstimateReport mksde_rn(const WeightedSamples& samples, const KernelConfig& cfg,
                        const RnParams& init, const RnOpts& opts) {
    if (!(init.varsigma > 0.0) || !std::isfinite(init.varsigma)) {
        throw ValidationError("mksde_rn: init varsigma must be positive and finite");
    }
    const int dim = samples.rotations()[0].n();
    if (init.mu.n() != dim) {
        throw DimensionError("mksde_rn: init mu dimension mismatch");
    }
    const RnObjective objective(samples, cfg);
    const Basis basis = standard_basis(dim);
    const int d = basis.dim();

    Rotation mu = init.mu;
    double eta = std::log(init.varsigma);
    RnObjective::Value cur = objective.eval(mu, std::exp(eta));

    EstimateReport report;
    report.iterations = 0;
    report.converged = false;

    // Steepest descent in (mu-tangent, eta) with Barzilai-Borwein steps. The
    // trial displacement per iteration is capped at opts.step parameter units:
    // an unbounded eta step can collapse varsigma to 0, where the kernel loses
    // its score term and the gradient vanishes spuriously.
    Vector prev_grad;
    Vector prev_disp;
    double bb_alpha = 0.0;
    for (int iter = 0; iter <= opts.max_iters; ++iter) {
        const double varsigma = std::exp(eta);
        Vector grad(d + 1);
        for (int l = 0; l < d; ++l) {
            const Matrix& e = basis.elems[l].m();
            const Rotation mu_p = Rotation::unchecked(
                mu.m() * so_exp(SkewMatrix(opts.fd_step * e)).m());
            const Rotation mu_m = Rotation::unchecked(
                mu.m() * so_exp(SkewMatrix(-opts.fd_step * e)).m());
            grad(l) = (objective.eval(mu_p, varsigma).v -
                       objective.eval(mu_m, varsigma).v) /
                      (2.0 * opts.fd_step);
        }
        grad(d) = varsigma * cur.d_sigma;  // analytic d/d eta
        const double gnorm = grad.norm();
        if (gnorm < opts.tol) {
            report.converged = true;
            break;
        }
        if (iter == opts.max_iters) {
            break;
        }

        if (prev_grad.size() > 0) {
            const Vector y = grad - prev_grad;
            const double sy = prev_disp.dot(y);
            bb_alpha = sy > 1e-300 ? prev_disp.squaredNorm() / sy : 0.0;
        }
        double alpha = opts.step / gnorm;  // cap the trial displacement
        if (bb_alpha > 0.0) {
            alpha = std::min(bb_alpha, alpha);
        }

        Matrix dir = Matrix::Zero(dim, dim);
        for (int l = 0; l < d; ++l) {
            dir += grad(l) * basis.elems[l].m();
        }
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            const Rotation mu_c =
                Rotation::unchecked(mu.m() * so_exp(SkewMatrix(-alpha * dir)).m());
            const double eta_c = eta - alpha * grad(d);
            const RnObjective::Value cand = objective.eval(mu_c, std::exp(eta_c));
            if (cand.v <= cur.v - 1e-4 * alpha * gnorm * gnorm) {
                mu = mu_c;
                eta = eta_c;
                cur = cand;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            break;  // no descent at the smallest step; report best iterate
        }
        prev_grad = grad;
        prev_disp = -alpha * grad;
        ++report.iterations;
    }

    report.params = RnParams{mu, std::exp(eta)};
    report.objective = cur.v;
    return report;
}

SmallFMle mle_vmf_smallF(const std::vector<Rotation>& samples) {
    if (samples.empty()) {
        throw EmptyInputError("mle_vmf_smallF: empty sample set");
    }
    const int dim = samples[0].n();
    Matrix mean = Matrix::Zero(dim, dim);
    for (const Rotation& r : samples) {
        mean += r.m();
    }
    mean /= static_cast<double>(samples.size());
    SmallFMle out;
    out.params = VmfParams{static_cast<double>(dim) * mean};
    Eigen::JacobiSVD<Matrix> svd(mean);
    out.in_regime = svd.singularValues().maxCoeff() < 0.5;
    return out;
}

VmfParams mle_vmf_numeric(const std::vector<Rotation>& samples, int mc_size,
                          RngStream& rng) {
    if (samples.empty()) {
        throw EmptyInputError("mle_vmf_numeric: empty sample set");
    }
    if (mc_size < 1000) {
        throw ValidationError("mle_vmf_numeric: mc_size must be >= 1000");
    }
    const int dim = samples[0].n();
    Matrix mean = Matrix::Zero(dim, dim);
    for (const Rotation& r : samples) {
        mean += r.m();
    }
    mean /= static_cast<double>(samples.size());

    // Common random numbers: the Haar reference draws are fixed up front.
    const std::vector<Rotation> z = haar_sample(dim, mc_size, rng);

    // log-likelihood (up to a constant) and its gradient; concave in F.
    std::vector<double> scores(mc_size);
    const auto eval = [&](const Matrix& f, Matrix* grad) {
        double max_s = -1e300;
        for (int m = 0; m < mc_size; ++m) {
            scores[m] = (f.array() * z[m].m().array()).sum();
            max_s = std::max(max_s, scores[m]);
        }
        double total = 0.0;
        Matrix weighted = Matrix::Zero(dim, dim);
        for (int m = 0; m < mc_size; ++m) {
            const double w = std::exp(scores[m] - max_s);
            total += w;
            if (grad) {
                weighted += w * z[m].m();
            }
        }
        const double log_c = max_s + std::log(total / mc_size);
        if (grad) {
            *grad = mean - weighted / total;
        }
        return (mean.array() * f.array()).sum() - log_c;
    };

    Matrix f = Matrix::Zero(dim, dim);
    Matrix grad(dim, dim);
    double val = eval(f, &grad);
    double alpha = static_cast<double>(dim);  // Hessian near 0 is about I/dim
    Matrix prev_f = f, prev_grad = grad;
    for (int iter = 0; iter < 500; ++iter) {
        const double gnorm = grad.norm();
        if (gnorm < 1e-7) {
            break;
        }
        double step = alpha;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            const Matrix cand = f + step * grad;
            Matrix cand_grad(dim, dim);
            const double cand_val = eval(cand, &cand_grad);
            if (cand_val >= val + 1e-4 * step * gnorm * gnorm) {
                prev_f = f;
                prev_grad = grad;
                f = cand;
                grad = cand_grad;
                val = cand_val;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            break;
        }
        // Barzilai-Borwein step for the next iteration.
        const Matrix df = f - prev_f;
        const Matrix dg = grad - prev_grad;
        const double denom = -(df.array() * dg.array()).sum();
        if (denom > 1e-300) {
            alpha = std::clamp(df.squaredNorm() / denom, 1e-3, 1e3);
        }
    }
    return VmfParams{f};
}

}  // namespace steinso
