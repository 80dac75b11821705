#include "steinso/kernels.hpp"

#include <cmath>

#include "steinso/lie.hpp"
#include "steinso/parallel.hpp"

namespace steinso {

namespace {

void check_cfg(const KernelConfig& cfg) {
    if (!(cfg.tau > 0.0) || !std::isfinite(cfg.tau)) {
        throw ValidationError("KernelConfig: tau must be positive and finite");
    }
}

void check_same_dim(const Rotation& x, const Rotation& y) {
    if (x.n() != y.n()) {
        throw DimensionError("stein kernel: operands have different dimensions");
    }
}

using Map3 = Eigen::Map<const Eigen::Matrix3d>;

template <class Mat>
double kp_vmf_core(const Mat& x, const Mat& y, const Mat& f, double tau, int n) {
    const Mat g = x.transpose() * y;
    const double t = g.trace();
    const double e = std::exp(tau * t);
    const Mat ag = 0.5 * (g - g.transpose());
    const Mat xf = x.transpose() * f;
    const Mat yf = y.transpose() * f;
    const Mat sx = 0.5 * (xf - xf.transpose()) + tau * ag;
    const Mat sy = 0.5 * (yf - yf.transpose()) - tau * ag;
    const double dot = (sx.array() * sy.array()).sum();
    return dot * e + 0.5 * tau * (n - 1) * t * e;
}

}  // namespace

double base_kernel(const Rotation& x, const Rotation& y, const KernelConfig& cfg) {
    check_cfg(cfg);
    check_same_dim(x, y);
    return std::exp(cfg.tau * (x.m().transpose() * y.m()).trace());
}

double c_term(const Rotation& x, const Rotation& y, const KernelConfig& cfg) {
    check_cfg(cfg);
    check_same_dim(x, y);
    const double t = (x.m().transpose() * y.m()).trace();
    return 0.5 * cfg.tau * (x.n() - 1) * t * std::exp(cfg.tau * t);
}

double kp_vmf(const Rotation& x, const Rotation& y, const VmfParams& p,
              const KernelConfig& cfg) {
    check_cfg(cfg);
    check_same_dim(x, y);
    const int n = x.n();
    if (p.f.rows() != n || p.f.cols() != n) {
        throw DimensionError("kp_vmf: F has wrong dimensions");
    }
    if (n == 3) {
        return kp_vmf_core<Eigen::Matrix3d>(Map3(x.m().data()), Map3(y.m().data()),
                                            Map3(p.f.data()), cfg.tau, n);
    }
    return kp_vmf_core<Matrix>(x.m(), y.m(), p.f, cfg.tau, n);
}

double kp_rn(const Rotation& x, const Rotation& y, const RnParams& p,
             const KernelConfig& cfg) {
    check_cfg(cfg);
    check_same_dim(x, y);
    if (p.mu.n() != x.n()) {
        throw DimensionError("kp_rn: mu has wrong dimensions");
    }
    if (!(p.varsigma > 0.0) || !std::isfinite(p.varsigma)) {
        throw ValidationError("kp_rn: varsigma must be positive and finite");
    }
    const int n = x.n();
    const double tau = cfg.tau;
    const Matrix g = x.m().transpose() * y.m();
    const double t = g.trace();
    const double e = std::exp(tau * t);
    const Matrix ag = 0.5 * (g - g.transpose());
    const Matrix lx = so_log(Rotation::unchecked(x.m().transpose() * p.mu.m())).m();
    const Matrix ly = so_log(Rotation::unchecked(y.m().transpose() * p.mu.m())).m();
    const Matrix sx = p.varsigma * lx + tau * ag;
    const Matrix sy = p.varsigma * ly - tau * ag;
    const double dot = (sx.array() * sy.array()).sum();
    return dot * e + 0.5 * tau * (n - 1) * t * e;
}

double kp_generic(const Rotation& x, const Rotation& y, const ScoreFn& score,
                  const KernelConfig& cfg) {
    check_cfg(cfg);
    check_same_dim(x, y);
    const int n = x.n();
    const double tau = cfg.tau;
    const Matrix gx = score(x);
    const Matrix gy = score(y);
    if (gx.rows() != n || gx.cols() != n || gy.rows() != n || gy.cols() != n) {
        throw DimensionError("kp_generic: score output has wrong dimensions");
    }
    const Matrix tx = x.m().transpose() * gx;
    const Matrix ty = y.m().transpose() * gy;
    if ((tx + tx.transpose()).norm() > 1e-9 || (ty + ty.transpose()).norm() > 1e-9) {
        throw TangencyError("kp_generic: score output is not tangent at the query point");
    }
    const Matrix g = x.m().transpose() * y.m();
    const double t = g.trace();
    const double e = std::exp(tau * t);
    const Matrix ag = 0.5 * (g - g.transpose());
    const Matrix sx = 0.5 * (tx - tx.transpose()) + tau * ag;
    const Matrix sy = 0.5 * (ty - ty.transpose()) - tau * ag;
    const double dot = (sx.array() * sy.array()).sum();
    return dot * e + 0.5 * tau * (n - 1) * t * e;
}

Matrix vmf_score(const Rotation& x, const VmfParams& p) {
    if (p.f.rows() != x.n() || p.f.cols() != x.n()) {
        throw DimensionError("vmf_score: F has wrong dimensions");
    }
    return x.m() * skew_part(x.m().transpose() * p.f).m();
}

Matrix rn_score(const Rotation& x, const RnParams& p) {
    if (p.mu.n() != x.n()) {
        throw DimensionError("rn_score: mu has wrong dimensions");
    }
    return p.varsigma * x.m() *
           so_log(Rotation::unchecked(x.m().transpose() * p.mu.m())).m();
}

SteinKernelFn make_vmf_kernel(VmfParams p, KernelConfig cfg) {
    check_cfg(cfg);
    return [p = std::move(p), cfg](const Rotation& x, const Rotation& y) {
        return kp_vmf(x, y, p, cfg);
    };
}

SteinKernelFn make_rn_kernel(RnParams p, KernelConfig cfg) {
    check_cfg(cfg);
    return [p = std::move(p), cfg](const Rotation& x, const Rotation& y) {
        return kp_rn(x, y, p, cfg);
    };
}

Matrix gram_matrix(const std::vector<Rotation>& samples, const SteinKernelFn& k) {
    const auto n = static_cast<Eigen::Index>(samples.size());
    if (n == 0) {
        throw EmptyInputError("gram_matrix: empty sample set");
    }
    Matrix g(n, n);
    const double inv_n = 1.0 / static_cast<double>(n);
    parallel_for(static_cast<int>(n), [&](int i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = k(samples[i], samples[j]) * inv_n;
            g(i, j) = v;
            g(j, i) = v;
        }
    });
    return g;
}

namespace ref {

Matrix gram_matrix(const std::vector<Rotation>& samples, const SteinKernelFn& k) {
    const auto n = static_cast<Eigen::Index>(samples.size());
    if (n == 0) {
        throw EmptyInputError("gram_matrix: empty sample set");
    }
    Matrix g(n, n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = k(samples[i], samples[j]) * inv_n;
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

}  // namespace ref

}  // namespace steinso
