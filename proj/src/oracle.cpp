#include "steinso/oracle.hpp"

#include <cmath>

namespace steinso {

namespace {

using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Scaling-and-squaring Taylor exponential in long double.
LMat exp_ld(const LMat& s) {
    const long double norm = s.norm();
    int squarings = 0;
    long double scale = 1.0L;
    while (norm * scale > 0.25L) {
        scale *= 0.5L;
        ++squarings;
    }
    const LMat t = s * scale;
    LMat term = LMat::Identity(s.rows(), s.cols());
    LMat acc = term;
    for (int k = 1; k <= 32; ++k) {
        term = (term * t) / static_cast<long double>(k);
        acc += term;
        if (term.norm() < 1e-24L * acc.norm()) {
            break;
        }
    }
    for (int k = 0; k < squarings; ++k) {
        acc = acc * acc;
    }
    return acc;
}

long double kernel_ld(const LMat& a, const LMat& b, long double tau) {
    return expl(tau * (a.transpose() * b).trace());
}

double log_p_at(const LogDensityFn& log_p, const LMat& point) {
    return log_p(Rotation::unchecked(point.cast<double>()));
}

}  // namespace

double stein_oracle(const Rotation& x, const Rotation& y,
                    const LogDensityFn& log_p_unnorm, const KernelConfig& cfg,
                    double h) {
    return stein_oracle(x, y, log_p_unnorm, cfg, standard_basis(x.n()), h);
}

double stein_oracle(const Rotation& x, const Rotation& y,
                    const LogDensityFn& log_p_unnorm, const KernelConfig& cfg,
                    const Basis& basis, double h) {
    if (x.n() != y.n()) {
        throw DimensionError("stein_oracle: operands have different dimensions");
    }
    if (basis.n != x.n()) {
        throw DimensionError("stein_oracle: basis dimension mismatch");
    }
    if (!(h >= 1e-6 && h <= 1e-3)) {
        throw ValidationError("stein_oracle: h must lie in [1e-6, 1e-3]");
    }
    const auto tau = static_cast<long double>(cfg.tau);
    const LMat xl = x.m().cast<long double>();
    const LMat yl = y.m().cast<long double>();
    const long double k0 = kernel_ld(xl, yl, tau);

    long double total = 0.0L;
    for (const SkewMatrix& elem : basis.elems) {
        const LMat e = elem.m().cast<long double>();
        const long double steps[2] = {static_cast<long double>(h),
                                      static_cast<long double>(h) / 2.0L};
        long double dx[2], dy[2], mixed[2];
        double lx[2], ly[2];
        for (int s = 0; s < 2; ++s) {
            const long double hs = steps[s];
            const LMat p = exp_ld(hs * e);
            const LMat pm = p.transpose();  // exp(-hE) for skew E
            const LMat xp = xl * p, xm = xl * pm;
            const LMat yp = yl * p, ym = yl * pm;
            dx[s] = (kernel_ld(xp, yl, tau) - kernel_ld(xm, yl, tau)) / (2.0L * hs);
            dy[s] = (kernel_ld(xl, yp, tau) - kernel_ld(xl, ym, tau)) / (2.0L * hs);
            mixed[s] = (kernel_ld(xp, yp, tau) - kernel_ld(xp, ym, tau) -
                        kernel_ld(xm, yp, tau) + kernel_ld(xm, ym, tau)) /
                       (4.0L * hs * hs);
            lx[s] = (log_p_at(log_p_unnorm, xp) - log_p_at(log_p_unnorm, xm)) /
                    static_cast<double>(2.0L * hs);
            ly[s] = (log_p_at(log_p_unnorm, yp) - log_p_at(log_p_unnorm, ym)) /
                    static_cast<double>(2.0L * hs);
        }
        // Richardson: central differences have even-power error expansions.
        const long double dxr = (4.0L * dx[1] - dx[0]) / 3.0L;
        const long double dyr = (4.0L * dy[1] - dy[0]) / 3.0L;
        const long double mr = (4.0L * mixed[1] - mixed[0]) / 3.0L;
        const long double lxr = (4.0L * static_cast<long double>(lx[1]) -
                                 static_cast<long double>(lx[0])) / 3.0L;
        const long double lyr = (4.0L * static_cast<long double>(ly[1]) -
                                 static_cast<long double>(ly[0])) / 3.0L;
        total += mr + dxr * lyr + dyr * lxr + k0 * lxr * lyr;
    }
    return static_cast<double>(total);
}

}  // namespace steinso
