#include "steinso/lie.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace steinso {

namespace {

constexpr double kAntipodalEps = 1e-6;  // refuse angles above pi - 1e-6

Matrix exp_n3(const Matrix& s) {
    // Rodrigues on the axis-angle vector of S.
    const double wx = s(2, 1), wy = s(0, 2), wz = s(1, 0);
    const double theta = std::sqrt(wx * wx + wy * wy + wz * wz);
    double a = 0.0, b = 0.0;
    if (theta < 1e-8) {
        const double t2 = theta * theta;
        a = 1.0 - t2 / 6.0;
        b = 0.5 - t2 / 24.0;
    } else {
        a = std::sin(theta) / theta;
        b = (1.0 - std::cos(theta)) / (theta * theta);
    }
    return Matrix::Identity(3, 3) + a * s + b * (s * s);
}

Matrix log_n3(const Matrix& r) {
    const double wx = 0.5 * (r(2, 1) - r(1, 2));
    const double wy = 0.5 * (r(0, 2) - r(2, 0));
    const double wz = 0.5 * (r(1, 0) - r(0, 1));
    const double sin_theta = std::sqrt(wx * wx + wy * wy + wz * wz);
    const double cos_theta = 0.5 * (r.trace() - 1.0);
    const double theta = std::atan2(sin_theta, cos_theta);
    if (theta >= M_PI - kAntipodalEps) {
        throw AntipodalError("so_log: rotation angle within 1e-6 of pi");
    }
    if (theta < 1e-7) {
        return (1.0 + theta * theta / 6.0) * 0.5 * (r - r.transpose());
    }
    if (theta <= 3.0) {
        return (theta / sin_theta) * 0.5 * (r - r.transpose());
    }
    // Near pi the skew part loses the axis magnitude; recover the axis from
    // the symmetric part instead.
    Matrix uut = (r + r.transpose() - 2.0 * cos_theta * Matrix::Identity(3, 3)) /
                 (2.0 * (1.0 - cos_theta));
    int k = 0;
    uut.diagonal().maxCoeff(&k);
    Eigen::Vector3d u = uut.col(k) / std::sqrt(uut(k, k));
    const Eigen::Vector3d w(wx, wy, wz);
    if (u.dot(w) < 0.0) {
        u = -u;
    }
    Matrix s = Matrix::Zero(3, 3);
    s(2, 1) = u(0);
    s(1, 2) = -u(0);
    s(0, 2) = u(1);
    s(2, 0) = -u(1);
    s(1, 0) = u(2);
    s(0, 1) = -u(2);
    return theta * s;
}

}  // namespace

Rotation so_exp(const SkewMatrix& s) {
    const int n = s.n();
    if (n == 2) {
        const double a = s.m()(1, 0);
        Matrix r(2, 2);
        r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        return Rotation::unchecked(std::move(r));
    }
    if (n == 3) {
        return Rotation::unchecked(exp_n3(s.m()));
    }
    return Rotation::unchecked(s.m().exp());
}

SkewMatrix so_log(const Rotation& r) {
    const int n = r.n();
    if (n == 2) {
        const double theta = std::atan2(r.m()(1, 0), r.m()(0, 0));
        if (std::abs(theta) >= M_PI - kAntipodalEps) {
            throw AntipodalError("so_log: rotation angle within 1e-6 of pi");
        }
        Matrix s(2, 2);
        s << 0.0, -theta, theta, 0.0;
        return SkewMatrix(std::move(s));
    }
    if (n == 3) {
        return skew_part(log_n3(r.m()));
    }
    // sigma_min(I + R)^2 = lambda_min(2I + R + R^T); 2 cos(theta_max / 2) below
    // 1e-6 marks the antipodal set.
    const Matrix sym = 2.0 * Matrix::Identity(n, n) + r.m() + r.m().transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= kAntipodalEps * kAntipodalEps) {
        throw AntipodalError("so_log: rotation angle within 1e-6 of pi");
    }
    return skew_part(r.m().log());
}

double geodesic_distance(const Rotation& x, const Rotation& y) {
    return so_log(Rotation::unchecked(x.m().transpose() * y.m())).m().norm();
}

}  // namespace steinso
