#include "steinso/rotation.hpp"

#include <cmath>
#include <utility>

namespace steinso {

Rotation::Rotation(Matrix m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("Rotation: matrix must be square");
    }
    const int n = static_cast<int>(m.rows());
    if (n < 2) {
        throw DimensionError("Rotation: dimension must be >= 2");
    }
    const double ortho = (m.transpose() * m - Matrix::Identity(n, n)).norm();
    if (ortho > kOrthoTol) {
        throw ValidationError("Rotation: ||R^T R - I||_F = " + std::to_string(ortho) +
                              " exceeds tolerance 1e-9");
    }
    const double det = m.determinant();
    if (std::abs(det - 1.0) > kOrthoTol) {
        throw ValidationError("Rotation: det = " + std::to_string(det) +
                              " not within 1e-9 of 1");
    }
    mat_ = std::move(m);
}

Rotation Rotation::identity(int n) {
    if (n < 2) {
        throw DimensionError("Rotation: dimension must be >= 2");
    }
    Rotation r;
    r.mat_ = Matrix::Identity(n, n);
    return r;
}

Rotation Rotation::unchecked(Matrix m) {
    Rotation r;
    r.mat_ = std::move(m);
    return r;
}

SkewMatrix::SkewMatrix(Matrix m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("SkewMatrix: matrix must be square");
    }
    const double sym = (m + m.transpose()).norm();
    if (sym > kSkewTol) {
        throw ValidationError("SkewMatrix: ||S + S^T||_F = " + std::to_string(sym) +
                              " exceeds tolerance 1e-12");
    }
    mat_ = std::move(m);
}

SkewMatrix skew_part(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("skew_part: matrix must be square");
    }
    return SkewMatrix(0.5 * (a - a.transpose()));
}

Basis standard_basis(int n) {
    if (n < 2) {
        throw DimensionError("standard_basis: dimension must be >= 2");
    }
    const double s = std::sqrt(2.0) / 2.0;
    Basis basis;
    basis.n = n;
    basis.elems.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Matrix e = Matrix::Zero(n, n);
            e(i, j) = s;
            e(j, i) = -s;
            basis.elems.emplace_back(std::move(e));
        }
    }
    return basis;
}

Basis recombine_basis(const Basis& basis, const Matrix& q) {
    const int d = basis.dim();
    if (q.rows() != d || q.cols() != d) {
        throw DimensionError("recombine_basis: q must be d x d");
    }
    Basis out;
    out.n = basis.n;
    out.elems.reserve(d);
    for (int l = 0; l < d; ++l) {
        Matrix e = Matrix::Zero(basis.n, basis.n);
        for (int k = 0; k < d; ++k) {
            e += q(l, k) * basis.elems[k].m();
        }
        out.elems.emplace_back(std::move(e));
    }
    return out;
}

Matrix renormalize(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("renormalize: matrix must be square");
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix u = svd.matrixU();
    const Matrix v = svd.matrixV();
    if ((u * v.transpose()).determinant() < 0.0) {
        u.col(u.cols() - 1) *= -1.0;  // flip the smallest singular direction
    }
    return u * v.transpose();
}

}  // namespace steinso
