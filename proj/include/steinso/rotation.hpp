#pragma once

#include <Eigen/Dense>
#include <vector>

#include "steinso/errors.hpp"

namespace steinso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kOrthoTol = 1e-9;  // ||R^T R - I||_F and |det - 1|
inline constexpr double kSkewTol = 1e-12;  // ||S + S^T||_F

/// Element of SO(N): orthogonal with unit determinant, validated on construction.
class Rotation {
public:
    explicit Rotation(Matrix m);

    static Rotation identity(int n);

    // Skips validation. For internal paths where orthogonality is guaranteed
    // by construction (QR output, exp of skew, products of valid rotations).
    static Rotation unchecked(Matrix m);

    const Matrix& m() const { return mat_; }
    int n() const { return static_cast<int>(mat_.rows()); }

private:
    Rotation() = default;
    Matrix mat_;
};

/// Skew-symmetric matrix, ||S + S^T||_F <= 1e-12 enforced.
class SkewMatrix {
public:
    explicit SkewMatrix(Matrix m);
    const Matrix& m() const { return mat_; }
    int n() const { return static_cast<int>(mat_.rows()); }

private:
    Matrix mat_;
};

/// Orthonormal basis of skew matrices under the Frobenius inner product.
struct Basis {
    std::vector<SkewMatrix> elems;
    int n = 0;
    int dim() const { return static_cast<int>(elems.size()); }
};

// (A - A^T)/2. Throws DimensionError for non-square input.
SkewMatrix skew_part(const Matrix& a);

// The d = n(n-1)/2 matrices with +sqrt(2)/2 at (i,j) and -sqrt(2)/2 at (j,i),
// in lexicographic (i,j) order, i < j.
Basis standard_basis(int n);

// New basis with elems'[l] = sum_k q(l,k) elems[k]; q must be d x d.
Basis recombine_basis(const Basis& basis, const Matrix& q);

// Nearest rotation in Frobenius norm (polar projection, det corrected to +1).
Matrix renormalize(const Matrix& a);

}  // namespace steinso
