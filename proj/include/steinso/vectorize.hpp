#pragma once

#include "steinso/rotation.hpp"

namespace steinso {

// Column-stacking vectorization.
Vector vec(const Matrix& a);

// Inverse of vec for square matrices; length must be a perfect square.
Matrix unvec(const Vector& v);

// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

// N^2 x N^2 permutation with S vec(F) = vec(F^T) (the commutation matrix).
Matrix perfect_shuffle(int n);

// Column index map of perfect_shuffle: (M * S).col(b) = M.col(map[b]).
std::vector<int> perfect_shuffle_cols(int n);

}  // namespace steinso
