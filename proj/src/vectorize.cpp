#include "steinso/vectorize.hpp"

#include <cmath>

namespace steinso {

Vector vec(const Matrix& a) {
    return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v) {
    const auto len = v.size();
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(len))));
    if (n * n != len) {
        throw DimensionError("unvec: length is not a perfect square");
    }
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix perfect_shuffle(int n) {
    if (n < 1) {
        throw DimensionError("perfect_shuffle: dimension must be >= 1");
    }
    Matrix s = Matrix::Zero(n * n, n * n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            s(k * n + l, l * n + k) = 1.0;
        }
    }
    return s;
}

std::vector<int> perfect_shuffle_cols(int n) {
    std::vector<int> map(static_cast<std::size_t>(n) * n);
    for (int b = 0; b < n * n; ++b) {
        map[b] = (b % n) * n + b / n;
    }
    return map;
}

}  // namespace steinso
