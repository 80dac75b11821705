#include "steinso/haar.hpp"

namespace steinso {

Rotation haar_one(int n, RngStream& rng) {
    if (n < 2) {
        throw DimensionError("haar_one: dimension must be >= 2");
    }
    Matrix g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            g(i, j) = rng.normal();
        }
    }
    // Gram-Schmidt with one reorthogonalization pass. Normalizing against a
    // positive residual norm fixes the triangular factor's diagonal signs, so
    // the result is Haar on O(N).
    Matrix q(n, n);
    for (int j = 0; j < n; ++j) {
        Vector v = g.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                v -= q.col(i).dot(v) * q.col(i);
            }
        }
        q.col(j) = v / v.norm();
    }
    if (q.determinant() < 0.0) {
        q.col(n - 1) *= -1.0;
    }
    return Rotation::unchecked(std::move(q));
}

std::vector<Rotation> haar_sample(int n, int count, RngStream& rng) {
    if (count < 0) {
        throw ValidationError("haar_sample: count must be >= 0");
    }
    std::vector<Rotation> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        out.push_back(haar_one(n, rng));
    }
    return out;
}

std::vector<Rotation> haar_sample(int n, int count, std::uint64_t seed) {
    RngStream rng(seed);
    return haar_sample(n, count, rng);
}

}  // namespace steinso
