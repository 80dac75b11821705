#pragma once

#include <vector>

#include "steinso/rng.hpp"
#include "steinso/rotation.hpp"

namespace steinso {

// One Haar-distributed rotation: orthogonalize a Gaussian matrix against a
// positive triangular diagonal, then flip one column if the determinant is -1.
Rotation haar_one(int n, RngStream& rng);

std::vector<Rotation> haar_sample(int n, int count, RngStream& rng);

// Convenience overload with a fresh stream seeded from `seed`.
std::vector<Rotation> haar_sample(int n, int count, std::uint64_t seed);

}  // namespace steinso
