#pragma once

#include "steinso/rotation.hpp"

namespace steinso {

// Matrix exponential of a skew matrix; closed forms for N = 2, 3.
Rotation so_exp(const SkewMatrix& s);

// Principal matrix logarithm. Throws AntipodalError when the rotation angle
// is within 1e-6 of pi (the log is not unique there).
SkewMatrix so_log(const Rotation& r);

// ||Log(X^T Y)||_F, the bi-invariant geodesic distance.
double geodesic_distance(const Rotation& x, const Rotation& y);

}  // namespace steinso
