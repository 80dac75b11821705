#pragma once

#include <string>
#include <vector>

#include "steinso/rotation.hpp"

namespace steinso {

// Rotation file format: one sample per line, N^2 whitespace-separated
// row-major floats. '#'-prefixed lines and blank lines are skipped. Inputs
// within 1e-6 of orthogonality are renormalized; anything worse is an error.
std::vector<Rotation> load_rotations(const std::string& path);

void save_rotations(const std::string& path, const std::vector<Rotation>& samples,
                    const std::vector<std::string>& meta_lines = {});

}  // namespace steinso
