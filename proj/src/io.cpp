#include "steinso/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace steinso {

std::vector<Rotation> load_rotations(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw Error("load_rotations: cannot open " + path);
    }
    std::vector<Rotation> out;
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream is(line);
        std::vector<double> vals;
        double v = 0.0;
        while (is >> v) {
            vals.push_back(v);
        }
        if (vals.empty()) {
            continue;
        }
        const auto dim = static_cast<int>(std::llround(std::sqrt(
            static_cast<double>(vals.size()))));
        if (dim * dim != static_cast<int>(vals.size()) || dim < 2) {
            throw ValidationError("load_rotations: line " + std::to_string(lineno) +
                                  " does not hold N^2 values with N >= 2");
        }
        Matrix m(dim, dim);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                m(i, j) = vals[static_cast<std::size_t>(i) * dim + j];
            }
        }
        const double ortho = (m.transpose() * m - Matrix::Identity(dim, dim)).norm();
        const double det = m.determinant();
        if (ortho > 1e-6 || std::abs(det - 1.0) > 1e-6) {
            throw ValidationError("load_rotations: line " + std::to_string(lineno) +
                                  " is not a rotation within tolerance 1e-6");
        }
        out.emplace_back(renormalize(m));
    }
    if (out.empty()) {
        throw EmptyInputError("load_rotations: no samples in " + path);
    }
    return out;
}

void save_rotations(const std::string& path, const std::vector<Rotation>& samples,
                    const std::vector<std::string>& meta_lines) {
    std::ofstream file(path);
    if (!file) {
        throw Error("save_rotations: cannot open " + path);
    }
    for (const std::string& line : meta_lines) {
        file << "# " << line << "\n";
    }
    char buf[40];
    for (const Rotation& r : samples) {
        const int dim = r.n();
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                std::snprintf(buf, sizeof(buf), "%.17g", r.m()(i, j));
                file << (i == 0 && j == 0 ? "" : " ") << buf;
            }
        }
        file << "\n";
    }
}

}  // namespace steinso
