#include "steinso/samplers.hpp"

#include <cmath>
#include <cstdint>

#include "steinso/haar.hpp"
#include "steinso/lie.hpp"

namespace steinso {

namespace {

// Tracks rejection progress and aborts once the estimated acceptance rate
// drops below 1e-6.
class EnvelopeGuard {
public:
    explicit EnvelopeGuard(const char* what) : what_(what) {}

    void proposed() {
        ++proposals_;
        if (proposals_ >= 2'000'000 &&
            static_cast<double>(accepted_ + 1) < 1e-6 * static_cast<double>(proposals_)) {
            throw EnvelopeTooLooseError(what_);
        }
    }

    void accepted() { ++accepted_; }

private:
    const char* what_;
    std::uint64_t proposals_ = 0;
    std::uint64_t accepted_ = 0;
};

}  // namespace

std::vector<Rotation> sample_vmf(const VmfParams& p, int count, RngStream& rng) {
    if (count < 0) {
        throw ValidationError("sample_vmf: count must be >= 0");
    }
    const auto dim = static_cast<int>(p.f.rows());
    if (p.f.cols() != dim || dim < 2) {
        throw DimensionError("sample_vmf: F must be square with dimension >= 2");
    }
    if (!p.f.allFinite()) {
        throw ValidationError("sample_vmf: F must be finite");
    }
    // tr(F^T X) <= sum of singular values of F over all orthogonal X.
    Eigen::JacobiSVD<Matrix> svd(p.f);
    const double sigma_star = svd.singularValues().sum();

    std::vector<Rotation> out;
    out.reserve(count);
    EnvelopeGuard guard(
        "sample_vmf: acceptance rate below 1e-6; the concentration ||F|| is too "
        "large for the Haar-proposal envelope at desk scale, reduce it");
    while (static_cast<int>(out.size()) < count) {
        guard.proposed();
        Rotation x = haar_one(dim, rng);
        const double t = (p.f.array() * x.m().array()).sum();
        if (rng.uniform() < std::exp(t - sigma_star)) {
            guard.accepted();
            out.push_back(std::move(x));
        }
    }
    return out;
}

std::vector<Rotation> sample_cayley(const CayleyParams& p, int count,
                                    RngStream& rng) {
    if (count < 0) {
        throw ValidationError("sample_cayley: count must be >= 0");
    }
    if (p.kappa < 0.0 || !std::isfinite(p.kappa)) {
        throw ValidationError("sample_cayley: kappa must be nonnegative and finite");
    }
    const int dim = p.m.n();
    const double denom = std::pow(2.0, dim);  // det(I + R) <= 2^N on SO(N)

    std::vector<Rotation> out;
    out.reserve(count);
    EnvelopeGuard guard(
        "sample_cayley: acceptance rate below 1e-6; kappa is too large for the "
        "Haar-proposal envelope at desk scale, reduce it");
    while (static_cast<int>(out.size()) < count) {
        guard.proposed();
        Rotation x = haar_one(dim, rng);
        const double det =
            (Matrix::Identity(dim, dim) + x.m() * p.m.m().transpose()).determinant();
        const double ratio = std::max(det, 0.0) / denom;
        if (rng.uniform() < std::pow(ratio, p.kappa)) {
            guard.accepted();
            out.push_back(std::move(x));
        }
    }
    return out;
}

std::vector<Rotation> sample_rn(const RnParams& p, int count, RngStream& rng) {
    if (count < 0) {
        throw ValidationError("sample_rn: count must be >= 0");
    }
    if (!(p.varsigma > 0.0) || !std::isfinite(p.varsigma)) {
        throw ValidationError("sample_rn: varsigma must be positive and finite");
    }
    const int dim = p.mu.n();

    std::vector<Rotation> out;
    out.reserve(count);
    EnvelopeGuard guard(
        "sample_rn: acceptance rate below 1e-6; varsigma is too large for the "
        "Haar-proposal envelope at desk scale, reduce it");
    while (static_cast<int>(out.size()) < count) {
        guard.proposed();
        Rotation x = haar_one(dim, rng);
        double dist2 = 0.0;
        try {
            dist2 = so_log(Rotation::unchecked(p.mu.m().transpose() * x.m()))
                        .m()
                        .squaredNorm();
        } catch (const AntipodalError&) {
            continue;  // measure-zero set; resample
        }
        if (rng.uniform() < std::exp(-0.5 * p.varsigma * dist2)) {
            guard.accepted();
            out.push_back(std::move(x));
        }
    }
    return out;
}

}  // namespace steinso
