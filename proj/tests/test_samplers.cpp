#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "steinso/haar.hpp"
#include "steinso/lie.hpp"
#include "steinso/samplers.hpp"

using namespace steinso;

namespace {

double mean_trace(const std::vector<Rotation>& xs) {
    double acc = 0.0;
    for (const Rotation& x : xs) {
        acc += x.m().trace();
    }
    return acc / static_cast<double>(xs.size());
}

double trace_std(const std::vector<Rotation>& xs) {
    const double mean = mean_trace(xs);
    double acc = 0.0;
    for (const Rotation& x : xs) {
        const double t = x.m().trace() - mean;
        acc += t * t;
    }
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

void check_valid(const std::vector<Rotation>& xs) {
    for (const Rotation& x : xs) {
        const int n = x.n();
        CHECK((x.m().transpose() * x.m() - Matrix::Identity(n, n)).norm() <= 1e-9);
        CHECK(std::abs(x.m().determinant() - 1.0) <= 1e-9);
    }
}

}  // namespace

TEST_CASE("sample_vmf: F = 0 is Haar, concentration at F = 5I") {
    {
        RngStream rng(21);
        const auto xs = sample_vmf(VmfParams{Matrix::Zero(3, 3)}, 10000, rng);
        check_valid(xs);
        const double se = trace_std(xs) / 100.0;
        CHECK(std::abs(mean_trace(xs)) <= 4.0 * se);
    }
    {
        RngStream rng(22);
        const auto xs =
            sample_vmf(VmfParams{5.0 * Matrix::Identity(3, 3)}, 10000, rng);
        check_valid(xs);
        CHECK(mean_trace(xs) > 2.0);
    }
}

TEST_CASE("sample_vmf envelope bound holds") {
    RngStream rng(23);
    for (int probe = 0; probe < 100000; ++probe) {
        Matrix f(3, 3);
        for (int j = 0; j < 3; ++j) {
            for (int i = 0; i < 3; ++i) {
                f(i, j) = 2.0 * rng.normal();
            }
        }
        const Rotation x = haar_one(3, rng);
        Eigen::JacobiSVD<Matrix> svd(f);
        const double sigma_star = svd.singularValues().sum();
        CHECK((f.array() * x.m().array()).sum() <= sigma_star + 1e-9);
    }
}

TEST_CASE("sample_vmf rejects hopeless envelopes") {
    RngStream rng(24);
    CHECK_THROWS_AS(
        sample_vmf(VmfParams{50000.0 * Matrix::Identity(3, 3)}, 10, rng),
        EnvelopeTooLooseError);
}

TEST_CASE("sample_cayley: kappa = 0 is Haar, mode has unit acceptance") {
    RngStream rng(25);
    const CayleyParams uniform{Rotation::identity(3), 0.0};
    const auto xs = sample_cayley(uniform, 10000, rng);
    check_valid(xs);
    CHECK(std::abs(mean_trace(xs)) <= 4.0 * trace_std(xs) / 100.0);

    // density ratio maxes at X = M: det(I + M M^T) = det(2I) = 2^N
    RngStream rng2(26);
    const Rotation m = haar_one(3, rng2);
    const double det = (Matrix::Identity(3, 3) + m.m() * m.m().transpose()).determinant();
    CHECK(det == doctest::Approx(8.0).epsilon(1e-12));

    RngStream rng3(27);
    const auto concentrated = sample_cayley(CayleyParams{m, 8.0}, 2000, rng3);
    double mean_dot = 0.0;
    for (const Rotation& x : concentrated) {
        mean_dot += (x.m().transpose() * m.m()).trace();
    }
    CHECK(mean_dot / 2000.0 > 1.5);  // concentrates near M
}

TEST_CASE("cayley envelope: det(I + R) <= 2^N over Haar draws") {
    for (int n : {3, 4}) {
        RngStream rng(28 + n);
        for (int probe = 0; probe < 100000; ++probe) {
            const Rotation x = haar_one(n, rng);
            const double det = (Matrix::Identity(n, n) + x.m()).determinant();
            CHECK(det <= std::pow(2.0, n) + 1e-9);
            CHECK(det >= -1e-9);
        }
    }
}

TEST_CASE("sample_rn: flat limit, concentration, validity") {
    {
        RngStream rng(31);
        const auto xs = sample_rn(RnParams{Rotation::identity(3), 1e-8}, 5000, rng);
        check_valid(xs);
        CHECK(std::abs(mean_trace(xs)) <= 4.0 * trace_std(xs) / std::sqrt(5000.0));
    }
    {
        const double sigma = 0.3;
        RngStream rng(32);
        const auto xs =
            sample_rn(RnParams{Rotation::identity(3), 1.0 / (sigma * sigma)}, 10000, rng);
        check_valid(xs);
        double mean_dist = 0.0;
        for (const Rotation& x : xs) {
            mean_dist += geodesic_distance(Rotation::identity(3), x);
        }
        CHECK(mean_dist / 10000.0 < 0.6);
    }
}

TEST_CASE("sample_rn rejects hopeless envelopes") {
    RngStream rng(33);
    CHECK_THROWS_AS(sample_rn(RnParams{Rotation::identity(3), 2.5e5}, 1, rng),
                    EnvelopeTooLooseError);
}

TEST_CASE("samplers are deterministic given the seed") {
    const VmfParams p{Matrix::Identity(3, 3)};
    RngStream a(77), b(77);
    const auto xa = sample_vmf(p, 50, a);
    const auto xb = sample_vmf(p, 50, b);
    for (int i = 0; i < 50; ++i) {
        CHECK((xa[i].m() - xb[i].m()).norm() == 0.0);
    }
}
