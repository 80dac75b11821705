#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "steinso/haar.hpp"
#include "steinso/kernels.hpp"
#include "steinso/lie.hpp"
#include "steinso/oracle.hpp"

using namespace steinso;

namespace {

Matrix random_matrix(int n, RngStream& rng) {
    Matrix m(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            m(i, j) = rng.normal();
        }
    }
    return m;
}

Matrix rot_z(double theta) {
    Matrix r = Matrix::Identity(3, 3);
    r(0, 0) = std::cos(theta);
    r(0, 1) = -std::sin(theta);
    r(1, 0) = std::sin(theta);
    r(1, 1) = std::cos(theta);
    return r;
}

LogDensityFn vmf_log_density(const Matrix& f) {
    return [f](const Rotation& r) { return (f.array() * r.m().array()).sum(); };
}

LogDensityFn rn_log_density(const RnParams& p) {
    return [p](const Rotation& r) {
        const double d2 = so_log(Rotation::unchecked(r.m().transpose() * p.mu.m()))
                              .m()
                              .squaredNorm();
        return -0.5 * p.varsigma * d2;
    };
}

}  // namespace

TEST_CASE("base_kernel values and symmetry") {
    const KernelConfig cfg{1.0};
    RngStream rng(3);
    const Rotation x = haar_one(3, rng);
    CHECK(base_kernel(x, x, cfg) == doctest::Approx(std::exp(3.0)).epsilon(1e-12));

    const Rotation y = haar_one(3, rng);
    CHECK(base_kernel(x, y, cfg) == doctest::Approx(base_kernel(y, x, cfg)));

    CHECK(base_kernel(Rotation::identity(3), Rotation{rot_z(M_PI_2)}, cfg) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(base_kernel(Rotation::identity(3), Rotation::identity(4), cfg),
                    DimensionError);
    CHECK_THROWS_AS(base_kernel(x, y, KernelConfig{0.0}), ValidationError);
}

TEST_CASE("c_term values") {
    const KernelConfig cfg{1.0};
    const Rotation i3 = Rotation::identity(3);
    CHECK(c_term(i3, i3, cfg) == doctest::Approx(3.0 * std::exp(3.0)).epsilon(1e-12));

    RngStream rng(4);
    const Rotation x = haar_one(3, rng);
    const Rotation y = haar_one(3, rng);
    CHECK(c_term(x, y, cfg) == doctest::Approx(c_term(y, x, cfg)));

    // N = 2 with tr(X^T Y) = 0
    Matrix r2(2, 2);
    r2 << 0, -1, 1, 0;
    CHECK(c_term(Rotation::identity(2), Rotation{r2}, KernelConfig{0.7}) ==
          doctest::Approx(0.0));
}

TEST_CASE("kp_vmf closed-form special cases") {
    const KernelConfig cfg{1.0};
    RngStream rng(6);
    const Rotation x = haar_one(3, rng);
    const Matrix f = random_matrix(3, rng);

    const double diag = kp_vmf(x, x, VmfParams{f}, cfg);
    const double askew2 = skew_part(x.m().transpose() * f).m().squaredNorm();
    CHECK(diag ==
          doctest::Approx((3.0 + askew2) * std::exp(3.0)).epsilon(1e-12));

    // F = 0 collapses to the zero-score form
    const Rotation y = haar_one(3, rng);
    const Matrix g = x.m().transpose() * y.m();
    const Matrix ag = skew_part(g).m();
    const double t = g.trace();
    const double expected =
        c_term(x, y, cfg) +
        (ag.transpose() * (-ag)).trace() * std::exp(t);  // A(Y^T X) = -A(X^T Y)
    CHECK(kp_vmf(x, y, VmfParams{Matrix::Zero(3, 3)}, cfg) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("kp_vmf matches the finite-difference oracle") {
    const KernelConfig cfg{1.0};
    RngStream rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const Rotation x = haar_one(3, rng);
        const Rotation y = haar_one(3, rng);
        const Matrix f = random_matrix(3, rng);
        const double closed = kp_vmf(x, y, VmfParams{f}, cfg);
        const double oracle = stein_oracle(x, y, vmf_log_density(f), cfg);
        CHECK(std::abs(oracle - closed) <= 1e-6 * std::abs(closed));
    }
}

TEST_CASE("kp_rn special cases, symmetry, oracle agreement") {
    const KernelConfig cfg{1.0};
    RngStream rng(43);

    const Rotation mu = haar_one(3, rng);
    const RnParams p{mu, 2.5};
    CHECK(kp_rn(mu, mu, p, cfg) ==
          doctest::Approx(0.5 * 1.0 * 2.0 * 3.0 * std::exp(3.0)).epsilon(1e-12));

    for (int trial = 0; trial < 20; ++trial) {
        const Rotation x = haar_one(3, rng);
        const Rotation y = haar_one(3, rng);
        CHECK(kp_rn(x, y, p, cfg) == doctest::Approx(kp_rn(y, x, p, cfg)));
    }

    for (int trial = 0; trial < 20; ++trial) {
        const Rotation x = haar_one(3, rng);
        const Rotation y = haar_one(3, rng);
        const Rotation m = haar_one(3, rng);
        const RnParams params{m, 0.5 + 3.0 * rng.uniform()};
        const double closed = kp_rn(x, y, params, cfg);
        const double oracle = stein_oracle(x, y, rn_log_density(params), cfg);
        CHECK(std::abs(oracle - closed) <= 1e-6 * std::abs(closed));
    }
}

TEST_CASE("kp_generic reproduces both families") {
    const KernelConfig cfg{1.0};
    RngStream rng(44);

    const Rotation x0 = haar_one(3, rng);
    const Rotation y0 = haar_one(3, rng);
    const ScoreFn zero = [](const Rotation& r) {
        return Matrix::Zero(r.n(), r.n()).eval();
    };
    CHECK(kp_generic(x0, y0, zero, cfg) ==
          doctest::Approx(kp_vmf(x0, y0, VmfParams{Matrix::Zero(3, 3)}, cfg)));

    for (int trial = 0; trial < 20; ++trial) {
        const Rotation x = haar_one(3, rng);
        const Rotation y = haar_one(3, rng);
        const Matrix f = random_matrix(3, rng);
        const VmfParams vp{f};
        const ScoreFn vmf_sc = [vp](const Rotation& r) { return vmf_score(r, vp); };
        const double a = kp_generic(x, y, vmf_sc, cfg);
        const double b = kp_vmf(x, y, vp, cfg);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));

        const RnParams rp{haar_one(3, rng), 1.7};
        const ScoreFn rn_sc = [rp](const Rotation& r) { return rn_score(r, rp); };
        const double c = kp_generic(x, y, rn_sc, cfg);
        const double d = kp_rn(x, y, rp, cfg);
        CHECK(std::abs(c - d) <= 1e-12 * std::max(1.0, std::abs(d)));
    }

    const ScoreFn broken = [](const Rotation& r) {
        return Matrix::Identity(r.n(), r.n()).eval();
    };
    CHECK_THROWS_AS(kp_generic(x0, y0, broken, cfg), TangencyError);
}

TEST_CASE("stein_oracle with constant density equals the zero-score kernel") {
    const KernelConfig cfg{1.0};
    RngStream rng(45);
    const Rotation x = haar_one(3, rng);
    const Rotation y = haar_one(3, rng);
    const LogDensityFn constant = [](const Rotation&) { return 1.234; };
    const double oracle = stein_oracle(x, y, constant, cfg);
    const double closed = kp_vmf(x, y, VmfParams{Matrix::Zero(3, 3)}, cfg);
    CHECK(std::abs(oracle - closed) <= 1e-6 * std::abs(closed));
}

TEST_CASE("stein_oracle is invariant under orthonormal basis rotation") {
    const KernelConfig cfg{1.0};
    RngStream rng(46);
    const Basis basis = standard_basis(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Rotation x = haar_one(3, rng);
        const Rotation y = haar_one(3, rng);
        const Matrix f = random_matrix(3, rng);
        const Matrix q = haar_one(3, rng).m();  // orthogonal 3x3 = d x d here
        const Basis rotated = recombine_basis(basis, q);
        const double a = stein_oracle(x, y, vmf_log_density(f), cfg, basis);
        const double b = stein_oracle(x, y, vmf_log_density(f), cfg, rotated);
        CHECK(std::abs(a - b) <= 1e-8);
    }
}

TEST_CASE("stein_oracle rejects out-of-range steps") {
    RngStream rng(47);
    const Rotation x = haar_one(3, rng);
    const Rotation y = haar_one(3, rng);
    CHECK_THROWS_AS(
        stein_oracle(x, y, vmf_log_density(Matrix::Zero(3, 3)), KernelConfig{1.0}, 1e-2),
        ValidationError);
}

TEST_CASE("kp_vmf rotation equivariance") {
    const KernelConfig cfg{1.0};
    RngStream rng(48);
    for (int trial = 0; trial < 10; ++trial) {
        const Rotation x = haar_one(3, rng);
        const Rotation y = haar_one(3, rng);
        const Rotation r = haar_one(3, rng);
        const Matrix f = random_matrix(3, rng);
        const double base = kp_vmf(x, y, VmfParams{f}, cfg);
        const Rotation rx = Rotation::unchecked(r.m() * x.m());
        const Rotation ry = Rotation::unchecked(r.m() * y.m());
        const double moved = kp_vmf(rx, ry, VmfParams{r.m() * f}, cfg);
        CHECK(std::abs(base - moved) <= 1e-12 * std::max(1.0, std::abs(base)));
    }
}

TEST_CASE("gram_matrix shape, symmetry, PSD, parallel = serial") {
    const KernelConfig cfg{1.0};
    RngStream rng(49);
    const Matrix f = random_matrix(3, rng);
    const SteinKernelFn k = make_vmf_kernel(VmfParams{f}, cfg);

    const std::vector<Rotation> one = {haar_one(3, rng)};
    const Matrix g1 = gram_matrix(one, k);
    REQUIRE(g1.rows() == 1);
    CHECK(g1(0, 0) == doctest::Approx(k(one[0], one[0])).epsilon(1e-12));

    const auto samples = haar_sample(3, 50, rng);
    const Matrix g = gram_matrix(samples, k);
    CHECK((g - g.transpose()).norm() <= 1e-12);

    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    const double max_ev = es.eigenvalues().maxCoeff();
    CHECK(es.eigenvalues().minCoeff() >= -1e-8 * max_ev);

    const Matrix gs = ref::gram_matrix(samples, k);
    CHECK((g - gs).norm() == 0.0);

    CHECK_THROWS_AS(gram_matrix({}, k), EmptyInputError);
}
