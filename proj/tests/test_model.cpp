#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "rrb/checks.hpp"
#include "rrb/model.hpp"
#include "rrb/rng.hpp"
#include "support.hpp"

using namespace rrb;
using rrbtest::free_cfg;
using rrbtest::std_cfg;

TEST_CASE("hamiltonian values") {
    const SystemConfig cfg = std_cfg();
    CHECK(hamiltonian(cfg, {0, 0, 0}) == 0.0);
    CHECK(hamiltonian(cfg, {1, 0, 0}) == doctest::Approx(1.5).epsilon(1e-15));
    // the completed-square constant at the minimizer
    CHECK(hamiltonian(cfg, {-1.0, -0.5, -1.0 / 3.0}) ==
          doctest::Approx(-11.0 / 12.0).epsilon(1e-14));
    CHECK(hamiltonian_minimum(cfg) == doctest::Approx(-11.0 / 12.0).epsilon(1e-15));
    CHECK((hamiltonian_min_point(cfg) - State{-1.0, -0.5, -1.0 / 3.0}).norm() < 1e-15);
    CHECK_THROWS_AS(hamiltonian(cfg, {std::nan(""), 0, 0}), InvariantViolation);
}

TEST_CASE("both hamiltonian forms agree") {
    CHECK(checks::max_hamiltonian_form_residual(10'000, 1, Exec::Serial) <= 1e-12);
}

TEST_CASE("casimir") {
    CHECK(casimir({0, 0, 0}) == 0.0);
    CHECK(casimir({1, 2, 2}) == 4.5);
    CHECK(casimir({-1, -1, -1}) == casimir({1, 1, 1}));
}

TEST_CASE("gradient m") {
    CHECK(m_vector(free_cfg(), {1, 1, 1}) == Vec3{1, 2, 3});
    CHECK(m_vector(std_cfg(), {1, 1, 1}) == Vec3{2, 3, 4});
    CHECK(m_vector(std_cfg(), {-1.0, -0.5, -1.0 / 3.0}).norm() < 1e-15);
}

TEST_CASE("poisson matrix") {
    const Matrix3 zero = poisson_matrix({0, 0, 0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(zero(i, j) == 0.0);

    const Matrix3 pi = poisson_matrix({1, 2, 3});
    CHECK(pi.role() == Matrix3::Role::Skew);
    CHECK(pi(0, 1) == -3.0);
    CHECK(pi(0, 2) == 2.0);
    CHECK(pi(1, 0) == 3.0);
    CHECK(pi(1, 2) == -1.0);
    CHECK(pi(2, 0) == -2.0);
    CHECK(pi(2, 1) == 1.0);

    RngStream rng(2);
    for (int i = 0; i < 100; ++i) {
        const State x = rng.uniform_vec3(-3, 3);
        CHECK((poisson_matrix(x) * x).norm() == 0.0);  // componentwise exact cancellation
    }
    CHECK(checks::poisson_skew_exact(10'000, 3, Exec::Serial));
    CHECK(checks::max_casimir_annihilation(10'000, 4, Exec::Serial) <= 1e-13);
}

TEST_CASE("matrix role tags are checked at construction") {
    CHECK_THROWS_AS(Matrix3::tagged({{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}}, Matrix3::Role::Skew),
                    InvariantViolation);
    CHECK_THROWS_AS(
        Matrix3::tagged({{{1, 2, 0}, {3, 1, 0}, {0, 0, 1}}}, Matrix3::Role::Symmetric),
        InvariantViolation);
    const Matrix3 ok =
        Matrix3::tagged({{{0, 5, -2}, {-5, 0, 1}, {2, -1, 0}}}, Matrix3::Role::Skew);
    CHECK(ok.role() == Matrix3::Role::Skew);
}

TEST_CASE("metric matrix") {
    // m = (1,2,3) at x = (1,1,1) without controls
    const Matrix3 g = metric_matrix(free_cfg(), {1, 1, 1});
    CHECK(g.role() == Matrix3::Role::Symmetric);
    CHECK(g(0, 0) == -13.0);
    CHECK(g(0, 1) == 2.0);
    CHECK(g(0, 2) == 3.0);
    CHECK(g(1, 1) == -10.0);
    CHECK(g(1, 2) == 6.0);
    CHECK(g(2, 2) == -5.0);

    // gradient vanishes at the minimizer, so the metric does too
    const Matrix3 zero = metric_matrix(std_cfg(), {-1.0, -0.5, -1.0 / 3.0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::fabs(zero(i, j)) < 1e-28);

    CHECK((g * Vec3{1, 2, 3}).norm() == 0.0);  // row sums -13+4+9, 2-20+18, 3+12-15
    CHECK(checks::max_metric_annihilation(10'000, 5, Exec::Serial) <= 1e-12);
}

TEST_CASE("drift vector agrees with the double cross product") {
    CHECK(drift_v(free_cfg(), {1, 1, 1}) == Vec3{-8, -2, 4});
    CHECK(drift_v(std_cfg(), {1, 1, 1}) == Vec3{-11, -2, 7});
    CHECK(drift_v(std_cfg(), {-1.0, -0.5, -1.0 / 3.0}).norm() == 0.0);
    CHECK(checks::max_drift_identity_residual(10'000, 6, Exec::Serial) <= 1e-12);
}

TEST_CASE("vector triple product identity") {
    CHECK(checks::max_triple_product_residual(10'000, 7, Exec::Serial) <= 1e-12);
}

TEST_CASE("generic metric builder") {
    const double grad3[3] = {1, 2, 3};
    const GenericMetric g3 = build_metric_generic(grad3);
    const Matrix3 concrete = metric_matrix(free_cfg(), {1, 1, 1});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(g3.at(i, j) == concrete(i, j));
    CHECK(checks::generic_matches_metric_bitwise(200, 8));

    const double grad2[2] = {0.7, -1.3};
    const GenericMetric g2 = build_metric_generic(grad2);
    CHECK(g2.at(0, 0) == -(-1.3 * -1.3));
    CHECK(g2.at(1, 1) == -(0.7 * 0.7));
    CHECK(g2.at(0, 1) == 0.7 * -1.3);
    const std::vector<double> prod = g2.apply(grad2);
    CHECK(std::fabs(prod[0]) < 1e-15);
    CHECK(std::fabs(prod[1]) < 1e-15);

    const double zeros[4] = {0, 0, 0, 0};
    const GenericMetric gz = build_metric_generic(zeros);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(gz.at(i, j) == 0.0);

    const double one[1] = {1.0};
    CHECK_THROWS_AS(build_metric_generic(one), DimensionOutOfRange);
    const std::vector<double> many(17, 1.0);
    CHECK_THROWS_AS(build_metric_generic(many), DimensionOutOfRange);

    for (int dim = 2; dim <= 6; ++dim)
        CHECK(checks::max_generic_annihilation(dim, 1000, 9, Exec::Serial) <= 1e-12);
}

TEST_CASE("config construction") {
    const SystemConfig cfg = SystemConfig::from_moments(1.0, 0.5, 1.0 / 3.0, 1, 1, 1, 0.5);
    CHECK(cfg.a1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cfg.a2 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cfg.a3 == doctest::Approx(3.0).epsilon(1e-15));

    RngStream rng(10);
    for (int i = 0; i < 1000; ++i) {
        const double I1 = rng.uniform(1.0, 4.0);
        const double I2 = rng.uniform(0.4, 0.9);
        const double I3 = rng.uniform(0.05, 0.35);
        const SystemConfig c = SystemConfig::from_moments(I1, I2, I3, 0, 0, 0, 0);
        const auto back = c.moments();
        CHECK(std::fabs(back[0] - I1) <= 1e-15 * I1);
        CHECK(std::fabs(back[1] - I2) <= 1e-15 * I2);
        CHECK(std::fabs(back[2] - I3) <= 1e-15 * I3);
    }

    CHECK_THROWS_AS(SystemConfig::from_inverse_moments(2, 1, 3, 0, 0, 0, 0),
                    InvariantViolation);
    CHECK_THROWS_AS(SystemConfig::from_moments(0.5, 1.0, 0.2, 0, 0, 0, 0),
                    InvariantViolation);
    CHECK_THROWS_AS(
        SystemConfig::from_inverse_moments(1, 2, std::numeric_limits<double>::infinity(),
                                           0, 0, 0, 0),
        InvariantViolation);
}
