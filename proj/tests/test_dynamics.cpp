#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rrb/checks.hpp"
#include "rrb/dynamics.hpp"
#include "rrb/equilibria.hpp"
#include "rrb/model.hpp"
#include "rrb/rng.hpp"
#include "support.hpp"

using namespace rrb;
using rrbtest::free_cfg;
using rrbtest::std_cfg;

TEST_CASE("conservative right-hand side") {
    CHECK(rhs_hp(free_cfg(), {1, 1, 1}) == Vec3{1, -2, 1});
    CHECK(rhs_hp(std_cfg(), {-1.0, -0.5, -1.0 / 3.0}).norm() < 1e-15);
    // curve-family points satisfy m = lambda x, so the cross product vanishes
    const State e2 = e2_point(std_cfg(), -1.0).point;
    CHECK(rhs_hp(std_cfg(), e2).norm() < 1e-15);

    // componentwise oracle with the explicit component formulas
    RngStream rng(20);
    for (int i = 0; i < 1000; ++i) {
        SystemConfig cfg = std_cfg();
        cfg.ctrl_a = rng.uniform(-1, 1);
        cfg.ctrl_b = rng.uniform(-1, 1);
        cfg.ctrl_c = rng.uniform(-1, 1);
        const State x = rng.uniform_vec3(-1, 1);
        const Vec3 f = rhs_hp(cfg, x);
        const double f1 = (cfg.a3 - cfg.a2) * x.y * x.z + cfg.ctrl_c * x.y - cfg.ctrl_b * x.z;
        const double f2 = (cfg.a1 - cfg.a3) * x.x * x.z - cfg.ctrl_c * x.x + cfg.ctrl_a * x.z;
        const double f3 = (cfg.a2 - cfg.a1) * x.x * x.y + cfg.ctrl_b * x.x - cfg.ctrl_a * x.y;
        CHECK(std::fabs(f.x - f1) <= 1e-14);
        CHECK(std::fabs(f.y - f2) <= 1e-14);
        CHECK(std::fabs(f.z - f3) <= 1e-14);
    }
}

TEST_CASE("revised right-hand side") {
    CHECK(rhs_revised(free_cfg(1.0), {1, 1, 1}) == Vec3{-7, -4, 5});

    const Vec3 f = rhs_revised(std_cfg(0.1), {1, 1, 1});
    CHECK(f.x == doctest::Approx(-0.1).epsilon(1e-13));
    CHECK(f.y == doctest::Approx(-2.2).epsilon(1e-13));
    CHECK(f.z == doctest::Approx(1.7).epsilon(1e-13));

    // equilibria of the conservative system stay equilibria for every epsilon
    for (double eps : {-0.5, 0.1, 1.0}) {
        const State e2 = e2_point(std_cfg(eps), -2.5).point;
        CHECK(rhs_revised(std_cfg(eps), e2).norm() < 1e-14);
    }
}

TEST_CASE("epsilon zero takes the conservative path exactly") {
    CHECK(checks::revised_matches_hp_bitwise(10'000, 21, Exec::Parallel));
}

TEST_CASE("integral rates") {
    const IntegralRates r = integral_rates(free_cfg(1.0), {1, 1, 1});
    CHECK(r.dH_dt == 0.0);   // (1,2,3).(-7,-4,5)
    CHECK(r.dC_dt == -6.0);  // equals -|x cross m|^2 = -|(1,-2,1)|^2

    const IntegralRates zero_eps = integral_rates(std_cfg(0.0), {0.3, -0.7, 1.1});
    CHECK(std::fabs(zero_eps.dH_dt) < 1e-14);
    CHECK(std::fabs(zero_eps.dC_dt) < 1e-14);

    const State eq = e2_point(std_cfg(0.7), 4.0).point;
    const IntegralRates at_eq = integral_rates(std_cfg(0.7), eq);
    CHECK(std::fabs(at_eq.dH_dt) < 1e-12);
    CHECK(std::fabs(at_eq.dC_dt) < 1e-12);
}

TEST_CASE("pointwise conservation and dissipation laws") {
    CHECK(checks::max_energy_orthogonality(100'000, 22, Exec::Parallel) <= 1e-12);
    CHECK(checks::max_dissipation_identity(100'000, 23, Exec::Parallel) <= 1e-12);
}

TEST_CASE("equilibrium equivalence of the two systems") {
    CHECK(checks::equilibrium_equivalence(1000, 24, {0.1, 1.0, -0.5}, Exec::Parallel));
}

TEST_CASE("finite-difference jacobian") {
    const VectorField hp{FieldKind::HamiltonPoisson, free_cfg()};
    const Matrix3 at_origin = jacobian(hp, {0, 0, 0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(at_origin(i, j) == 0.0);

    // J delta approximates the rhs increment to second order
    RngStream rng(25);
    for (int i = 0; i < 200; ++i) {
        const VectorField field{FieldKind::EpsilonRevised, std_cfg(0.4)};
        const State x = rng.uniform_vec3(-1.5, 1.5);
        const Vec3 delta = 1e-4 * rng.unit_vec3();
        const Vec3 lhs = jacobian(field, x) * delta;
        const Vec3 rhs = field(x + delta) - field(x);
        CHECK((lhs - rhs).norm() <= 1e-6);
    }

    // with epsilon = 0 the revised jacobian equals the conservative one
    const VectorField rev0{FieldKind::EpsilonRevised, std_cfg(0.0)};
    const VectorField hp_std{FieldKind::HamiltonPoisson, std_cfg(0.0)};
    const State probe{0.8, -0.3, 1.2};
    const Matrix3 a = jacobian(rev0, probe);
    const Matrix3 b = jacobian(hp_std, probe);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::fabs(a(i, j) - b(i, j)) <= 1e-9);
}
