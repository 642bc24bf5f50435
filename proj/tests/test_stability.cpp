#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rrb/checks.hpp"
#include "rrb/model.hpp"
#include "rrb/rng.hpp"
#include "rrb/stability.hpp"
#include "support.hpp"

using namespace rrb;
using rrbtest::free_cfg;
using rrbtest::std_cfg;

TEST_CASE("theorem-backed classification") {
    const SystemConfig cfg = std_cfg(0.5);

    const StabilityVerdict origin = classify(cfg, origin_equilibrium(cfg));
    CHECK(origin.kind == StabilityKind::LyapunovStable);
    CHECK(origin.provenance == Provenance::Theorem61);

    const StabilityVerdict minimum = classify(cfg, e2_point(cfg, 0.0));
    CHECK(minimum.kind == StabilityKind::LyapunovStable);
    CHECK(minimum.provenance == Provenance::Theorem62);

    const StabilityVerdict negative = classify(cfg, e2_point(cfg, -1.0));
    CHECK(negative.kind == StabilityKind::LyapunovStable);
    CHECK(negative.provenance == Provenance::Theorem65);

    const StabilityVerdict low_window = classify(cfg, e2_point(cfg, 0.5));
    CHECK(low_window.kind == StabilityKind::Unstable);
    CHECK(low_window.provenance == Provenance::Theorem64);

    const StabilityVerdict beyond = classify(cfg, e2_point(cfg, 5.0));
    CHECK(beyond.kind == StabilityKind::Undetermined);
    CHECK(beyond.provenance == Provenance::NotCovered);

    CHECK_THROWS_AS(classify(std_cfg(0.0), e2_point(std_cfg(0.0), -1.0)),
                    EpsilonNotPositive);
    CHECK_THROWS_AS(classify(std_cfg(-0.5), e2_point(std_cfg(-0.5), -1.0)),
                    EpsilonNotPositive);
}

TEST_CASE("same-level witness search") {
    const SystemConfig cfg = std_cfg(0.5);

    // the unstable window has a strictly smaller witness on its level
    const auto witness = instability_certificate(cfg, e2_point(cfg, 0.5));
    REQUIRE(witness.has_value());
    CHECK(witness->point.norm() < e2_point(cfg, 0.5).point.norm() - 1e-9);

    // the global minimizer is alone on its level
    CHECK_FALSE(instability_certificate(cfg, e2_point(cfg, 0.0)).has_value());

    // nothing has norm below the origin
    CHECK_FALSE(instability_certificate(cfg, origin_equilibrium(cfg)).has_value());
}

TEST_CASE("lyapunov quadratic form") {
    const SystemConfig cfg = std_cfg(0.5);

    const LyapunovEval at_zero = lyapunov_K(cfg, -1.0, {0, 0, 0});
    CHECK(at_zero.value == 0.0);
    // the curve point carries one ulp of rounding, so the rate is ~1e-34
    CHECK(std::fabs(at_zero.rate) <= 1e-30);

    CHECK(lyapunov_K(cfg, -1.0, {1, 0, 0}).value == 1.0);

    CHECK_THROWS_AS(lyapunov_K(cfg, 0.0, {1, 0, 0}), LambdaNotNegative);
    CHECK_THROWS_AS(lyapunov_K(cfg, 0.3, {1, 0, 0}), LambdaNotNegative);

    CHECK(checks::lyapunov_positive(2000, 50, Exec::Serial));

    // the reported rate is exactly the chain-rule derivative along the field
    CHECK(checks::max_lyapunov_chain_rule(5000, 51, Exec::Parallel) <= 1e-10);

    // and it matches the finite-difference derivative along a run
    CHECK(checks::max_lyapunov_rate_mismatch(cfg, -1.0, {0.15, -0.1, 0.12}, 2.0, 50) <= 1e-6);

    // and K decreases monotonically along trajectories
    CHECK(checks::lyapunov_decreasing(cfg, -0.8, {0.1, 0.1, -0.05}, 40.0));
}

TEST_CASE("stability probe") {
    const SystemConfig cfg = std_cfg(0.5);
    ProbeSettings probe;
    probe.n_samples = 6;
    probe.horizon = 150.0;
    probe.seed = 7;
    probe.exec = Exec::Parallel;

    CHECK(probe_stability(cfg, e2_point(cfg, 0.0), probe) == ProbeOutcome::StaysNear);
    CHECK(probe_stability(cfg, e2_point(cfg, 0.5), probe) == ProbeOutcome::Escapes);

    ProbeSettings degenerate = probe;
    degenerate.delta = 0.0;
    CHECK(probe_stability(cfg, e2_point(cfg, 0.5), degenerate) == ProbeOutcome::StaysNear);

    ProbeSettings bad = probe;
    bad.delta = 0.1;
    CHECK_THROWS_AS(probe_stability(cfg, e2_point(cfg, 0.0), bad), InvariantViolation);
    bad = probe;
    bad.n_samples = 0;
    CHECK_THROWS_AS(probe_stability(cfg, e2_point(cfg, 0.0), bad), InvariantViolation);
}

TEST_CASE("empirical classification covers epsilon <= 0") {
    SystemConfig cfg = std_cfg(-0.3);
    ProbeSettings probe;
    probe.n_samples = 4;
    probe.horizon = 60.0;
    probe.seed = 8;
    // the energy minimum stays stable for negative epsilon (H is conserved)
    const StabilityVerdict v = classify_empirical(cfg, e2_point(cfg, 0.0), probe);
    CHECK(v.kind == StabilityKind::LyapunovStable);
    CHECK(v.provenance == Provenance::EmpiricalOnly);
}

TEST_CASE("limit report finds the axis limits of the free body") {
    const SystemConfig cfg = free_cfg(0.1);
    LimitSettings ls;
    ls.horizon = 500.0;
    const LimitReport rep = limit_report(cfg, {1, 1, 1}, ls);

    // H0 = 3: the casimir-minimal axis points have x3^2 = 2, the maximal x1^2 = 6
    CHECK(rep.x_m.norm2() == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(std::fabs(rep.x_m.x) <= 1e-3);
    CHECK(std::fabs(rep.x_m.y) <= 1e-3);
    CHECK(rep.x_M.norm2() == doctest::Approx(6.0).epsilon(1e-4));
    CHECK(std::fabs(rep.x_M.y) <= 1e-3);
    CHECK(std::fabs(rep.x_M.z) <= 1e-3);
    CHECK(rep.d_forward <= 1e-3);
    CHECK(rep.d_backward <= 1e-3);
    CHECK(rep.norms_monotone);
    CHECK(rep.norm_ordering_ok);
}

TEST_CASE("limit report at an equilibrium is stationary") {
    const SystemConfig cfg = std_cfg(0.5);
    const State eq = e2_point(cfg, 0.0).point;
    LimitSettings ls;
    ls.horizon = 50.0;
    const LimitReport rep = limit_report(cfg, eq, ls);
    CHECK((rep.x_m - eq).norm() <= 1e-8);
    CHECK((rep.x_M - eq).norm() <= 1e-8);
    CHECK(rep.d_forward <= 1e-7);
    CHECK(rep.d_backward <= 1e-7);
}

TEST_CASE("limit report requires a dissipative field") {
    CHECK_THROWS_AS(limit_report(std_cfg(0.0), {1, 1, 1}, {}), InvariantViolation);
}
