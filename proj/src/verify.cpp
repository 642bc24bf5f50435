#include "rrb/verify.hpp"

#include <cmath>
#include <sstream>

#include "rrb/checks.hpp"
#include "rrb/dynamics.hpp"
#include "rrb/equilibria.hpp"
#include "rrb/model.hpp"
#include "rrb/rng.hpp"

namespace rrb::verify {
namespace {

using checks::RunDiagnostics;

std::string fmt(double v) {
    std::ostringstream oss;
    oss.precision(3);
    oss << std::scientific << v;
    return oss.str();
}

SystemConfig random_controlled_config(RngStream& rng, double epsilon) {
    SystemConfig cfg;
    cfg.a1 = rng.uniform(0.6, 1.4);
    cfg.a2 = cfg.a1 + rng.uniform(0.4, 1.1);
    cfg.a3 = cfg.a2 + rng.uniform(0.4, 1.1);
    const auto control = [&] {
        const double u = rng.uniform(-1.25, 1.25);
        return u < 0.0 ? u - 0.25 : u + 0.25;
    };
    cfg.ctrl_a = control();
    cfg.ctrl_b = control();
    cfg.ctrl_c = control();
    cfg.epsilon = epsilon;
    return cfg;
}

struct Suite {
    const SuiteOptions& opts;
    std::vector<CheckResult> results;

    std::int64_t scaled(std::int64_t n) const {
        return opts.quick ? std::max<std::int64_t>(n / 20, 25) : n;
    }

    void residual_check(const std::string& name, double worst, double tol) {
        results.push_back({name, worst <= tol,
                           "max scaled residual " + fmt(worst) + " vs " + fmt(tol)});
    }

    void bool_check(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    }
};

void model_checks(Suite& s) {
    const auto& o = s.opts;
    const std::int64_t n4 = s.scaled(10'000);
    s.bool_check("model.poisson_skew",
                 checks::poisson_skew_exact(n4, o.seed + 1, o.exec), "exact skewness");
    s.residual_check("model.casimir_annihilation",
                     checks::max_casimir_annihilation(n4, o.seed + 2, o.exec), 1e-13);
    s.residual_check("model.metric_annihilation",
                     checks::max_metric_annihilation(n4, o.seed + 3, o.exec), 1e-12);
    s.residual_check("model.drift_cross_identity",
                     checks::max_drift_identity_residual(n4, o.seed + 4, o.exec), 1e-12);
    s.residual_check("model.triple_product_identity",
                     checks::max_triple_product_residual(n4, o.seed + 5, o.exec), 1e-12);
    s.residual_check("model.hamiltonian_two_forms",
                     checks::max_hamiltonian_form_residual(n4, o.seed + 6, o.exec), 1e-12);
    s.bool_check("model.generic_builder_bitwise",
                 checks::generic_matches_metric_bitwise(s.scaled(200), o.seed + 7),
                 "n=3 builder equals the concrete metric bit for bit");
    double worst_generic = 0.0;
    for (int dim = 2; dim <= 6; ++dim)
        worst_generic = std::max(
            worst_generic,
            checks::max_generic_annihilation(dim, s.scaled(1000), o.seed + 8 + dim, o.exec));
    s.residual_check("model.generic_annihilation", worst_generic, 1e-12);
}

void dynamics_checks(Suite& s) {
    const auto& o = s.opts;
    const std::int64_t n5 = s.scaled(100'000);
    s.residual_check("dynamics.energy_orthogonality",
                     checks::max_energy_orthogonality(n5, o.seed + 20, o.exec), 1e-12);
    s.residual_check("dynamics.dissipation_identity",
                     checks::max_dissipation_identity(n5, o.seed + 21, o.exec), 1e-12);
    s.bool_check("dynamics.equilibrium_equivalence",
                 checks::equilibrium_equivalence(s.scaled(1000), o.seed + 22,
                                                 {0.1, 1.0, -0.5}, o.exec),
                 "|rhs_hp| small iff |rhs_revised| small, eps in {0.1, 1, -0.5}");
    s.bool_check("dynamics.zero_epsilon_coincides",
                 checks::revised_matches_hp_bitwise(s.scaled(10'000), o.seed + 23, o.exec),
                 "eps = 0 path equals the conservative rhs exactly");
}

void integrate_checks(Suite& s) {
    const auto& o = s.opts;
    SystemConfig cfg = o.cfg;
    if (cfg.epsilon == 0.0) cfg.epsilon = 0.5;
    const State x0{1.0, 1.0, 1.0};
    IntegratorSettings set;
    set.t_end = o.quick ? 20.0 : 100.0;

    const Trajectory traj = integrate({FieldKind::EpsilonRevised, cfg}, x0, set);
    const RunDiagnostics diag = checks::diagnose_run(cfg, traj, Direction::Forward, set.rtol);
    const double h_bound = 100.0 * set.rtol * (1.0 + std::fabs(traj.H_series.front())) * set.t_end;
    s.bool_check("integrate.energy_drift", diag.max_H_drift <= h_bound,
                 "max |H - H0| " + fmt(diag.max_H_drift) + " vs " + fmt(h_bound));
    s.bool_check("integrate.casimir_monotone", diag.C_monotone,
                 "C nonincreasing for eps > 0 up to 10 rtol jitter");
    s.bool_check("integrate.dissipation_residual", diag.max_diss_residual_scaled <= 1e-6,
                 "max scaled residual " + fmt(diag.max_diss_residual_scaled));
    s.bool_check("integrate.bounded", diag.max_radius <= diag.bound_radius * (1.0 + 1e-9),
                 "max |x| " + fmt(diag.max_radius) + " vs ellipsoid radius " +
                     fmt(diag.bound_radius));

    SystemConfig neg = cfg;
    neg.epsilon = -0.4;
    IntegratorSettings nset;
    nset.t_end = 20.0;
    const Trajectory ntraj = integrate({FieldKind::EpsilonRevised, neg}, x0, nset);
    s.bool_check("integrate.casimir_monotone_negative_eps",
                 checks::diagnose_run(neg, ntraj, Direction::Forward, nset.rtol).C_monotone,
                 "C nondecreasing for eps < 0 up to 10 rtol jitter");

    const double rt = checks::time_reversal_error(cfg, x0, 1.0, IntegratorSettings{});
    s.bool_check("integrate.time_reversal", rt <= 1e-5 * (1.0 + x0.norm()),
                 "return error " + fmt(rt));
}

void equilibria_checks(Suite& s) {
    const auto& o = s.opts;
    const std::int64_t n3 = s.scaled(1000);

    double worst_sub = 0.0, worst_prop = 0.0;
    for (std::int64_t i = 0; i < n3; ++i) {
        RngStream rng(o.seed + 30, static_cast<std::uint64_t>(i));
        SystemConfig cfg = random_controlled_config(rng, 0.0);
        const double gaps[4][2] = {{-4.0, cfg.a1 - 0.05},
                                   {cfg.a1 + 0.05, cfg.a2 - 0.05},
                                   {cfg.a2 + 0.05, cfg.a3 - 0.05},
                                   {cfg.a3 + 0.05, 8.0}};
        const auto& gap = gaps[i % 4];
        const double lam = rng.uniform(gap[0], gap[1]);
        const Equilibrium e2 = e2_point(cfg, lam);
        const Vec3 m = m_vector(cfg, e2.point);
        worst_sub = std::max(worst_sub, e2.residual / (1.0 + e2.point.norm() * m.norm()));
        worst_prop = std::max(worst_prop, (m - lam * e2.point).norm() /
                                              (1.0 + std::fabs(lam) * e2.point.norm()));

        SystemConfig lcfg = cfg;
        const Family fam = i % 3 == 0 ? Family::E3 : (i % 3 == 1 ? Family::E4 : Family::E5);
        if (fam == Family::E3) lcfg.ctrl_a = 0.0;
        if (fam == Family::E4) lcfg.ctrl_b = 0.0;
        if (fam == Family::E5) lcfg.ctrl_c = 0.0;
        const Equilibrium line = line_family_point(lcfg, fam, rng.uniform(-3.0, 3.0));
        const Vec3 lm = m_vector(lcfg, line.point);
        worst_sub = std::max(worst_sub, line.residual / (1.0 + line.point.norm() * lm.norm()));
    }
    s.residual_check("equilibria.family_substitution", worst_sub, 1e-12);
    s.residual_check("equilibria.m_proportionality", worst_prop, 1e-12);

    // Monotonicity of |e2|^2 on (-inf, a1) and the three-piece shape of h.
    const int grid_n = static_cast<int>(s.scaled(1000));
    bool g_monotone = true, h_shape = true;
    for (int c = 0; c < 4; ++c) {
        RngStream rng(o.seed + 31, static_cast<std::uint64_t>(c));
        const SystemConfig cfg =
            c == 0 ? SystemConfig{1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 0.0}
                   : random_controlled_config(rng, 0.0);
        g_monotone = g_monotone && checks::curve_norm_monotone(cfg, grid_n);
        h_shape = h_shape && checks::energy_curve_shape(cfg, grid_n);
    }
    s.bool_check("equilibria.g_monotone", g_monotone,
                 "|e2|^2 strictly increasing left of a1");
    s.bool_check("equilibria.h_shape", h_shape,
                 "h decreasing / increasing / decreasing with minimum at 0");

    // Level-set enumeration: cardinality and root residuals.
    const checks::LevelScan scan = checks::scan_levels(s.scaled(100), o.seed + 32);
    s.bool_check("equilibria.level_cardinality",
                 scan.cardinality_ok && scan.curve_always_met,
                 "<= 6 curve points and <= 2 per line on every sampled level");
    s.bool_check("equilibria.root_roundtrip", scan.roundtrip_ok,
                 "|h(lambda) - k| <= 1e-9 (1 + |k|) for every returned root");

    const SystemConfig std_cfg{1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 0.0};
    const double far = std::max(e2_point(std_cfg, 1e3).point.norm(),
                                e2_point(std_cfg, -1e3).point.norm());
    s.bool_check("equilibria.e2_accumulation", far <= 3.2e-3,
                 "|e2(+-1000)| = " + fmt(far));
}

void stability_checks(Suite& s) {
    const auto& o = s.opts;

    const int n_cfg = o.quick ? 3 : 20;
    std::string disagreements;
    for (int c = 0; c < n_cfg && disagreements.empty(); ++c) {
        RngStream rng(o.seed + 40, static_cast<std::uint64_t>(c));
        const SystemConfig cfg = random_controlled_config(rng, rng.uniform(0.4, 1.0));
        ProbeSettings probe;
        probe.n_samples = o.quick ? 3 : 6;
        probe.seed = o.seed + 1000 + static_cast<std::uint64_t>(c);
        probe.exec = o.exec;
        for (double lam : {-2.0, -1.0, -0.1})
            disagreements += checks::classify_probe_agreement(cfg, lam, true, probe);
        for (double frac : {0.2, 0.5, 0.9})
            disagreements +=
                checks::classify_probe_agreement(cfg, frac * cfg.a1, false, probe);
    }
    s.bool_check("stability.classification_soundness", disagreements.empty(),
                 disagreements.empty() ? "theorem table and probes agree" : disagreements);

    bool decreasing = true;
    for (int c = 0; c < (o.quick ? 2 : 5); ++c) {
        RngStream rng(o.seed + 41, static_cast<std::uint64_t>(c));
        const SystemConfig cfg = random_controlled_config(rng, rng.uniform(0.3, 1.0));
        const double lam = rng.uniform(-2.0, -0.2);
        decreasing = decreasing &&
                     checks::lyapunov_decreasing(cfg, lam, 0.15 * rng.unit_vec3(), 40.0);
    }
    s.bool_check("stability.lyapunov_decrease", decreasing,
                 "K strictly decreasing up to 10 rtol jitter");

    double worst_rate = 0.0;
    const int n_traj = o.quick ? 2 : 10;
    for (int c = 0; c < n_traj; ++c) {
        RngStream rng(o.seed + 42, static_cast<std::uint64_t>(c));
        const SystemConfig cfg = random_controlled_config(rng, rng.uniform(0.3, 1.0));
        const double lam = rng.uniform(-2.0, -0.2);
        worst_rate = std::max(
            worst_rate, checks::max_lyapunov_rate_mismatch(cfg, lam, 0.2 * rng.unit_vec3(),
                                                           2.0, 100));
    }
    s.residual_check("stability.lyapunov_rate_identity", worst_rate, 1e-6);

    s.bool_check("stability.lyapunov_positive",
                 checks::lyapunov_positive(s.scaled(10'000), o.seed + 43, o.exec),
                 "K(z) >= (a1 - lambda)/2 |z|^2");
    s.residual_check("stability.lyapunov_chain_rule",
                     checks::max_lyapunov_chain_rule(s.scaled(10'000), o.seed + 46, o.exec),
                     1e-10);

    const SystemConfig std_half{1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 0.5};
    const double worst_limit = checks::max_limit_distance(
        std_half, o.quick ? 6 : 100, 2.0, 500.0, o.seed + 44, o.exec);
    s.bool_check("stability.convergence_to_E", worst_limit <= 1e-3,
                 "max d(x(T), E) " + fmt(worst_limit) + " at T=500, both directions");

    bool monotone = true, contraction = true;
    for (int c = 0; c < (o.quick ? 2 : 6); ++c) {
        RngStream rng(o.seed + 45, static_cast<std::uint64_t>(c));
        SystemConfig cfg = random_controlled_config(rng, c % 2 == 0 ? 0.7 : -0.6);
        IntegratorSettings set;
        set.t_end = 50.0;
        const State x0 = rng.uniform(0.3, 1.5) * rng.unit_vec3();
        const Trajectory traj = integrate({FieldKind::EpsilonRevised, cfg}, x0, set);
        const RunDiagnostics diag = checks::diagnose_run(cfg, traj, Direction::Forward, set.rtol);
        monotone = monotone && diag.C_monotone;
        if (cfg.epsilon > 0.0) contraction = contraction && diag.norm_never_grows;
    }
    s.bool_check("stability.monotone_norm", monotone,
                 "|x(t)|^2 monotone per the sign of eps");
    s.bool_check("stability.origin_contraction", contraction,
                 "|x(t)| <= |x0| for eps > 0 runs");
}

}  // namespace

std::vector<CheckResult> run_suite(const SuiteOptions& opts) {
    Suite s{opts, {}};
    model_checks(s);
    dynamics_checks(s);
    integrate_checks(s);
    equilibria_checks(s);
    stability_checks(s);
    return s.results;
}

}  // namespace rrb::verify
