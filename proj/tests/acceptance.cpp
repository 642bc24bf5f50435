// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances are fixed here, not configurable.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rrb/checks.hpp"
#include "rrb/dynamics.hpp"
#include "rrb/equilibria.hpp"
#include "rrb/io.hpp"
#include "rrb/model.hpp"
#include "rrb/rng.hpp"
#include "rrb/stability.hpp"
#include "rrb/verify.hpp"

using namespace rrb;

namespace {

int g_failures = 0;
int g_index = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
    ++g_index;
    std::printf("[%2d/11] %s  %-38s %s\n", g_index, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

SystemConfig std_cfg(double eps) { return {1.0, 2.0, 3.0, 1.0, 1.0, 1.0, eps}; }
SystemConfig free_cfg(double eps) { return {1.0, 2.0, 3.0, 0.0, 0.0, 0.0, eps}; }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void criterion_1_algebraic_identities() {
    const double worst21 = checks::max_triple_product_residual(100'000, 101, Exec::Parallel);
    const double worst23 = checks::max_drift_identity_residual(100'000, 102, Exec::Parallel);
    report(worst21 <= 1e-12 && worst23 <= 1e-12, "algebraic identities",
           "triple-product " + sci(worst21) + ", drift " + sci(worst23) + " (tol 1e-12)");
}

Trajectory reference_run() {
    IntegratorSettings s;
    s.t_end = 100.0;
    s.rtol = 1e-10;
    return integrate({FieldKind::EpsilonRevised, std_cfg(0.5)}, {1, 1, 1}, s);
}

void criterion_2_energy_conservation(const Trajectory& traj) {
    double drift = 0.0;
    for (double h : traj.H_series) drift = std::max(drift, std::fabs(h - traj.H_series[0]));
    report(traj.status == IntegrationStatus::Complete && drift <= 1e-7,
           "energy first integral", "max |H - H0| " + sci(drift) + " over t in [0,100]");
}

void criterion_3_dissipation_law(const Trajectory& traj) {
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State& x = traj.states[i];
        const Vec3 m = m_vector(std_cfg(0.5), x);
        worst = std::max(worst, traj.diss_residual[i] / (1.0 + x.norm2() * m.norm2()));
    }
    const IntegralRates spot = integral_rates(free_cfg(1.0), {1, 1, 1});
    const bool spot_ok = spot.dC_dt == -6.0 &&
                         cross(Vec3{1, 1, 1}, m_vector(free_cfg(1.0), {1, 1, 1})).norm2() == 6.0;
    report(worst <= 1e-6 && spot_ok, "casimir dissipation law",
           "max scaled residual " + sci(worst) + ", spot value -6 exact");
}

void criterion_4_equilibrium_equivalence() {
    const bool ok = checks::equilibrium_equivalence(1000, 104, {-0.5, 0.1, 1.0},
                                                    Exec::Parallel);
    report(ok, "equilibrium equivalence", "1e3 points per epsilon in {-0.5, 0.1, 1}");
}

void criterion_5_level_sets() {
    const checks::LevelScan scan = checks::scan_levels(100, 105);

    const double planted = -217.0 / 288.0;  // H(e2(-1)) for the worked config
    const LevelSet set = equilibria_on_level(std_cfg(0.5), planted);
    bool recovered = false;
    for (const Equilibrium& e : set.points) {
        if (e.family != Family::E2) continue;
        if (std::fabs(e.parameter + 1.0) <= 1e-8 &&
            std::fabs(hamiltonian(std_cfg(0.5), e.point) - planted) <= 1e-9)
            recovered = true;
    }
    report(scan.cardinality_ok && scan.roundtrip_ok && recovered, "level-set enumeration",
           "<= 6 curve points on 100 random levels; lambda = -1 recovered");
}

void criterion_6_limits() {
    LimitSettings ls;
    ls.horizon = 500.0;
    const LimitReport rep = limit_report(free_cfg(0.1), {1, 1, 1}, ls);
    const double r3 = std::sqrt(2.0);  // H0 = 3 on the x3 axis
    const double r1 = std::sqrt(6.0);  // and on the x1 axis
    const double fwd = std::min((rep.x_m - State{0, 0, r3}).norm(),
                                (rep.x_m - State{0, 0, -r3}).norm());
    const double bwd = std::min((rep.x_M - State{r1, 0, 0}).norm(),
                                (rep.x_M - State{-r1, 0, 0}).norm());
    const bool ok = fwd <= 1e-3 && bwd <= 1e-3 && rep.d_forward <= 1e-3 &&
                    rep.d_backward <= 1e-3 && rep.x_M.norm2() > rep.x_m.norm2();
    report(ok, "limit sets",
           "forward off-axis " + sci(fwd) + ", backward " + sci(bwd) + ", d(x(T),E) <= " +
               sci(std::max(rep.d_forward, rep.d_backward)));
}

void criterion_7_stability_table() {
    const SystemConfig cfg = std_cfg(0.5);
    ProbeSettings probe;
    probe.delta = 1e-3;
    probe.horizon = 200.0;
    probe.n_samples = 20;
    probe.seed = 107;
    std::string problems;
    for (double lam : {0.0, -0.1, -1.0, -10.0})
        problems += checks::classify_probe_agreement(cfg, lam, true, probe);
    for (double lam : {0.2, 0.5, 0.9})
        problems += checks::classify_probe_agreement(cfg, lam, false, probe);
    report(problems.empty(), "stability table",
           problems.empty() ? "4 stable + 3 unstable parameters, probes agree" : problems);
}

void criterion_8_lyapunov_machinery() {
    const bool positive = checks::lyapunov_positive(10'000, 108, Exec::Parallel);
    double worst = 0.0;
    RngStream rng(109);
    for (int i = 0; i < 10; ++i) {
        const double lambda = -rng.uniform(0.2, 2.0);
        const Vec3 z0 = 0.2 * rng.unit_vec3();
        worst = std::max(worst,
                         checks::max_lyapunov_rate_mismatch(std_cfg(0.5), lambda, z0, 2.0, 100));
    }
    report(positive && worst <= 1e-6, "lyapunov machinery",
           "K positive definite; worst dK/dt mismatch " + sci(worst));
}

void criterion_9_monotonicity() {
    const SystemConfig cfg = std_cfg(0.0);
    const bool ok = checks::curve_norm_monotone(cfg, 1000) &&
                    checks::energy_curve_shape(cfg, 1000);
    report(ok, "scalar monotonicity", "g increasing left of a1; h three-piece shape");
}

void criterion_10_generic_builder() {
    double worst = 0.0;
    for (int dim = 2; dim <= 6; ++dim)
        worst = std::max(worst,
                         checks::max_generic_annihilation(dim, 1000, 110 + dim, Exec::Parallel));
    report(worst <= 1e-12, "generic metric builder",
           "max |g grad| " + sci(worst) + " over n in {2..6}");
}

void criterion_11_integrator_order() {
    const double ratio = checks::step_halving_ratio(free_cfg(0.0), {1, 1, 1}, 2.0, 0.1);
    report(ratio >= 25.6 && ratio <= 38.4, "integrator order",
           "step-halving error ratio " + sci(ratio) + " (expect 32 +- 20%)");
}

}  // namespace

int main() {
    criterion_1_algebraic_identities();
    const Trajectory traj = reference_run();
    criterion_2_energy_conservation(traj);
    criterion_3_dissipation_law(traj);
    criterion_4_equilibrium_equivalence();
    criterion_5_level_sets();
    criterion_6_limits();
    criterion_7_stability_table();
    criterion_8_lyapunov_machinery();
    criterion_9_monotonicity();
    criterion_10_generic_builder();
    criterion_11_integrator_order();

    std::printf("%s: %d/11 criteria passed\n", g_failures == 0 ? "OK" : "FAILED",
                11 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
