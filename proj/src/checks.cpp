#include "rrb/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rrb/dynamics.hpp"
#include "rrb/equilibria.hpp"
#include "rrb/model.hpp"
#include "rrb/rng.hpp"

namespace rrb::checks {
namespace {

State random_state(RngStream& rng, double span = 2.5) {
    return rng.uniform_vec3(-span, span);
}

SystemConfig random_config(RngStream& rng, bool nonzero_controls, double epsilon) {
    SystemConfig cfg;
    cfg.a1 = rng.uniform(0.6, 1.4);
    cfg.a2 = cfg.a1 + rng.uniform(0.4, 1.1);
    cfg.a3 = cfg.a2 + rng.uniform(0.4, 1.1);
    const auto control = [&](double u) {
        if (!nonzero_controls) return u;
        return u < 0.0 ? u - 0.25 : u + 0.25;
    };
    cfg.ctrl_a = control(rng.uniform(-1.25, 1.25));
    cfg.ctrl_b = control(rng.uniform(-1.25, 1.25));
    cfg.ctrl_c = control(rng.uniform(-1.25, 1.25));
    cfg.epsilon = epsilon;
    return cfg;
}

}  // namespace

double max_triple_product_residual(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const Vec3 u = random_state(rng, 3.0);
        const Vec3 w = random_state(rng, 3.0);
        const Vec3 uw = cross(u, w);
        const double lhs = dot(u, cross(w, uw));
        const double rhs = uw.norm2();
        return std::fabs(lhs - rhs) / (1.0 + u.norm2() * w.norm2());
    });
}

double max_drift_identity_residual(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const SystemConfig cfg = random_config(rng, false, 0.0);
        const State x = random_state(rng);
        const Vec3 m = m_vector(cfg, x);
        const Vec3 via_metric = drift_v(cfg, x);
        const Vec3 via_cross = cross(cross(x, m), m);
        return (via_metric - via_cross).norm() / (1.0 + x.norm() * m.norm2());
    });
}

double max_casimir_annihilation(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const State x = random_state(rng, 3.0);
        return (poisson_matrix(x) * x).norm() / (x.norm2() + 1e-300);
    });
}

double max_metric_annihilation(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const SystemConfig cfg = random_config(rng, false, 0.0);
        const State x = random_state(rng);
        const Vec3 m = m_vector(cfg, x);
        return (metric_matrix(cfg, x) * m).norm() / (1.0 + m.norm2() * m.norm());
    });
}

double max_hamiltonian_form_residual(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const SystemConfig cfg = random_config(rng, false, 0.0);
        const State x = random_state(rng);
        const double h14 = hamiltonian(cfg, x);
        const double h30 = hamiltonian_centered(cfg, x);
        return std::fabs(h14 - h30) / (1.0 + std::fabs(h14));
    });
}

namespace {

double revised_scale(const SystemConfig& cfg, const State& x, const Vec3& m) {
    return 1.0 + m.norm2() * x.norm() * (1.0 + std::fabs(cfg.epsilon) * m.norm());
}

}  // namespace

double max_energy_orthogonality(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const SystemConfig cfg = random_config(rng, false, rng.uniform(-1.0, 1.0));
        const State x = random_state(rng);
        const Vec3 m = m_vector(cfg, x);
        return std::fabs(dot(m, rhs_revised(cfg, x))) / revised_scale(cfg, x, m);
    });
}

double max_dissipation_identity(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const SystemConfig cfg = random_config(rng, false, rng.uniform(-1.0, 1.0));
        const State x = random_state(rng);
        const Vec3 m = m_vector(cfg, x);
        const double lhs = dot(x, rhs_revised(cfg, x));
        const double rhs = -cfg.epsilon * cross(x, m).norm2();
        return std::fabs(lhs - rhs) / revised_scale(cfg, x, m);
    });
}

double max_generic_annihilation(int dimension, std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [dimension, seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        std::vector<double> grad(static_cast<std::size_t>(dimension));
        double norm2 = 0.0;
        for (double& g : grad) {
            g = rng.uniform(-2.0, 2.0);
            norm2 += g * g;
        }
        const GenericMetric metric = build_metric_generic(grad);
        if (!metric.is_symmetric()) return 1.0;  // forces a failure
        const std::vector<double> prod = metric.apply(grad);
        double worst = 0.0;
        for (double p : prod) worst = std::max(worst, std::fabs(p));
        return worst / (1.0 + norm2 * std::sqrt(norm2));
    });
}

bool poisson_skew_exact(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
               RngStream rng(seed, static_cast<std::uint64_t>(i));
               const Matrix3 pi = poisson_matrix(random_state(rng, 3.0));
               for (int r = 0; r < 3; ++r)
                   for (int c = 0; c < 3; ++c)
                       if (pi(r, c) != -pi(c, r)) return 1.0;
               return 0.0;
           }) == 0.0;
}

bool revised_matches_hp_bitwise(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
               RngStream rng(seed, static_cast<std::uint64_t>(i));
               const SystemConfig cfg = random_config(rng, true, 0.0);
               const State x = random_state(rng);
               return rhs_revised(cfg, x) == rhs_hp(cfg, x) ? 0.0 : 1.0;
           }) == 0.0;
}

bool generic_matches_metric_bitwise(std::int64_t n, std::uint64_t seed) {
    for (std::int64_t i = 0; i < n; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const SystemConfig cfg = random_config(rng, true, 0.0);
        const State x = random_state(rng);
        const Vec3 m = m_vector(cfg, x);
        const double grad[3] = {m.x, m.y, m.z};
        const GenericMetric g = build_metric_generic(grad);
        const Matrix3 gm = metric_matrix(cfg, x);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (gm(r, c) != g.at(r, c)) return false;
    }
    return true;
}

bool equilibrium_equivalence(std::int64_t n, std::uint64_t seed,
                             const std::vector<double>& epsilons, Exec exec) {
    for (double eps : epsilons) {
        const double worst = max_over_indices(n, exec, [seed, eps](std::int64_t i) {
            RngStream rng(seed, static_cast<std::uint64_t>(i));
            SystemConfig cfg = random_config(rng, true, eps);
            State x;
            switch (i % 4) {
                case 0:
                    x = random_state(rng);
                    break;
                case 1: {  // curve family point, lambda kept off the poles
                    const double lam = rng.uniform() < 0.5 ? rng.uniform(-4.0, cfg.a1 - 0.05)
                                                           : rng.uniform(cfg.a3 + 0.05, 8.0);
                    x = e2_point(cfg, lam).point;
                    break;
                }
                case 2: {  // line family point
                    cfg.ctrl_b = 0.0;
                    x = line_family_point(cfg, Family::E4, rng.uniform(-2.0, 2.0)).point;
                    break;
                }
                default:
                    x = {0.0, 0.0, 0.0};
                    break;
            }
            const Vec3 m = m_vector(cfg, x);
            const double tol = 1e-9 * (1.0 + x.norm() * m.norm());
            const bool hp_eq = rhs_hp(cfg, x).norm() <= tol;
            const bool rev_eq =
                rhs_revised(cfg, x).norm() <= tol * (1.0 + std::fabs(eps) * m.norm());
            return hp_eq == rev_eq ? 0.0 : 1.0;
        });
        if (worst != 0.0) return false;
    }
    return true;
}

RunDiagnostics diagnose_run(const SystemConfig& cfg, const Trajectory& traj,
                            Direction direction, double rtol) {
    RunDiagnostics d{};
    const double H0 = traj.H_series.front();
    const double C0 = traj.C_series.front();
    const double norm0 = traj.states.front().norm();
    d.bound_radius = level_set_radius(cfg, H0);
    d.C_monotone = true;
    d.norm_never_grows = true;

    // Along forward time C drifts against the sign of eps; a backward run on
    // the integration clock sees the opposite sign.
    double sign = cfg.epsilon > 0.0 ? 1.0 : -1.0;
    if (direction == Direction::Backward) sign = -sign;

    for (std::size_t i = 0; i < traj.size(); ++i) {
        d.max_H_drift = std::max(d.max_H_drift, std::fabs(traj.H_series[i] - H0));
        const State& x = traj.states[i];
        const Vec3 m = m_vector(cfg, x);
        d.max_diss_residual_scaled =
            std::max(d.max_diss_residual_scaled,
                     traj.diss_residual[i] / (1.0 + x.norm2() * m.norm2()));
        d.max_radius = std::max(d.max_radius, x.norm());
        if (x.norm() > norm0 + 1e-6 * (1.0 + norm0)) d.norm_never_grows = false;
        if (i + 1 < traj.size()) {
            const double jitter = 10.0 * rtol * (1.0 + std::fabs(traj.C_series[i]));
            if (cfg.epsilon == 0.0) {
                if (std::fabs(traj.C_series[i] - C0) > 100.0 * rtol * (1.0 + std::fabs(C0)) *
                                                           std::max(1.0, traj.times.back()))
                    d.C_monotone = false;
            } else if (sign * (traj.C_series[i + 1] - traj.C_series[i]) > jitter) {
                d.C_monotone = false;
            }
        }
    }
    return d;
}

double time_reversal_error(const SystemConfig& cfg, const State& x0, double T,
                           const IntegratorSettings& base) {
    const VectorField field{FieldKind::EpsilonRevised, cfg};
    IntegratorSettings fwd = base;
    fwd.t_end = T;
    fwd.direction = Direction::Forward;
    const Trajectory out = integrate(field, x0, fwd);
    IntegratorSettings bwd = fwd;
    bwd.direction = Direction::Backward;
    const Trajectory back = integrate(field, out.back(), bwd);
    return (back.back() - x0).norm();
}

double step_halving_ratio(const SystemConfig& cfg, const State& x0, double T, double h) {
    const VectorField field{FieldKind::EpsilonRevised, cfg};
    const auto run = [&](double step) {
        const auto n = static_cast<std::int64_t>(std::llround(T / step));
        State x = x0;
        for (std::int64_t i = 0; i < n; ++i) x = rk_step(field, x, 0.0, step).x_new;
        return x;
    };
    const State ref = run(h / 64.0);
    const double e_h = (run(h) - ref).norm();
    const double e_h2 = (run(h / 2.0) - ref).norm();
    return e_h / e_h2;
}

double max_limit_distance(const SystemConfig& cfg, std::int64_t n, double radius,
                          double T, std::uint64_t seed, Exec exec) {
    const VectorField field{FieldKind::EpsilonRevised, cfg};
    return max_over_indices(2 * n, exec, [&, seed](std::int64_t cell) {
        const std::int64_t i = cell / 2;
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const double r = radius * std::cbrt(rng.uniform());
        const State x0 = r * rng.unit_vec3();
        IntegratorSettings s;
        s.t_end = T;
        s.direction = cell % 2 == 0 ? Direction::Forward : Direction::Backward;
        const Trajectory traj = integrate(field, x0, s);
        return distance_to_E(cfg, traj.back());
    });
}

namespace {

std::vector<double> lyapunov_series(const SystemConfig& cfg, double lambda,
                                    const Trajectory& traj, const State& eq) {
    std::vector<double> K(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        K[i] = lyapunov_K(cfg, lambda, traj.states[i] - eq).value;
    return K;
}

}  // namespace

double max_lyapunov_rate_mismatch(const SystemConfig& cfg, double lambda, const Vec3& z0,
                                  double T, int n_points) {
    const State eq = e2_point(cfg, lambda).point;
    IntegratorSettings s;
    s.t_end = T;
    s.h_init = 2e-4;
    s.h_max = 2e-4;  // keeps the finite-difference truncation below 1e-6 relative
    s.max_steps = 200'000;
    const Trajectory traj = integrate({FieldKind::EpsilonRevised, cfg}, eq + z0, s);
    const std::vector<double> K = lyapunov_series(cfg, lambda, traj, eq);

    double worst = 0.0;
    const std::size_t interior = traj.size() - 2;
    for (int p = 0; p < n_points; ++p) {
        const std::size_t k =
            1 + static_cast<std::size_t>((interior - 1) * static_cast<double>(p) /
                                         std::max(1, n_points - 1));
        const double h1 = traj.times[k] - traj.times[k - 1];
        const double h2 = traj.times[k + 1] - traj.times[k];
        const double fd = (h1 * h1 * K[k + 1] + (h2 * h2 - h1 * h1) * K[k] -
                           h2 * h2 * K[k - 1]) /
                          (h1 * h2 * (h1 + h2));
        const double rate = lyapunov_K(cfg, lambda, traj.states[k] - eq).rate;
        const double rel =
            std::fabs(fd - rate) / std::max(std::fabs(rate), 1e-12 * (1.0 + std::fabs(K[k])));
        worst = std::max(worst, rel);
    }
    return worst;
}

bool lyapunov_decreasing(const SystemConfig& cfg, double lambda, const Vec3& z0, double T) {
    const State eq = e2_point(cfg, lambda).point;
    IntegratorSettings s;
    s.t_end = T;
    const Trajectory traj = integrate({FieldKind::EpsilonRevised, cfg}, eq + z0, s);
    const std::vector<double> K = lyapunov_series(cfg, lambda, traj, eq);
    for (std::size_t i = 0; i + 1 < K.size(); ++i)
        if (K[i + 1] - K[i] > 10.0 * s.rtol * (1.0 + std::fabs(K[i]))) return false;
    return true;
}

double max_lyapunov_chain_rule(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        SystemConfig cfg = random_config(rng, true, rng.uniform(-1.0, 1.0));
        const double lambda = rng.uniform(-5.0, -0.05);
        const Vec3 z = rng.uniform_vec3(-1.5, 1.5);
        const LyapunovEval ev = lyapunov_K(cfg, lambda, z);
        const Vec3 grad{cfg.a1 * z.x - lambda * z.x, cfg.a2 * z.y - lambda * z.y,
                        cfg.a3 * z.z - lambda * z.z};
        const Vec3 xdot = rhs_revised(cfg, z + e2_point(cfg, lambda).point);
        return std::fabs(dot(grad, xdot) - ev.rate) / (1.0 + grad.norm() * xdot.norm());
    });
}

bool lyapunov_positive(std::int64_t n, std::uint64_t seed, Exec exec) {
    return max_over_indices(n, exec, [seed](std::int64_t i) {
               RngStream rng(seed, static_cast<std::uint64_t>(i));
               SystemConfig cfg = random_config(rng, true, 0.5);
               const double lambda = rng.uniform(-5.0, -0.05);
               const Vec3 z = rng.uniform_vec3(-2.0, 2.0);
               const double value = lyapunov_K(cfg, lambda, z).value;
               const double bound = 0.5 * (cfg.a1 - lambda) * z.norm2();
               return value >= bound * (1.0 - 1e-12) ? 0.0 : 1.0;
           }) == 0.0;
}

bool curve_norm_monotone(const SystemConfig& cfg, int grid_n) {
    double prev = 0.0;
    for (int j = 0; j < grid_n; ++j) {
        const double t = -0.5 * std::numbers::pi * (1.0 - (j + 0.5) / grid_n);
        const double g = scalar_g(cfg, cfg.a1 - 0.01 + std::tan(t));
        if (j > 0 && !(g > prev)) return false;
        prev = g;
    }
    return true;
}

bool energy_curve_shape(const SystemConfig& cfg, int grid_n) {
    const double h0 = scalar_h(cfg, 0.0);
    double prev = 0.0;
    for (int j = 0; j < grid_n; ++j) {  // (-inf, 0): strictly decreasing
        const double t = -0.5 * std::numbers::pi * (1.0 - (j + 0.5) / grid_n);
        const double h = scalar_h(cfg, std::tan(t));
        if (j > 0 && !(h < prev)) return false;
        if (h < h0) return false;
        prev = h;
    }
    for (int j = 0; j < grid_n; ++j) {  // (0, a1): strictly increasing
        const double lam = 1e-4 + (cfg.a1 - 0.01 - 1e-4) * (j + 0.5) / grid_n;
        const double h = scalar_h(cfg, lam);
        if (j > 0 && !(h > prev)) return false;
        if (h < h0) return false;
        prev = h;
    }
    for (int j = 0; j < grid_n; ++j) {  // (a3, inf): strictly decreasing
        const double t = 0.5 * std::numbers::pi * (j + 0.5) / grid_n;
        const double h = scalar_h(cfg, cfg.a3 + 0.01 + std::tan(t));
        if (j > 0 && !(h < prev)) return false;
        if (h < h0) return false;
        prev = h;
    }
    return true;
}

LevelScan scan_levels(std::int64_t n, std::uint64_t seed) {
    LevelScan out;
    for (std::int64_t i = 0; i < n; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        SystemConfig cfg = random_config(rng, true, 0.0);
        if (i % 3 == 0) cfg.ctrl_b = 0.0;  // exercise a line family as well
        const double k = hamiltonian_minimum(cfg) + 0.01 + 8.0 * rng.uniform();
        const LevelSet set = equilibria_on_level(cfg, k);
        int e2 = 0, e3 = 0, e4 = 0, e5 = 0;
        for (const Equilibrium& e : set.points) {
            switch (e.family) {
                case Family::E2:
                    ++e2;
                    if (std::fabs(scalar_h(cfg, e.parameter) - k) > 1e-9 * (1.0 + std::fabs(k)))
                        out.roundtrip_ok = false;
                    break;
                case Family::E3: ++e3; break;
                case Family::E4: ++e4; break;
                case Family::E5: ++e5; break;
                default: break;
            }
        }
        if (e2 > 6 || e3 > 2 || e4 > 2 || e5 > 2) out.cardinality_ok = false;
        if (e2 < 1) out.curve_always_met = false;
    }
    return out;
}

std::string classify_probe_agreement(const SystemConfig& cfg, double lambda,
                                     bool expect_stable, const ProbeSettings& probe) {
    const Equilibrium eq = e2_point(cfg, lambda);
    const StabilityVerdict verdict = classify(cfg, eq);
    const ProbeOutcome outcome = probe_stability(cfg, eq, probe);
    std::ostringstream oss;
    const StabilityKind want =
        expect_stable ? StabilityKind::LyapunovStable : StabilityKind::Unstable;
    const ProbeOutcome want_probe =
        expect_stable ? ProbeOutcome::StaysNear : ProbeOutcome::Escapes;
    if (verdict.kind != want)
        oss << "lambda=" << lambda << ": classify said " << stability_kind_name(verdict.kind)
            << " (" << provenance_name(verdict.provenance) << "); ";
    if (outcome != want_probe)
        oss << "lambda=" << lambda << ": probe said " << probe_outcome_name(outcome) << "; ";
    return oss.str();
}

}  // namespace rrb::checks
