#include "rrb/stability.hpp"

#include <algorithm>
#include <cmath>

#include "rrb/model.hpp"
#include "rrb/rng.hpp"

namespace rrb {
namespace {

bool probe_delta_valid(double delta) {
    return delta == 0.0 || (delta >= 1e-6 && delta <= 1e-2);
}

}  // namespace

std::string stability_kind_name(StabilityKind k) {
    switch (k) {
        case StabilityKind::LyapunovStable: return "LyapunovStable";
        case StabilityKind::Unstable: return "Unstable";
        case StabilityKind::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Theorem61: return "Theorem61";
        case Provenance::Theorem62: return "Theorem62";
        case Provenance::Theorem63Certificate: return "Theorem63Certificate";
        case Provenance::Theorem64: return "Theorem64";
        case Provenance::Theorem65: return "Theorem65";
        case Provenance::EmpiricalOnly: return "EmpiricalOnly";
        case Provenance::NotCovered: return "NotCovered";
    }
    return "?";
}

std::string probe_outcome_name(ProbeOutcome o) {
    switch (o) {
        case ProbeOutcome::StaysNear: return "StaysNear";
        case ProbeOutcome::Escapes: return "Escapes";
        case ProbeOutcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

StabilityVerdict classify(const SystemConfig& cfg, const Equilibrium& eq) {
    cfg.validate();
    if (!(cfg.epsilon > 0.0))
        throw EpsilonNotPositive("classify covers epsilon > 0 only; use the empirical probe");

    switch (eq.family) {
        case Family::E1:
            return {StabilityKind::LyapunovStable, Provenance::Theorem61,
                    "origin: |x(t)| never exceeds |x0|"};
        case Family::E2: {
            const double lambda = eq.parameter;
            if (lambda == 0.0)
                return {StabilityKind::LyapunovStable, Provenance::Theorem62,
                        "absolute minimum of H"};
            if (lambda < 0.0)
                return {StabilityKind::LyapunovStable, Provenance::Theorem65,
                        "decreasing Lyapunov quadratic form"};
            if (lambda < cfg.a1)
                return {StabilityKind::Unstable, Provenance::Theorem64,
                        "same-level equilibrium of smaller norm exists"};
            break;
        }
        default:
            break;
    }
    if (auto witness = instability_certificate(cfg, eq))
        return {StabilityKind::Unstable, Provenance::Theorem63Certificate,
                "witness " + family_name(witness->family) + " with |y| = " +
                    std::to_string(witness->point.norm())};
    return {StabilityKind::Undetermined, Provenance::NotCovered,
            "no theorem applies and no same-level witness was found"};
}

std::optional<Equilibrium> instability_certificate(const SystemConfig& cfg,
                                                   const Equilibrium& eq) {
    const double k = hamiltonian(cfg, eq.point);
    const double norm0 = eq.point.norm();
    LevelSet level = equilibria_on_level(cfg, k);
    std::optional<Equilibrium> best;
    for (const Equilibrium& y : level.points) {
        if (!(y.point.norm() < norm0 - 1e-9)) continue;
        if (!best || y.point.norm() < best->point.norm()) best = y;
    }
    return best;
}

LyapunovEval lyapunov_K(const SystemConfig& cfg, double lambda, const Vec3& z) {
    if (!(lambda < 0.0)) throw LambdaNotNegative("lyapunov_K requires lambda < 0");
    const double value =
        0.5 * (cfg.a1 * z.x * z.x + cfg.a2 * z.y * z.y + cfg.a3 * z.z * z.z) -
        0.5 * lambda * z.norm2();
    const State x = z + e2_point(cfg, lambda).point;
    const double rate = cfg.epsilon * lambda * cross(x, m_vector(cfg, x)).norm2();
    return {value, rate};
}

ProbeOutcome probe_stability(const SystemConfig& cfg, const Equilibrium& eq,
                             const ProbeSettings& settings) {
    cfg.validate();
    if (!probe_delta_valid(settings.delta))
        throw InvariantViolation("probe delta must be 0 or within [1e-6, 1e-2]");
    if (settings.n_samples < 1)
        throw InvariantViolation("probe requires n_samples >= 1");
    if (settings.delta == 0.0) return ProbeOutcome::StaysNear;

    const double stay_bound = settings.stay_factor * settings.delta;
    const double escape_bound = settings.escape_factor * (1.0 + eq.point.norm());
    const double early_stop = std::max(stay_bound, escape_bound) * 1.5;

    IntegratorSettings integ = settings.integ;
    integ.t_end = settings.horizon;
    integ.direction = Direction::Forward;
    const VectorField field{FieldKind::EpsilonRevised, cfg};

    const std::vector<double> sup = map_indexed<double>(
        settings.n_samples, settings.exec, [&](std::int64_t i) {
            RngStream rng(settings.seed, static_cast<std::uint64_t>(i));
            const State x0 = eq.point + settings.delta * rng.unit_vec3();
            // Walk the adaptive loop manually so a clearly escaped sample can
            // stop early; the cutoff is deterministic per sample.
            double worst = settings.delta;
            State x = x0;
            double t = 0.0;
            IntegratorSettings piece = integ;
            const double chunk = std::min(settings.horizon, 5.0);
            while (t < settings.horizon) {
                piece.t_end = std::min(chunk, settings.horizon - t);
                const Trajectory traj = integrate(field, x, piece);
                for (const State& s : traj.states)
                    worst = std::max(worst, (s - eq.point).norm());
                x = traj.back();
                t += piece.t_end;
                if (worst > early_stop) break;
                if (traj.status != IntegrationStatus::Complete) break;
            }
            return worst;
        });

    bool any_escape = false;
    bool all_stay = true;
    for (double s : sup) {
        if (s > escape_bound) any_escape = true;
        if (s > stay_bound) all_stay = false;
    }
    if (any_escape) return ProbeOutcome::Escapes;
    if (all_stay) return ProbeOutcome::StaysNear;
    return ProbeOutcome::Inconclusive;
}

StabilityVerdict classify_empirical(const SystemConfig& cfg, const Equilibrium& eq,
                                    const ProbeSettings& settings) {
    switch (probe_stability(cfg, eq, settings)) {
        case ProbeOutcome::StaysNear:
            return {StabilityKind::LyapunovStable, Provenance::EmpiricalOnly,
                    "all probe trajectories stayed near the point"};
        case ProbeOutcome::Escapes:
            return {StabilityKind::Unstable, Provenance::EmpiricalOnly,
                    "a probe trajectory left the neighbourhood"};
        case ProbeOutcome::Inconclusive:
            break;
    }
    return {StabilityKind::Undetermined, Provenance::EmpiricalOnly,
            "probe neither stayed within nor escaped the thresholds"};
}

LimitReport limit_report(const SystemConfig& cfg, const State& x0,
                         const LimitSettings& settings) {
    cfg.validate();
    if (cfg.epsilon == 0.0)
        throw InvariantViolation("limit_report requires epsilon != 0");

    const VectorField field{FieldKind::EpsilonRevised, cfg};
    IntegratorSettings fwd = settings.integ;
    fwd.t_end = settings.horizon;
    fwd.direction = Direction::Forward;
    IntegratorSettings bwd = fwd;
    bwd.direction = Direction::Backward;

    Trajectory tf, tb;
    // The two directions are independent; run them as a two-cell batch.
    for_each_index(2, settings.exec, [&](std::int64_t i) {
        if (i == 0)
            tf = integrate(field, x0, fwd);
        else
            tb = integrate(field, x0, bwd);
    });
    if (tf.status != IntegrationStatus::Complete || tb.status != IntegrationStatus::Complete)
        throw Error("limit_report: integration ended before the horizon");

    const auto monotone = [&](const Trajectory& traj, double sign) {
        for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
            const double jitter = 10.0 * settings.integ.rtol * (1.0 + std::fabs(traj.C_series[i]));
            if (sign * (traj.C_series[i + 1] - traj.C_series[i]) > jitter) return false;
        }
        return true;
    };
    // Forward time: C drifts against the sign of epsilon; backward the reverse.
    const double fwd_sign = cfg.epsilon > 0.0 ? 1.0 : -1.0;

    LimitReport report;
    report.x_m = tf.back();
    report.x_M = tb.back();
    report.d_forward = distance_to_E(cfg, report.x_m);
    report.d_backward = distance_to_E(cfg, report.x_M);
    report.norms_monotone = monotone(tf, fwd_sign) && monotone(tb, -fwd_sign);
    const double nm = report.x_m.norm2(), nM = report.x_M.norm2();
    report.norm_ordering_ok = cfg.epsilon > 0.0 ? nM > nm - 1e-6 : nm > nM - 1e-6;
    return report;
}

}  // namespace rrb
