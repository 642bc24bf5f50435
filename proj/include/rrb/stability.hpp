#pragma once

#include <optional>
#include <string>

#include "rrb/batch.hpp"
#include "rrb/config.hpp"
#include "rrb/equilibria.hpp"
#include "rrb/integrate.hpp"

namespace rrb {

enum class StabilityKind { LyapunovStable, Unstable, Undetermined };

enum class Provenance {
    Theorem61,
    Theorem62,
    Theorem63Certificate,
    Theorem64,
    Theorem65,
    EmpiricalOnly,
    NotCovered
};

std::string stability_kind_name(StabilityKind k);
std::string provenance_name(Provenance p);

struct StabilityVerdict {
    StabilityKind kind{StabilityKind::Undetermined};
    Provenance provenance{Provenance::NotCovered};
    std::string notes;
};

/// Theorem-backed classification for epsilon > 0 (throws EpsilonNotPositive
/// otherwise):
///   E1                 -> stable
///   E2, lambda = 0     -> stable (energy minimum)
///   E2, lambda < 0     -> stable (Lyapunov quadratic form)
///   E2, 0 < lambda < a1 -> unstable
/// Everything else is Undetermined unless the same-level witness search
/// certifies instability.
StabilityVerdict classify(const SystemConfig& cfg, const Equilibrium& eq);

/// Searches the equilibria on the level H = H(eq) for a strictly
/// smaller-norm witness (norm gap > 1e-9); returns the smallest-norm one.
std::optional<Equilibrium> instability_certificate(const SystemConfig& cfg,
                                                   const Equilibrium& eq);

struct LyapunovEval {
    double value;  // K(z) = 1/2 z . diag(a1,a2,a3) z - lambda/2 |z|^2
    double rate;   // eps lambda |x cross m(x)|^2 at x = z + e2(lambda)
};

/// Lyapunov quadratic form for an E2 equilibrium with lambda < 0 (throws
/// LambdaNotNegative otherwise) and its decay rate along the revised flow.
LyapunovEval lyapunov_K(const SystemConfig& cfg, double lambda, const Vec3& z);

enum class ProbeOutcome { StaysNear, Escapes, Inconclusive };

std::string probe_outcome_name(ProbeOutcome o);

struct ProbeSettings {
    double delta{1e-3};           // perturbation magnitude; 0 or within [1e-6, 1e-2]
    double horizon{200.0};
    int n_samples{20};
    std::uint64_t seed{0};
    double stay_factor{50.0};     // StaysNear bound: stay_factor * delta
    double escape_factor{0.05};   // Escapes bound: escape_factor * (1 + |eq|)
    IntegratorSettings integ{.rtol = 1e-8, .atol = 1e-10, .h_init = 1e-3,
                             .h_max = 0.5, .t_end = 0.0, .max_steps = 4'000'000};
    Exec exec{Exec::Parallel};
};

/// Integrates n_samples trajectories from random perturbations of magnitude
/// delta around eq (per-sample counter-based RNG) and reduces the verdict in
/// sample order: Escapes if any excursion exceeds the escape radius,
/// StaysNear if all stay within stay_factor * delta, Inconclusive otherwise.
ProbeOutcome probe_stability(const SystemConfig& cfg, const Equilibrium& eq,
                             const ProbeSettings& settings);

/// Probe outcome wrapped as a verdict with EmpiricalOnly provenance; the
/// fallback when the theorem table does not apply (epsilon <= 0 included).
StabilityVerdict classify_empirical(const SystemConfig& cfg, const Equilibrium& eq,
                                    const ProbeSettings& settings);

struct LimitSettings {
    double horizon{500.0};
    IntegratorSettings integ{};  // t_end replaced by horizon
    Exec exec{Exec::Parallel};
};

/// Forward/backward limit estimates of one solution: final states after the
/// horizon in both time directions, their distances to the equilibrium set,
/// monotonicity of |x(t)|^2 per the dissipation law, and the norm ordering
/// |x_M|^2 vs |x_m|^2 expected from the sign of epsilon.
struct LimitReport {
    State x_m;          // forward-time limit estimate
    State x_M;          // backward-time limit estimate
    double d_forward;
    double d_backward;
    bool norms_monotone;
    bool norm_ordering_ok;
};

LimitReport limit_report(const SystemConfig& cfg, const State& x0,
                         const LimitSettings& settings);

}  // namespace rrb
