#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrb/batch.hpp"
#include "rrb/config.hpp"
#include "rrb/integrate.hpp"
#include "rrb/stability.hpp"

namespace rrb::checks {

/// Random-sample property scans. Each returns the worst residual divided by
/// its scale factor, so callers compare directly against the tolerance.
/// Sampling is counter-based on (seed, index): deterministic under both
/// execution policies.

/// u . [w x (u x w)] = |u x w|^2, scale 1 + |u|^2 |w|^2.
double max_triple_product_residual(std::int64_t n, std::uint64_t seed, Exec exec);

/// drift_v(x) = (x cross m) cross m, scale 1 + |x||m|^2.
double max_drift_identity_residual(std::int64_t n, std::uint64_t seed, Exec exec);

/// |Pi(x) x|, scale |x|^2 (exact zero expected).
double max_casimir_annihilation(std::int64_t n, std::uint64_t seed, Exec exec);

/// |g(x) m(x)|, scale 1 + |m|^3.
double max_metric_annihilation(std::int64_t n, std::uint64_t seed, Exec exec);

/// Quadratic-plus-linear H vs completed-square H, scale 1 + |H|.
double max_hamiltonian_form_residual(std::int64_t n, std::uint64_t seed, Exec exec);

/// |m . rhs_revised|, scale 1 + |m|^2 |x| (1 + |eps||m|).
double max_energy_orthogonality(std::int64_t n, std::uint64_t seed, Exec exec);

/// |x . rhs_revised + eps |x cross m|^2|, same scale as above.
double max_dissipation_identity(std::int64_t n, std::uint64_t seed, Exec exec);

/// Generic metric builder annihilation at the given dimension, scale 1 + |grad|^3.
double max_generic_annihilation(int dimension, std::int64_t n, std::uint64_t seed, Exec exec);

/// Exact-structure scans (no tolerance): skewness of the Poisson matrix and
/// the epsilon = 0 coincidence of the two right-hand sides.
bool poisson_skew_exact(std::int64_t n, std::uint64_t seed, Exec exec);
bool revised_matches_hp_bitwise(std::int64_t n, std::uint64_t seed, Exec exec);

/// Generic builder at n = 3 reproduces the concrete metric entries bit for bit.
bool generic_matches_metric_bitwise(std::int64_t n, std::uint64_t seed);

/// Equilibrium equivalence of the two systems: for random states and family
/// points, |rhs_hp| <= tol iff |rhs_revised| <= tol (1 + |eps||m|).
bool equilibrium_equivalence(std::int64_t n, std::uint64_t seed,
                             const std::vector<double>& epsilons, Exec exec);

/// Trajectory diagnostics for the invariant-monitoring checks.
struct RunDiagnostics {
    double max_H_drift;             // max_t |H(x(t)) - H(x0)|
    bool C_monotone;                // consistent with the sign of eps and direction
    double max_diss_residual_scaled;  // residual / (1 + |x|^2 |m|^2)
    double max_radius;              // max_t |x(t)|
    double bound_radius;            // level_set_radius(H(x0))
    bool norm_never_grows;          // |x(t)| <= |x0| (1 + jitter), forward eps > 0
};

RunDiagnostics diagnose_run(const SystemConfig& cfg, const Trajectory& traj,
                            Direction direction, double rtol);

/// Forward-then-backward return error |x_back(T) - x0| after horizon T.
double time_reversal_error(const SystemConfig& cfg, const State& x0, double T,
                           const IntegratorSettings& base);

/// Global order probe: fixed-step error at h over a segment divided by the
/// error at h/2 (expected near 2^5 for the order-5 solution).
double step_halving_ratio(const SystemConfig& cfg, const State& x0, double T, double h);

/// Worst d(x(T), E) over n random starts with |x0| <= radius, both time
/// directions (two entries per sample in the returned worst-case).
double max_limit_distance(const SystemConfig& cfg, std::int64_t n, double radius,
                          double T, std::uint64_t seed, Exec exec);

/// Worst relative mismatch between the finite-difference derivative of the
/// Lyapunov form along a trajectory and eps lambda |x cross m|^2, sampled at
/// n_points interior accepted steps (tiny forced step size).
double max_lyapunov_rate_mismatch(const SystemConfig& cfg, double lambda, const Vec3& z0,
                                  double T, int n_points);

/// K strictly decreases between accepted steps (up to 10 rtol jitter) along
/// a perturbed trajectory with lambda < 0, eps > 0.
bool lyapunov_decreasing(const SystemConfig& cfg, double lambda, const Vec3& z0, double T);

/// Positive-definiteness sample of K: value >= (a1 - lambda)/2 |z|^2 (1 - 1e-12).
bool lyapunov_positive(std::int64_t n, std::uint64_t seed, Exec exec);

/// Pointwise chain rule: grad K(z) . rhs_revised(z + e2(lambda)) equals the
/// reported rate eps lambda |x cross m|^2, scale 1 + |grad K||rhs|.
double max_lyapunov_chain_rule(std::int64_t n, std::uint64_t seed, Exec exec);

/// Theorem-vs-probe agreement for one E2 parameter; empties.empty() on
/// success, otherwise a short description of the disagreement.
std::string classify_probe_agreement(const SystemConfig& cfg, double lambda,
                                     bool expect_stable, const ProbeSettings& probe);

/// |e2(lambda)|^2 strictly increasing along an atan-spaced grid on
/// (-inf, a1 - 0.01].
bool curve_norm_monotone(const SystemConfig& cfg, int grid_n);

/// The three-piece shape of H along the curve: strictly decreasing on
/// (-inf, 0), increasing on (0, a1), decreasing on (a3, inf), with the
/// value at 0 below every grid sample.
bool energy_curve_shape(const SystemConfig& cfg, int grid_n);

/// Level-set enumeration over random (cfg, k): at most 6 curve points and 2
/// per line, and every returned curve root reproduces the level.
struct LevelScan {
    bool cardinality_ok{true};
    bool roundtrip_ok{true};
    bool curve_always_met{true};  // every sampled level meets the curve family
};
LevelScan scan_levels(std::int64_t n, std::uint64_t seed);

}  // namespace rrb::checks
