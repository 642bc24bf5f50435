#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rrb/dynamics.hpp"
#include "rrb/errors.hpp"
#include "rrb/vec3.hpp"

namespace rrb {

enum class Direction { Forward, Backward };

struct IntegratorSettings {
    double rtol{1e-10};
    double atol{1e-12};
    double h_init{1e-3};
    double h_max{1.0};
    double t_end{100.0};
    Direction direction{Direction::Forward};
    std::int64_t max_steps{10'000'000};

    /// Throws InvariantViolation unless rtol in [1e-13, 1e-2], atol > 0,
    /// 0 < h_init <= h_max, t_end >= 0 and max_steps >= 1.
    void validate() const;

    bool operator==(const IntegratorSettings&) const = default;
};

enum class IntegrationStatus { Complete, StepSizeUnderflow, MaxStepsExceeded };

struct StepStats {
    std::int64_t accepted{0};
    std::int64_t rejected{0};
};

/// Accepted-step samples of one run. The integration clock always increases
/// 0 -> t_end; a Backward run integrates the negated field on that clock.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> H_series;
    std::vector<double> C_series;
    std::vector<double> diss_residual;  // |x . rhs_revised + eps |x cross m|^2| at each sample
    StepStats step_stats;
    IntegrationStatus status{IntegrationStatus::Complete};

    std::size_t size() const { return times.size(); }
    const State& back() const { return states.back(); }
};

/// Bare sampled run for an arbitrary autonomous right-hand side.
struct RawTrajectory {
    std::vector<double> times;
    std::vector<State> states;
    StepStats step_stats;
    IntegrationStatus status{IntegrationStatus::Complete};
};

struct StepResult {
    State x_new;
    Vec3 error_estimate;  // difference of the order-5 and order-4 solutions
};

/// One step of the embedded Dormand-Prince 5(4) pair. Throws StepFailure if
/// any stage evaluates to a non-finite value.
StepResult rk_step(const VectorField& field, const State& x, double t, double h);

/// Adaptive integration of the selected field. Error control accepts a step
/// when the embedded estimate passes max(atol, rtol |x|) componentwise; the
/// trajectory records every accepted step together with H, C and the
/// pointwise dissipation residual. Underflow of the step size or exhaustion
/// of max_steps is reported in `status` with the partial trajectory kept.
Trajectory integrate(const VectorField& field, const State& x0,
                     const IntegratorSettings& settings);

/// Same core loop for a caller-supplied autonomous rhs; `settings.direction`
/// is ignored (negate the callable instead). No invariant monitoring.
RawTrajectory integrate_raw(const std::function<Vec3(const State&)>& rhs,
                            const State& x0, const IntegratorSettings& settings);

/// Circumradius of the energy ellipsoid H = h0 seen from the origin; every
/// solution with H(x0) = h0 satisfies |x(t)| <= that radius.
double level_set_radius(const SystemConfig& cfg, double h0);

}  // namespace rrb
