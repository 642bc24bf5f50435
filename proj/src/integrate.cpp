#include "rrb/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rrb/model.hpp"

namespace rrb {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                 A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
// b - bhat, the 5th-minus-4th order weights driving the error estimate.
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

template <typename RHS>
bool dp54_stage(RHS&& f, const State& x, double h, const Vec3& k1,
                State& x5, Vec3& err, Vec3& k7) {
    const Vec3 k2 = f(x + h * (A21 * k1));
    const Vec3 k3 = f(x + h * (A31 * k1 + A32 * k2));
    const Vec3 k4 = f(x + h * (A41 * k1 + A42 * k2 + A43 * k3));
    const Vec3 k5 = f(x + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
    const Vec3 k6 = f(x + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
    x5 = x + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    k7 = f(x5);
    err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
    return x5.is_finite() && err.is_finite() && k2.is_finite() && k3.is_finite() &&
           k4.is_finite() && k5.is_finite() && k6.is_finite() && k7.is_finite();
}

double scaled_error_norm(const Vec3& err, const State& x, const State& x_new,
                         double rtol, double atol) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double sc = std::max(atol, rtol * std::max(std::fabs(x[i]), std::fabs(x_new[i])));
        const double r = err[i] / sc;
        acc += r * r;
    }
    return std::sqrt(acc / 3.0);
}

template <typename RHS>
RawTrajectory run_adaptive(RHS&& rhs, const State& x0, const IntegratorSettings& s) {
    RawTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    if (s.t_end == 0.0) return traj;

    const double h_floor = 1e-14 * s.t_end;
    double t = 0.0;
    double h = std::min({s.h_init, s.h_max, s.t_end});
    Vec3 k1 = rhs(x0);
    State x = x0;
    bool k1_valid = k1.is_finite();

    while (t < s.t_end) {
        if (traj.step_stats.accepted >= s.max_steps) {
            traj.status = IntegrationStatus::MaxStepsExceeded;
            return traj;
        }
        // Stretch the final step slightly rather than leaving a sliver step
        // whose length is pure rounding residue.
        bool last = false;
        if (t + 1.01 * h >= s.t_end) {
            h = s.t_end - t;
            last = true;
        }

        State x_new;
        Vec3 err, k7;
        const bool finite = k1_valid && dp54_stage(rhs, x, h, k1, x_new, err, k7);
        const double err_norm =
            finite ? scaled_error_norm(err, x, x_new, s.rtol, s.atol)
                   : std::numeric_limits<double>::infinity();

        if (err_norm <= 1.0) {
            t = last ? s.t_end : t + h;
            x = x_new;
            k1 = k7;
            k1_valid = true;
            ++traj.step_stats.accepted;
            traj.times.push_back(t);
            traj.states.push_back(x);
        } else {
            ++traj.step_stats.rejected;
            if (!k1_valid) {
                k1 = rhs(x);
                k1_valid = k1.is_finite();
            }
        }

        const double factor =
            finite ? std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0) : 0.5;
        h = std::min(h * factor, s.h_max);
        if (t < s.t_end && h < h_floor) {
            traj.status = IntegrationStatus::StepSizeUnderflow;
            return traj;
        }
    }
    return traj;
}

}  // namespace

void IntegratorSettings::validate() const {
    if (!(rtol >= 1e-13 && rtol <= 1e-2))
        throw InvariantViolation("IntegratorSettings requires rtol in [1e-13, 1e-2]");
    if (!(atol > 0.0)) throw InvariantViolation("IntegratorSettings requires atol > 0");
    if (!(h_init > 0.0 && h_init <= h_max))
        throw InvariantViolation("IntegratorSettings requires 0 < h_init <= h_max");
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        throw InvariantViolation("IntegratorSettings requires finite t_end >= 0");
    if (max_steps < 1) throw InvariantViolation("IntegratorSettings requires max_steps >= 1");
}

StepResult rk_step(const VectorField& field, const State& x, double /*t*/, double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw InvariantViolation("rk_step requires finite h > 0");
    const Vec3 k1 = field(x);
    State x_new;
    Vec3 err, k7;
    if (!k1.is_finite() || !dp54_stage(field, x, h, k1, x_new, err, k7))
        throw StepFailure("rk_step: non-finite stage value");
    return {x_new, err};
}

RawTrajectory integrate_raw(const std::function<Vec3(const State&)>& rhs,
                            const State& x0, const IntegratorSettings& settings) {
    settings.validate();
    if (!x0.is_finite()) throw InvariantViolation("integrate: non-finite initial state");
    return run_adaptive(rhs, x0, settings);
}

Trajectory integrate(const VectorField& field, const State& x0,
                     const IntegratorSettings& settings) {
    settings.validate();
    if (!x0.is_finite()) throw InvariantViolation("integrate: non-finite initial state");

    RawTrajectory raw =
        settings.direction == Direction::Forward
            ? run_adaptive([&field](const State& x) { return field(x); }, x0, settings)
            : run_adaptive([&field](const State& x) { return -field(x); }, x0, settings);

    Trajectory traj;
    traj.times = std::move(raw.times);
    traj.states = std::move(raw.states);
    traj.step_stats = raw.step_stats;
    traj.status = raw.status;

    const SystemConfig& cfg = field.cfg();
    const double eps = field.kind() == FieldKind::HamiltonPoisson ? 0.0 : cfg.epsilon;
    traj.H_series.reserve(traj.size());
    traj.C_series.reserve(traj.size());
    traj.diss_residual.reserve(traj.size());
    for (const State& x : traj.states) {
        traj.H_series.push_back(hamiltonian(cfg, x));
        traj.C_series.push_back(casimir(x));
        const Vec3 xm = cross(x, m_vector(cfg, x));
        const Vec3 xdot = field.kind() == FieldKind::HamiltonPoisson ? xm
                                                                   : rhs_revised(cfg, x);
        traj.diss_residual.push_back(std::fabs(dot(x, xdot) + eps * xm.norm2()));
    }
    return traj;
}

double level_set_radius(const SystemConfig& cfg, double h0) {
    const double above_min = std::max(0.0, h0 - hamiltonian_minimum(cfg));
    return hamiltonian_min_point(cfg).norm() + std::sqrt(2.0 * above_min / cfg.a1);
}

}  // namespace rrb
