#include "rrb/model.hpp"

#include <cmath>

namespace rrb {

double hamiltonian(const SystemConfig& cfg, const State& x) {
    if (!x.is_finite()) throw InvariantViolation("hamiltonian: non-finite state");
    return 0.5 * (cfg.a1 * x.x * x.x + cfg.a2 * x.y * x.y + cfg.a3 * x.z * x.z) +
           cfg.ctrl_a * x.x + cfg.ctrl_b * x.y + cfg.ctrl_c * x.z;
}

double hamiltonian_centered(const SystemConfig& cfg, const State& x) {
    const double u1 = x.x + cfg.ctrl_a / cfg.a1;
    const double u2 = x.y + cfg.ctrl_b / cfg.a2;
    const double u3 = x.z + cfg.ctrl_c / cfg.a3;
    return 0.5 * (cfg.a1 * u1 * u1 + cfg.a2 * u2 * u2 + cfg.a3 * u3 * u3) +
           hamiltonian_minimum(cfg);
}

double hamiltonian_minimum(const SystemConfig& cfg) {
    return -0.5 * (cfg.ctrl_a * cfg.ctrl_a / cfg.a1 +
                   cfg.ctrl_b * cfg.ctrl_b / cfg.a2 +
                   cfg.ctrl_c * cfg.ctrl_c / cfg.a3);
}

State hamiltonian_min_point(const SystemConfig& cfg) {
    return {-cfg.ctrl_a / cfg.a1, -cfg.ctrl_b / cfg.a2, -cfg.ctrl_c / cfg.a3};
}

double casimir(const State& x) {
    if (!x.is_finite()) throw InvariantViolation("casimir: non-finite state");
    return 0.5 * x.norm2();
}

Vec3 m_vector(const SystemConfig& cfg, const State& x) {
    return {cfg.a1 * x.x + cfg.ctrl_a,
            cfg.a2 * x.y + cfg.ctrl_b,
            cfg.a3 * x.z + cfg.ctrl_c};
}

Matrix3 poisson_matrix(const State& x) {
    if (!x.is_finite()) throw InvariantViolation("poisson_matrix: non-finite state");
    return Matrix3::skew(-x.z, x.y, -x.x);
}

GenericMetric build_metric_generic(std::span<const double> grad_h1) {
    const int n = static_cast<int>(grad_h1.size());
    GenericMetric g(n);  // throws for n outside [2, 16]
    double norm2 = 0.0;
    for (double v : grad_h1) {
        if (!std::isfinite(v))
            throw InvariantViolation("build_metric_generic: non-finite gradient");
        norm2 += v * v;
    }
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            const double gk = grad_h1[static_cast<std::size_t>(k)];
            diag += gk * gk;
        }
        g.at(i, i) = -diag;
        for (int j = i + 1; j < n; ++j) {
            const double off =
                grad_h1[static_cast<std::size_t>(i)] * grad_h1[static_cast<std::size_t>(j)];
            g.at(i, j) = off;
            g.at(j, i) = off;
        }
    }
    // construction-time invariant: the gradient lies in the kernel
    const double bound = 1e-12 * (1.0 + norm2 * std::sqrt(norm2));
    for (double p : g.apply(grad_h1))
        if (!(std::fabs(p) <= bound))
            throw InvariantViolation("build_metric_generic: gradient not annihilated");
    return g;
}

Matrix3 metric_matrix(const SystemConfig& cfg, const State& x) {
    const Vec3 m = m_vector(cfg, x);
    const double grad[3] = {m.x, m.y, m.z};
    const GenericMetric g = build_metric_generic(grad);
    return Matrix3::symmetric(g.at(0, 0), g.at(1, 1), g.at(2, 2),
                              g.at(0, 1), g.at(0, 2), g.at(1, 2));
}

Vec3 drift_v(const SystemConfig& cfg, const State& x) {
    return metric_matrix(cfg, x) * x;  // grad C(x) = x
}

}  // namespace rrb
