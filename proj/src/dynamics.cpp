#include "rrb/dynamics.hpp"

#include "rrb/model.hpp"

namespace rrb {

Vec3 rhs_hp(const SystemConfig& cfg, const State& x) {
    return cross(x, m_vector(cfg, x));
}

Vec3 rhs_revised(const SystemConfig& cfg, const State& x) {
    const Vec3 m = m_vector(cfg, x);
    const Vec3 xm = cross(x, m);
    if (cfg.epsilon == 0.0) return xm;  // exact coincidence with the conservative system
    return xm + cfg.epsilon * cross(xm, m);
}

IntegralRates integral_rates(const SystemConfig& cfg, const State& x) {
    const Vec3 xdot = rhs_revised(cfg, x);
    return {dot(m_vector(cfg, x), xdot), dot(x, xdot)};
}

Matrix3 jacobian(const VectorField& field, const State& x) {
    const double h = 1e-6 * (1.0 + x.norm());
    std::array<std::array<double, 3>, 3> rows{};
    for (int j = 0; j < 3; ++j) {
        State xp = x;
        State xm = x;
        xp[j] += h;
        xm[j] -= h;
        const Vec3 fp = field(xp);
        const Vec3 fm = field(xm);
        for (int i = 0; i < 3; ++i) rows[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    return Matrix3::general(rows);
}

}  // namespace rrb
