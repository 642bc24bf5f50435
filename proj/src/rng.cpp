#include "rrb/rng.hpp"

#include <cmath>
#include <numbers>

namespace rrb {

double RngStream::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 kept away from 0 so the log is finite.
    double u1 = uniform();
    if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Vec3 RngStream::unit_vec3() {
    while (true) {
        const Vec3 v{gaussian(), gaussian(), gaussian()};
        const double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

}  // namespace rrb
