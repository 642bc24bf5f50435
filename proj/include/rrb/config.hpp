#pragma once

#include <array>

#include "rrb/errors.hpp"
#include "rrb/vec3.hpp"

namespace rrb {

/// Physical and control parameters of the controlled rigid body.
///
/// a1 < a2 < a3 are the inverses of the principal moments of inertia
/// I1 > I2 > I3 > 0; (ctrl_a, ctrl_b, ctrl_c) are the linear feedback gains
/// entering the Hamiltonian; epsilon scales the dissipative revision term.
struct SystemConfig {
    double a1{1.0};
    double a2{2.0};
    double a3{3.0};
    double ctrl_a{0.0};
    double ctrl_b{0.0};
    double ctrl_c{0.0};
    double epsilon{0.0};

    static SystemConfig from_inverse_moments(double a1, double a2, double a3,
                                             double ctrl_a, double ctrl_b, double ctrl_c,
                                             double epsilon);

    /// Builds from principal moments of inertia I1 > I2 > I3 > 0 via a_i = 1/I_i.
    static SystemConfig from_moments(double I1, double I2, double I3,
                                     double ctrl_a, double ctrl_b, double ctrl_c,
                                     double epsilon);

    std::array<double, 3> inverse_moments() const { return {a1, a2, a3}; }
    std::array<double, 3> moments() const { return {1.0 / a1, 1.0 / a2, 1.0 / a3}; }
    Vec3 controls() const { return {ctrl_a, ctrl_b, ctrl_c}; }
    bool controls_zero() const { return ctrl_a == 0.0 && ctrl_b == 0.0 && ctrl_c == 0.0; }

    /// Throws InvariantViolation unless 0 < a1 < a2 < a3 and all fields are finite.
    void validate() const;

    bool operator==(const SystemConfig&) const = default;
};

}  // namespace rrb
