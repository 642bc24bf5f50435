#include "rrb/config.hpp"

#include <cmath>

namespace rrb {

SystemConfig SystemConfig::from_inverse_moments(double a1, double a2, double a3,
                                                double ctrl_a, double ctrl_b, double ctrl_c,
                                                double epsilon) {
    SystemConfig cfg{a1, a2, a3, ctrl_a, ctrl_b, ctrl_c, epsilon};
    cfg.validate();
    return cfg;
}

SystemConfig SystemConfig::from_moments(double I1, double I2, double I3,
                                        double ctrl_a, double ctrl_b, double ctrl_c,
                                        double epsilon) {
    if (!(I1 > I2 && I2 > I3 && I3 > 0.0))
        throw InvariantViolation("SystemConfig requires I1 > I2 > I3 > 0");
    return from_inverse_moments(1.0 / I1, 1.0 / I2, 1.0 / I3,
                                ctrl_a, ctrl_b, ctrl_c, epsilon);
}

void SystemConfig::validate() const {
    const double fields[] = {a1, a2, a3, ctrl_a, ctrl_b, ctrl_c, epsilon};
    for (double f : fields)
        if (!std::isfinite(f)) throw InvariantViolation("SystemConfig requires finite fields");
    if (!(0.0 < a1 && a1 < a2 && a2 < a3))
        throw InvariantViolation("SystemConfig requires 0 < a1 < a2 < a3");
}

}  // namespace rrb
