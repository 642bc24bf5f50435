#pragma once

#include "rrb/config.hpp"

namespace rrbtest {

// (a1,a2,a3) = (1,2,3) with unit controls: the worked configuration used
// throughout the tests.
inline rrb::SystemConfig std_cfg(double eps = 0.0) {
    return {1.0, 2.0, 3.0, 1.0, 1.0, 1.0, eps};
}

// Same inertia, no controls (free rigid body).
inline rrb::SystemConfig free_cfg(double eps = 0.0) {
    return {1.0, 2.0, 3.0, 0.0, 0.0, 0.0, eps};
}

}  // namespace rrbtest
