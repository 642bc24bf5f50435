#pragma once

#include <cstdint>

#include "rrb/vec3.hpp"

namespace rrb {

/// Counter-based deterministic generator (splitmix64 core). A stream is
/// keyed by (seed, index), so per-sample streams are reproducible no matter
/// how samples are scheduled across threads, and the sequences are identical
/// on every platform (no standard-library distributions involved).
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t index = 0)
        : state_{mix(seed ^ mix(index + 0x9E3779B97F4A7C15ull))} {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (deterministic, branch-stable).
    double gaussian();

    Vec3 uniform_vec3(double lo, double hi) {
        const double a = uniform(lo, hi);
        const double b = uniform(lo, hi);
        const double c = uniform(lo, hi);
        return {a, b, c};
    }

    /// Uniformly distributed direction on the unit sphere.
    Vec3 unit_vec3();

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool have_spare_{false};
    double spare_{0.0};
};

}  // namespace rrb
