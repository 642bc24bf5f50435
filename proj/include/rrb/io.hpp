#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rrb/config.hpp"
#include "rrb/equilibria.hpp"
#include "rrb/integrate.hpp"
#include "rrb/stability.hpp"

namespace rrb {

/// One simulation run as described by a config file: the physical system,
/// the initial state, the integrator settings, a seed and an output path.
struct RunConfig {
    SystemConfig system;
    State x0{1.0, 1.0, 1.0};
    IntegratorSettings integ{};
    std::uint64_t seed{0};
    std::string output_path;

    bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` text (# comments, comma-separated triples). Unknown
/// keys and duplicate keys are errors; the file must carry exactly one of the
/// triples {I1,I2,I3} or {a1,a2,a3}; system invariants are checked here.
RunConfig parse_config(const std::string& text);

/// Emits a config file that parses back to exactly the same RunConfig
/// (floats printed with 17 significant digits).
std::string serialize_config(const RunConfig& cfg);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// CSV with header t,x1,x2,x3,H,C,diss_residual; LF line endings;
/// 17-significant-digit floats.
std::string trajectory_csv(const Trajectory& traj);

/// JSON documents, all carrying "schema": 1 and fixed key order.
std::string equilibria_json(const SystemConfig& cfg, double level, const LevelSet& set);
std::string verdicts_json(const SystemConfig& cfg,
                          const std::vector<std::pair<double, StabilityVerdict>>& rows);
std::string limit_report_json(const SystemConfig& cfg, const State& x0, double horizon,
                              const LimitReport& report);
std::string error_json(const std::string& type, const std::string& message);

void write_file(const std::string& path, const std::string& bytes);

}  // namespace rrb
