#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrb/batch.hpp"
#include "rrb/config.hpp"

namespace rrb::verify {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct SuiteOptions {
    SystemConfig cfg;       // system used for the trajectory-based checks
    std::uint64_t seed{0};
    Exec exec{Exec::Parallel};
    bool quick{false};      // reduced sample counts for smoke runs
};

/// Runs every invariant of the library surface once: algebraic identities,
/// the two conservation/dissipation laws, equilibrium-family algebra, the
/// monotonicity lemmas, cardinality of level sets, Lyapunov machinery and
/// the probe/theorem agreement table.
std::vector<CheckResult> run_suite(const SuiteOptions& opts);

}  // namespace rrb::verify
