#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace rrb {

/// Execution policy for the batch kernels. Every parallel kernel has the
/// serial loop as its reference semantics: results are reduced in sample
/// order from a per-index buffer, so both policies produce identical bytes.
enum class Exec { Serial, Parallel };

/// Runs body(i) for i in [0, n). Iterations must be independent.
template <typename F>
void for_each_index(std::int64_t n, Exec exec, F&& body) {
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

/// Evaluates fn(i) into a buffer (possibly in parallel) and reduces the
/// maximum serially in index order.
template <typename F>
double max_over_indices(std::int64_t n, Exec exec, F&& fn) {
    std::vector<double> buf(static_cast<std::size_t>(n), 0.0);
    for_each_index(n, exec, [&](std::int64_t i) { buf[static_cast<std::size_t>(i)] = fn(i); });
    double worst = 0.0;
    for (double v : buf)
        if (v > worst) worst = v;
    return worst;
}

/// Maps fn(i) -> T into a vector, index order preserved.
template <typename T, typename F>
std::vector<T> map_indexed(std::int64_t n, Exec exec, F&& fn) {
    std::vector<T> out(static_cast<std::size_t>(n));
    for_each_index(n, exec, [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = fn(i); });
    return out;
}

}  // namespace rrb
