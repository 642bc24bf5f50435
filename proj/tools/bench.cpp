// Benchmark of the batch kernels: each workload runs once through the serial
// reference loop and once through the OpenMP path, checks that the results
// are identical, and reports the timings.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "rrb/batch.hpp"
#include "rrb/checks.hpp"
#include "rrb/integrate.hpp"
#include "rrb/rng.hpp"
#include "rrb/stability.hpp"

using namespace rrb;

namespace {

double seconds(const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const std::string& name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-34s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
                name.c_str(), serial_s, parallel_s, serial_s / parallel_s,
                identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
    const SystemConfig std_half{1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 0.5};

    {
        constexpr std::int64_t n = 2'000'000;
        double serial_res = 0.0, parallel_res = 0.0;
        const double ts = seconds(
            [&] { serial_res = checks::max_drift_identity_residual(n, 7, Exec::Serial); });
        const double tp = seconds(
            [&] { parallel_res = checks::max_drift_identity_residual(n, 7, Exec::Parallel); });
        report("drift identity scan (2e6)", ts, tp, serial_res == parallel_res);
    }

    {
        constexpr std::int64_t n = 2'000'000;
        double serial_res = 0.0, parallel_res = 0.0;
        const double ts = seconds(
            [&] { serial_res = checks::max_dissipation_identity(n, 11, Exec::Serial); });
        const double tp = seconds(
            [&] { parallel_res = checks::max_dissipation_identity(n, 11, Exec::Parallel); });
        report("dissipation identity scan (2e6)", ts, tp, serial_res == parallel_res);
    }

    {
        constexpr std::int64_t n = 128;
        const VectorField field{FieldKind::EpsilonRevised, std_half};
        IntegratorSettings set;
        set.t_end = 50.0;
        const auto batch = [&](Exec exec) {
            return map_indexed<State>(n, exec, [&](std::int64_t i) {
                RngStream rng(3, static_cast<std::uint64_t>(i));
                const State x0 = rng.uniform_vec3(-1.5, 1.5);
                return integrate(field, x0, set).back();
            });
        };
        std::vector<State> serial_out, parallel_out;
        const double ts = seconds([&] { serial_out = batch(Exec::Serial); });
        const double tp = seconds([&] { parallel_out = batch(Exec::Parallel); });
        report("trajectory batch (128 x t=50)", ts, tp, serial_out == parallel_out);
    }

    {
        const Equilibrium eq = e2_point(std_half, -1.0);
        ProbeSettings probe;
        probe.n_samples = 24;
        probe.horizon = 100.0;
        ProbeOutcome serial_out{}, parallel_out{};
        const double ts = seconds([&] {
            probe.exec = Exec::Serial;
            serial_out = probe_stability(std_half, eq, probe);
        });
        const double tp = seconds([&] {
            probe.exec = Exec::Parallel;
            parallel_out = probe_stability(std_half, eq, probe);
        });
        report("stability probe (24 x t=100)", ts, tp, serial_out == parallel_out);
    }

    return 0;
}
