// Command-line front end: simulate / equilibria / classify / limits / verify /
// sweep, all driven by a key = value config file. Exit codes: 0 success,
// 1 usage or config error, 2 numerical failure, 3 invariant-suite failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrb/batch.hpp"
#include "rrb/io.hpp"
#include "rrb/rng.hpp"
#include "rrb/verify.hpp"

namespace {

rrb::RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw rrb::Error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return rrb::parse_config(ss.str());
}

void emit(const std::string& bytes, const std::string& path) {
    if (path.empty())
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    else
        rrb::write_file(path, bytes);
}

int fail(const std::string& type, const std::string& message, int code) {
    std::cerr << rrb::error_json(type, message);
    return code;
}

std::string status_name(rrb::IntegrationStatus s) {
    switch (s) {
        case rrb::IntegrationStatus::Complete: return "Complete";
        case rrb::IntegrationStatus::StepSizeUnderflow: return "StepSizeUnderflow";
        case rrb::IntegrationStatus::MaxStepsExceeded: return "MaxStepsExceeded";
    }
    return "?";
}

int run_simulate(const rrb::RunConfig& rc, const std::string& out_override) {
    const rrb::VectorField field{rrb::FieldKind::EpsilonRevised, rc.system};
    const rrb::Trajectory traj = rrb::integrate(field, rc.x0, rc.integ);
    emit(rrb::trajectory_csv(traj),
         out_override.empty() ? rc.output_path : out_override);
    if (traj.status != rrb::IntegrationStatus::Complete)
        return fail("IntegrationError", "run ended early: " + status_name(traj.status), 2);
    return 0;
}

int run_equilibria(const rrb::RunConfig& rc, double level, const std::string& out) {
    const rrb::LevelSet set = rrb::equilibria_on_level(rc.system, level);
    emit(rrb::equilibria_json(rc.system, level, set),
         out.empty() ? rc.output_path : out);
    return 0;
}

int run_classify(const rrb::RunConfig& rc, const std::vector<double>& lambdas,
                 bool with_probe, const std::string& out) {
    std::vector<std::pair<double, rrb::StabilityVerdict>> rows;
    for (double lam : lambdas) {
        const rrb::Equilibrium eq = rrb::e2_point(rc.system, lam);
        rrb::StabilityVerdict v;
        rrb::ProbeSettings probe;
        probe.seed = rc.seed;
        if (rc.system.epsilon > 0.0) {
            v = rrb::classify(rc.system, eq);
            if (with_probe && v.kind == rrb::StabilityKind::Undetermined)
                v = rrb::classify_empirical(rc.system, eq, probe);
        } else if (with_probe) {
            v = rrb::classify_empirical(rc.system, eq, probe);
        } else {
            throw rrb::EpsilonNotPositive(
                "classify requires epsilon > 0; pass --probe for empirical verdicts");
        }
        rows.emplace_back(lam, v);
    }
    emit(rrb::verdicts_json(rc.system, rows), out.empty() ? rc.output_path : out);
    return 0;
}

int run_limits(const rrb::RunConfig& rc, double horizon, const std::string& out) {
    rrb::LimitSettings ls;
    ls.horizon = horizon;
    ls.integ = rc.integ;
    const rrb::LimitReport report = rrb::limit_report(rc.system, rc.x0, ls);
    emit(rrb::limit_report_json(rc.system, rc.x0, horizon, report),
         out.empty() ? rc.output_path : out);
    return 0;
}

int run_verify(const rrb::RunConfig& rc, bool quick, bool serial) {
    rrb::verify::SuiteOptions opts;
    opts.cfg = rc.system;
    opts.seed = rc.seed;
    opts.exec = serial ? rrb::Exec::Serial : rrb::Exec::Parallel;
    opts.quick = quick;
    const std::vector<rrb::verify::CheckResult> results = rrb::verify::run_suite(opts);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("%s  %-42s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%d checks, %d failures\n", static_cast<int>(results.size()), failures);
    return failures == 0 ? 0 : 3;
}

struct SweepCell {
    std::string file;
    std::string summary;
    bool ok{true};
};

int run_sweep(const rrb::RunConfig& rc, const std::string& param, double from, double to,
              int count, const std::string& mode, double delta, const std::string& dir,
              bool serial) {
    if (count < 1) throw rrb::InvariantViolation("sweep requires count >= 1");
    std::filesystem::create_directories(dir);
    std::vector<SweepCell> cells(static_cast<std::size_t>(count));

    rrb::for_each_index(count, serial ? rrb::Exec::Serial : rrb::Exec::Parallel,
                        [&](std::int64_t i) {
        SweepCell& cell = cells[static_cast<std::size_t>(i)];
        const double value =
            count == 1 ? from : from + (to - from) * static_cast<double>(i) / (count - 1);
        rrb::RunConfig cfg = rc;
        char name[64];
        std::snprintf(name, sizeof name, "%s_%s_%04d.%s", mode.c_str(), param.c_str(),
                      static_cast<int>(i), mode == "simulate" ? "csv" : "json");
        cell.file = (std::filesystem::path(dir) / name).string();
        std::ostringstream line;
        line << "cell " << i << "  " << param << "=" << rrb::format_double(value);
        try {
            rrb::State x0 = cfg.x0;
            if (param == "epsilon") {
                cfg.system.epsilon = value;
            } else {  // lambda: start next to the curve equilibrium e2(value)
                rrb::RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
                x0 = rrb::e2_point(cfg.system, value).point + delta * rng.unit_vec3();
            }
            if (mode == "simulate") {
                const rrb::Trajectory traj =
                    rrb::integrate({rrb::FieldKind::EpsilonRevised, cfg.system}, x0, cfg.integ);
                rrb::write_file(cell.file, rrb::trajectory_csv(traj));
                line << "  final=|x|=" << rrb::format_double(traj.back().norm())
                     << "  status=" << status_name(traj.status);
                cell.ok = traj.status == rrb::IntegrationStatus::Complete;
            } else {
                rrb::LimitSettings ls;
                ls.integ = cfg.integ;
                ls.horizon = cfg.integ.t_end;
                ls.exec = rrb::Exec::Serial;  // cells are already parallel
                const rrb::LimitReport rep = rrb::limit_report(cfg.system, x0, ls);
                rrb::write_file(cell.file,
                                rrb::limit_report_json(cfg.system, x0, ls.horizon, rep));
                line << "  d_fwd=" << rrb::format_double(rep.d_forward)
                     << "  d_bwd=" << rrb::format_double(rep.d_backward);
            }
        } catch (const std::exception& e) {
            cell.ok = false;
            line << "  error=" << e.what();
        }
        line << "  -> " << cell.file;
        cell.summary = line.str();
    });

    bool all_ok = true;
    for (const SweepCell& cell : cells) {
        std::printf("%s\n", cell.summary.c_str());
        all_ok = all_ok && cell.ok;
    }
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipatively revised rigid body with three linear controls"};
    app.require_subcommand(1);

    std::string config_path, output, out_dir, param = "epsilon", mode = "simulate";
    double level = 0.0, horizon = 500.0, t_end = -1.0, from = 0.0, to = 1.0, delta = 1e-3;
    int count = 1;
    bool backward = false, quick = false, serial = false, with_probe = false;
    std::string lambda_list;
    double lambda_min = 0.0, lambda_max = 0.0;
    int lambda_count = 0;

    CLI::App* sim = app.add_subcommand("simulate", "integrate and write the trajectory CSV");
    sim->add_option("--config", config_path, "config file")->required();
    sim->add_option("--t-end", t_end, "override the horizon");
    sim->add_flag("--backward", backward, "integrate the reversed field");
    sim->add_option("--output", output, "output path (stdout when absent)");

    CLI::App* eq = app.add_subcommand("equilibria", "equilibria on an energy level");
    eq->add_option("--config", config_path)->required();
    eq->add_option("--level", level, "energy level k")->required();
    eq->add_option("--output", output);

    CLI::App* cl = app.add_subcommand("classify", "stability verdicts over a lambda grid");
    cl->add_option("--config", config_path)->required();
    cl->add_option("--lambdas", lambda_list, "comma-separated lambda values");
    cl->add_option("--lambda-min", lambda_min);
    cl->add_option("--lambda-max", lambda_max);
    cl->add_option("--lambda-count", lambda_count);
    cl->add_flag("--probe", with_probe, "empirical fallback where no theorem applies");
    cl->add_option("--output", output);

    CLI::App* lim = app.add_subcommand("limits", "forward/backward limit report");
    lim->add_option("--config", config_path)->required();
    lim->add_option("--horizon", horizon);
    lim->add_option("--output", output);

    CLI::App* ver = app.add_subcommand("verify", "run the full invariant suite");
    ver->add_option("--config", config_path)->required();
    ver->add_flag("--quick", quick, "reduced sample counts");
    ver->add_flag("--serial", serial, "disable the parallel kernels");

    CLI::App* sw = app.add_subcommand("sweep", "repeat simulate/limits over a grid");
    sw->add_option("--config", config_path)->required();
    sw->add_option("--param", param)->check(CLI::IsMember({"epsilon", "lambda"}));
    sw->add_option("--from", from)->required();
    sw->add_option("--to", to)->required();
    sw->add_option("--count", count)->required();
    sw->add_option("--mode", mode)->check(CLI::IsMember({"simulate", "limits"}));
    sw->add_option("--delta", delta, "perturbation for lambda sweeps");
    sw->add_option("--out-dir", out_dir, "one output file per cell")->required();
    sw->add_flag("--serial", serial);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints usage; 0 for --help
        return code == 0 ? 0 : 1;
    }

    try {
        rrb::RunConfig rc = load_config(config_path);
        if (sim->parsed()) {
            if (t_end >= 0.0) rc.integ.t_end = t_end;
            if (backward) rc.integ.direction = rrb::Direction::Backward;
            return run_simulate(rc, output);
        }
        if (eq->parsed()) return run_equilibria(rc, level, output);
        if (cl->parsed()) {
            std::vector<double> lambdas;
            if (!lambda_list.empty()) {
                std::stringstream ss(lambda_list);
                std::string tok;
                while (std::getline(ss, tok, ',')) lambdas.push_back(std::stod(tok));
            }
            for (int i = 0; i < lambda_count; ++i)
                lambdas.push_back(lambda_count == 1
                                      ? lambda_min
                                      : lambda_min + (lambda_max - lambda_min) * i /
                                            (lambda_count - 1));
            if (lambdas.empty())
                throw rrb::InvariantViolation(
                    "classify needs --lambdas or a --lambda-min/max/count grid");
            return run_classify(rc, lambdas, with_probe, output);
        }
        if (lim->parsed()) return run_limits(rc, horizon, output);
        if (ver->parsed()) return run_verify(rc, quick, serial);
        if (sw->parsed())
            return run_sweep(rc, param, from, to, count, mode, delta, out_dir, serial);
    } catch (const rrb::ParseError& e) {
        return fail("ParseError", e.what(), 1);
    } catch (const rrb::InvariantViolation& e) {
        return fail("InvariantViolation", e.what(), 1);
    } catch (const rrb::PoleProximity& e) {
        return fail("PoleProximity", e.what(), 2);
    } catch (const rrb::EmptyLevel& e) {
        return fail("EmptyLevel", e.what(), 2);
    } catch (const rrb::EpsilonNotPositive& e) {
        return fail("EpsilonNotPositive", e.what(), 2);
    } catch (const rrb::FamilyNotApplicable& e) {
        return fail("FamilyNotApplicable", e.what(), 2);
    } catch (const std::exception& e) {
        return fail("Error", e.what(), 2);
    }
    return 1;
}
