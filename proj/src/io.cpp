#include "rrb/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "rrb/model.hpp"

namespace rrb {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, int line) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ParseError(line, "expected a number, got '" + v + "'");
    return d;
}

std::uint64_t parse_unsigned(const std::string& v, int line) {
    char* end = nullptr;
    const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
        throw ParseError(line, "expected a nonnegative integer, got '" + v + "'");
    return u;
}

Vec3 parse_triple(const std::string& v, int line) {
    std::vector<double> parts;
    std::string cur;
    std::stringstream ss(v);
    while (std::getline(ss, cur, ',')) parts.push_back(parse_number(trim(cur), line));
    if (parts.size() != 3)
        throw ParseError(line, "expected a comma-separated triple, got '" + v + "'");
    return {parts[0], parts[1], parts[2]};
}

ordered_json config_json(const SystemConfig& cfg) {
    ordered_json j;
    j["a1"] = cfg.a1;
    j["a2"] = cfg.a2;
    j["a3"] = cfg.a3;
    j["ctrl_a"] = cfg.ctrl_a;
    j["ctrl_b"] = cfg.ctrl_b;
    j["ctrl_c"] = cfg.ctrl_c;
    j["epsilon"] = cfg.epsilon;
    return j;
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError(line_no, "expected 'key = value'");
        if (kv.count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
        kv[key] = {value, line_no};
    }

    static const char* known[] = {"I1",      "I2",     "I3",     "a1",       "a2",
                                  "a3",      "ctrl_a", "ctrl_b", "ctrl_c",   "epsilon",
                                  "x0",      "rtol",   "atol",   "h_init",   "h_max",
                                  "t_end",   "direction", "max_steps", "seed", "output_path"};
    for (const auto& [key, vl] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ParseError(vl.second, "unknown key '" + key + "'");
    }

    const auto has = [&](const char* k) { return kv.count(k) != 0; };
    const auto num = [&](const char* k) { return parse_number(kv[k].first, kv[k].second); };

    const bool moments = has("I1") || has("I2") || has("I3");
    const bool inverse = has("a1") || has("a2") || has("a3");
    if (moments && inverse)
        throw InvariantViolation("give either I1,I2,I3 or a1,a2,a3, not both");
    if (!moments && !inverse)
        throw InvariantViolation("one of the triples I1,I2,I3 or a1,a2,a3 is required");
    if (moments && !(has("I1") && has("I2") && has("I3")))
        throw InvariantViolation("the moment triple I1,I2,I3 is incomplete");
    if (inverse && !(has("a1") && has("a2") && has("a3")))
        throw InvariantViolation("the triple a1,a2,a3 is incomplete");

    RunConfig rc;
    const double ca = has("ctrl_a") ? num("ctrl_a") : 0.0;
    const double cb = has("ctrl_b") ? num("ctrl_b") : 0.0;
    const double cc = has("ctrl_c") ? num("ctrl_c") : 0.0;
    const double eps = has("epsilon") ? num("epsilon") : 0.0;
    rc.system = moments
                    ? SystemConfig::from_moments(num("I1"), num("I2"), num("I3"), ca, cb, cc, eps)
                    : SystemConfig::from_inverse_moments(num("a1"), num("a2"), num("a3"),
                                                         ca, cb, cc, eps);

    if (has("x0")) rc.x0 = parse_triple(kv["x0"].first, kv["x0"].second);
    if (has("rtol")) rc.integ.rtol = num("rtol");
    if (has("atol")) rc.integ.atol = num("atol");
    if (has("h_init")) rc.integ.h_init = num("h_init");
    if (has("h_max")) rc.integ.h_max = num("h_max");
    if (has("t_end")) rc.integ.t_end = num("t_end");
    if (has("direction")) {
        const std::string& d = kv["direction"].first;
        if (d == "forward")
            rc.integ.direction = Direction::Forward;
        else if (d == "backward")
            rc.integ.direction = Direction::Backward;
        else
            throw ParseError(kv["direction"].second, "direction must be forward or backward");
    }
    if (has("max_steps"))
        rc.integ.max_steps =
            static_cast<std::int64_t>(parse_unsigned(kv["max_steps"].first, kv["max_steps"].second));
    if (has("seed")) rc.seed = parse_unsigned(kv["seed"].first, kv["seed"].second);
    if (has("output_path")) rc.output_path = kv["output_path"].first;

    rc.integ.validate();
    if (!rc.x0.is_finite()) throw InvariantViolation("x0 must be finite");
    return rc;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string serialize_config(const RunConfig& rc) {
    std::string out;
    const auto emit = [&out](const std::string& k, const std::string& v) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    };
    emit("a1", format_double(rc.system.a1));
    emit("a2", format_double(rc.system.a2));
    emit("a3", format_double(rc.system.a3));
    emit("ctrl_a", format_double(rc.system.ctrl_a));
    emit("ctrl_b", format_double(rc.system.ctrl_b));
    emit("ctrl_c", format_double(rc.system.ctrl_c));
    emit("epsilon", format_double(rc.system.epsilon));
    emit("x0", format_double(rc.x0.x) + "," + format_double(rc.x0.y) + "," +
                   format_double(rc.x0.z));
    emit("rtol", format_double(rc.integ.rtol));
    emit("atol", format_double(rc.integ.atol));
    emit("h_init", format_double(rc.integ.h_init));
    emit("h_max", format_double(rc.integ.h_max));
    emit("t_end", format_double(rc.integ.t_end));
    emit("direction", rc.integ.direction == Direction::Forward ? "forward" : "backward");
    emit("max_steps", std::to_string(rc.integ.max_steps));
    emit("seed", std::to_string(rc.seed));
    if (!rc.output_path.empty()) emit("output_path", rc.output_path);
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,x1,x2,x3,H,C,diss_residual\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += format_double(traj.times[i]);
        out += ',';
        out += format_double(traj.states[i].x);
        out += ',';
        out += format_double(traj.states[i].y);
        out += ',';
        out += format_double(traj.states[i].z);
        out += ',';
        out += format_double(traj.H_series[i]);
        out += ',';
        out += format_double(traj.C_series[i]);
        out += ',';
        out += format_double(traj.diss_residual[i]);
        out += '\n';
    }
    return out;
}

std::string equilibria_json(const SystemConfig& cfg, double level, const LevelSet& set) {
    ordered_json j;
    j["schema"] = 1;
    j["config"] = config_json(cfg);
    j["level"] = level;
    j["e2_family_degenerate"] = set.e2_degenerate;
    j["count"] = set.points.size();
    ordered_json arr = ordered_json::array();
    for (const Equilibrium& e : set.points) {
        ordered_json je;
        je["family"] = family_name(e.family);
        je["parameter"] = e.parameter;
        je["point"] = vec_json(e.point);
        je["residual"] = e.residual;
        je["hamiltonian"] = hamiltonian(cfg, e.point);
        je["casimir"] = casimir(e.point);
        arr.push_back(je);
    }
    j["equilibria"] = arr;
    return j.dump(2) + "\n";
}

std::string verdicts_json(const SystemConfig& cfg,
                          const std::vector<std::pair<double, StabilityVerdict>>& rows) {
    ordered_json j;
    j["schema"] = 1;
    j["config"] = config_json(cfg);
    ordered_json arr = ordered_json::array();
    for (const auto& [lambda, verdict] : rows) {
        ordered_json row;
        row["lambda"] = lambda;
        row["point"] = vec_json(e2_point(cfg, lambda).point);
        row["kind"] = stability_kind_name(verdict.kind);
        row["provenance"] = provenance_name(verdict.provenance);
        row["notes"] = verdict.notes;
        arr.push_back(row);
    }
    j["verdicts"] = arr;
    return j.dump(2) + "\n";
}

std::string limit_report_json(const SystemConfig& cfg, const State& x0, double horizon,
                              const LimitReport& report) {
    ordered_json j;
    j["schema"] = 1;
    j["config"] = config_json(cfg);
    j["x0"] = vec_json(x0);
    j["horizon"] = horizon;
    j["forward"] = {{"state", vec_json(report.x_m)},
                    {"norm2", report.x_m.norm2()},
                    {"distance_to_E", report.d_forward}};
    j["backward"] = {{"state", vec_json(report.x_M)},
                     {"norm2", report.x_M.norm2()},
                     {"distance_to_E", report.d_backward}};
    j["norms_monotone"] = report.norms_monotone;
    j["norm_ordering_ok"] = report.norm_ordering_ok;
    return j.dump(2) + "\n";
}

std::string error_json(const std::string& type, const std::string& message) {
    ordered_json j;
    j["schema"] = 1;
    j["error"] = {{"type", type}, {"message", message}};
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error("short write to '" + path + "'");
}

}  // namespace rrb
