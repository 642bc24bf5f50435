#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "rrb/integrate.hpp"
#include "rrb/io.hpp"
#include "support.hpp"

using namespace rrb;
using rrbtest::std_cfg;

namespace {

const char* kStdText =
    "I1=1\nI2=0.5\nI3=0.3333333333333333\n"
    "ctrl_a=1\nctrl_b=1\nctrl_c=1\nepsilon=0.5\nx0=1,1,1\n";

}  // namespace

TEST_CASE("parsing the worked configuration") {
    const RunConfig rc = parse_config(kStdText);
    CHECK(rc.system.a1 == 1.0);
    CHECK(rc.system.a2 == 2.0);
    CHECK(rc.system.a3 == 3.0);
    CHECK(rc.system.ctrl_a == 1.0);
    CHECK(rc.system.epsilon == 0.5);
    CHECK((rc.x0 == State{1, 1, 1}));
    // absent integrator keys fall back to the documented defaults
    CHECK(rc.integ.rtol == 1e-10);
    CHECK(rc.integ.atol == 1e-12);
    CHECK(rc.integ.h_init == 1e-3);
    CHECK(rc.integ.h_max == 1.0);
    CHECK(rc.integ.direction == Direction::Forward);
}

TEST_CASE("comments, spacing and direction") {
    const RunConfig rc = parse_config(
        "# sample file\n"
        "a1 = 1   # inverse moments\n"
        "a2 = 2\n"
        "a3 = 3\n"
        "direction = backward\n"
        "seed = 42\n"
        "output_path = out.csv\n");
    CHECK(rc.system.a1 == 1.0);
    CHECK(rc.integ.direction == Direction::Backward);
    CHECK(rc.seed == 42);
    CHECK(rc.output_path == "out.csv");
}

TEST_CASE("parse errors carry line numbers and fail closed") {
    CHECK_THROWS_AS(parse_config("a1=1\na2=2\na3=3\nturbo=9\n"), ParseError);
    CHECK_THROWS_AS(parse_config("a1=1\na1=2\na2=2\na3=3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("a1=1\njust a line\n"), ParseError);
    CHECK_THROWS_AS(parse_config("a1=1\na2=2\na3=3\nx0=1,2\n"), ParseError);
    CHECK_THROWS_AS(parse_config("a1=1\na2=2\na3=3\nrtol=abc\n"), ParseError);
    CHECK_THROWS_AS(parse_config("a1=1\na2=2\na3=3\ndirection=up\n"), ParseError);
    try {
        parse_config("a1=1\na2=2\na3=3\nturbo=9\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("invariants are checked at parse time") {
    CHECK_THROWS_AS(parse_config("a1=2\na2=1\na3=3\n"), InvariantViolation);
    CHECK_THROWS_AS(parse_config("I1=0.2\nI2=0.5\nI3=0.1\n"), InvariantViolation);
    CHECK_THROWS_AS(parse_config("ctrl_a=1\n"), InvariantViolation);          // no triple
    CHECK_THROWS_AS(parse_config("a1=1\na2=2\n"), InvariantViolation);        // incomplete
    CHECK_THROWS_AS(parse_config("a1=1\na2=2\na3=3\nI1=1\nI2=0.5\nI3=0.2\n"),
                    InvariantViolation);                                       // both triples
    CHECK_THROWS_AS(parse_config("a1=1\na2=2\na3=3\nrtol=1\n"), InvariantViolation);
}

TEST_CASE("serialize then parse is the identity") {
    RunConfig rc = parse_config(kStdText);
    rc.integ.rtol = 0.1e-9;
    rc.x0 = {0.1, -1.0 / 3.0, 2.7182818284590452};
    rc.seed = 123456789;
    rc.output_path = "somewhere.csv";
    const RunConfig back = parse_config(serialize_config(rc));
    CHECK((back == rc));

    // moments round through inverse form exactly as stored
    const RunConfig twice = parse_config(serialize_config(back));
    CHECK((twice == back));
}

TEST_CASE("17-digit float formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-11.0 / 12.0) == format_double(-11.0 / 12.0));
    // round-trip through text is exact
    for (double v : {0.1, 1.0 / 3.0, 2.718281828459045, -7.25e-13}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("trajectory csv shape") {
    IntegratorSettings s;
    s.t_end = 0.0;
    const Trajectory one = integrate({FieldKind::EpsilonRevised, std_cfg(0.5)}, {1, 1, 1}, s);
    const std::string csv = trajectory_csv(one);
    CHECK(csv ==
          "t,x1,x2,x3,H,C,diss_residual\n"
          "0,1,1,1,6,1.5,0\n");

    s.t_end = 1.0;
    const Trajectory traj = integrate({FieldKind::EpsilonRevised, std_cfg(0.5)}, {1, 1, 1}, s);
    const std::string body = trajectory_csv(traj);
    CHECK(body.find("t,x1,x2,x3,H,C,diss_residual\n") == 0);
    CHECK(std::count(body.begin(), body.end(), '\n') ==
          static_cast<std::ptrdiff_t>(traj.size() + 1));
    CHECK(body.find('\r') == std::string::npos);
}

TEST_CASE("json documents carry the schema marker and fixed keys") {
    const SystemConfig cfg = std_cfg(0.5);

    const LevelSet set = equilibria_on_level(cfg, 0.0);
    const auto eq_doc = nlohmann::json::parse(equilibria_json(cfg, 0.0, set));
    CHECK(eq_doc["schema"] == 1);
    CHECK(eq_doc["level"] == 0.0);
    CHECK(eq_doc["count"] == set.points.size());
    REQUIRE(eq_doc["equilibria"].is_array());
    for (const auto& e : eq_doc["equilibria"]) {
        CHECK(e.contains("family"));
        CHECK(e.contains("parameter"));
        CHECK(e.contains("point"));
        CHECK(e.contains("residual"));
    }

    std::vector<std::pair<double, StabilityVerdict>> rows;
    rows.emplace_back(-1.0, classify(cfg, e2_point(cfg, -1.0)));
    const auto verdict_doc = nlohmann::json::parse(verdicts_json(cfg, rows));
    CHECK(verdict_doc["schema"] == 1);
    CHECK(verdict_doc["verdicts"][0]["kind"] == "LyapunovStable");
    CHECK(verdict_doc["verdicts"][0]["provenance"] == "Theorem65");

    const auto err_doc = nlohmann::json::parse(error_json("ParseError", "line 3: nope"));
    CHECK(err_doc["schema"] == 1);
    CHECK(err_doc["error"]["type"] == "ParseError");

    // byte-identical across repeated serialization
    CHECK(equilibria_json(cfg, 0.0, set) == equilibria_json(cfg, 0.0, set));
}

TEST_CASE("write_file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "rrb_io_test.txt";
    write_file(path.string(), "alpha\nbeta\n");
    std::ifstream f(path);
    std::string a, b;
    std::getline(f, a);
    std::getline(f, b);
    CHECK(a == "alpha");
    CHECK(b == "beta");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_file("/nonexistent_dir_zz/x.txt", "y"), Error);
}
