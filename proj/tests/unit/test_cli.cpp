#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace vofrac;
using namespace vofrac::cli;

namespace {

struct Run {
  int status = 0;
  std::string out;
  std::string log;
};

Run run(Command c, const RunConfig& cfg) {
  std::ostringstream out;
  std::ostringstream log;
  Run r;
  r.status = dispatch(c, cfg, out, log);
  r.out = out.str();
  r.log = log.str();
  return r;
}

Run run(Command c, const std::string& json_text) { return run(c, parse_config(json_text)); }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

RunConfig bundled(const std::string& name) { return load_config(resolve_config_path(name)); }

double final_rate(const Run& r) {
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() >= 3);
  return std::stod(rows.back().at(2));
}

const char* kSine = R"({"order": {"family": "sine", "a0": 0.6, "a1": 0.1}, )";
const char* kLinear = R"({"order": {"family": "linear", "a0": 0.9, "slope": -0.5}, )";

}  // namespace

TEST_CASE("builtin sources") {
  CHECK(parse_source("zero").kind == SourceKind::zero);
  CHECK(parse_source("sin4").kind == SourceKind::sin4);
  const auto c = parse_source("constant 2.5");
  CHECK(c.kind == SourceKind::constant);
  CHECK(c.param == 2.5);
  CHECK(parse_source("linear -1").param == -1.0);
  CHECK(to_string(parse_source("linear -1")) == "linear -1");
  CHECK_THROWS_AS(parse_source("cubic"), ConfigError);
  CHECK_THROWS_AS(parse_source("constant"), ConfigError);
  CHECK_THROWS_AS(parse_source("constant x"), ConfigError);
  CHECK_THROWS_AS(parse_source("zero 1"), ConfigError);
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config(R"({
    "id": "demo",
    "problem": {"f": "linear -1", "u0": 2.0, "T": 1.5},
    "order": {"family": "linear", "a0": 0.9, "slope": -0.2},
    "mesh": {"N": 32, "case": "III"},
    "convergence": {"N_list": [4, 8], "ref_N": 16},
    "quadrature": {"nodes": 40},
    "newton": {"tol": 1e-12, "max_iter": 7, "damping": true},
    "assembly": {"fast_path": true, "workers": 2, "f_term": "quadrature"},
    "output": {"dir": "somewhere", "format": "json"}
  })");
  CHECK(cfg.id == "demo");
  CHECK(cfg.source.kind == SourceKind::linear);
  CHECK(cfg.u0 == 2.0);
  CHECK(cfg.T == 1.5);
  CHECK(cfg.order.family == "linear");
  CHECK(cfg.order.slope == -0.2);
  CHECK(*cfg.mesh.N == 32);
  CHECK(*cfg.mesh.mesh_case == MeshCase::III);
  CHECK(cfg.convergence.N_list == std::vector<std::size_t>{4, 8});
  CHECK(cfg.convergence.ref_N == 16);
  CHECK(cfg.quad_nodes == 40);
  CHECK(cfg.newton.tol == 1e-12);
  CHECK(cfg.newton.max_iter == 7);
  CHECK(cfg.newton.damping);
  CHECK(cfg.fast_path);
  CHECK(cfg.workers == 2);
  CHECK(cfg.f_term == FTermMode::quadrature);
  CHECK(cfg.out_dir == "somewhere");
  CHECK(cfg.format == OutputFormat::json);

  const auto defaults = parse_config("{}");
  CHECK(defaults.quad_nodes == 80);
  CHECK(defaults.newton.tol == 1e-10);
  CHECK(defaults.newton.max_iter == 50);
  CHECK(defaults.convergence.ref_N == 1440);
  CHECK(defaults.source.kind == SourceKind::sin4);
}

TEST_CASE("config rejects unknown keys and bad values") {
  for (const char* text : {
           R"({"bogus": 1})",
           R"({"problem": {"g": "zero"}})",
           R"({"order": {"family": "sine", "alpha2": 0.1}})",
           R"({"order": {"family": "constant", "a0": 0.5}})",
           R"({"order": {"family": "cubic"}})",
           R"({"mesh": {"N": 8, "r": 2, "case": "II"}})",
           R"({"mesh": {"N": 0}})",
           R"({"mesh": {"N": 8.5}})",
           R"({"mesh": {"case": "IV"}})",
           R"({"convergence": {"N_list": [48]}})",
           R"({"convergence": {"N_list": [48, -72]}})",
           R"({"newton": {"tol": 0}})",
           R"({"newton": {"tol": "small"}})",
           R"({"assembly": {"workers": -1}})",
           R"({"assembly": {"f_term": "approximate"}})",
           R"({"output": {"format": "xml"}})",
           R"({"id": ""})",
           R"([1, 2])",
           R"({"mesh": )",
       }) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
}

TEST_CASE("bundled configs resolve to valid runs") {
  for (const char* name : {"table1_col1", "table1_col2", "table1_col3", "table2_col1", "table2_col2"}) {
    CAPTURE(name);
    const auto cfg = bundled(name);
    CHECK(cfg.id == name);
    CHECK(cfg.source.kind == SourceKind::sin4);
    CHECK(cfg.convergence.ref_N == 1440);
    const auto problem = make_problem(cfg);
    CHECK_NOTHROW(grading_for_case(problem.order, require_case(cfg)));
  }
  for (const char* name : {"fig1_casei", "fig1_caseii", "fig1_caseiii"}) {
    CAPTURE(name);
    const auto cfg = bundled(name);
    CHECK(cfg.source.kind == SourceKind::constant);
    const auto problem = make_problem(cfg);
    CHECK(make_run_mesh(cfg, problem.order).N == 1440);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("solve with f = zero preserves the initial value") {
  const auto r =
      run(Command::solve, std::string(kSine) + R"("problem": {"f": "zero", "u0": 1.5}, "mesh": {"N": 128, "r": 2}})");
  REQUIRE(r.status == ExitCode::ok);
  const auto rows = csv_rows(r.out);
  CHECK(rows.front() == std::vector<std::string>{"t", "U"});
  CHECK(rows.size() == 130);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(std::fabs(std::stod(rows[k][1]) - 1.5) <= 1e-7);
}

TEST_CASE("solve output is deterministic and uses 17 significant digits") {
  const std::string cfg = std::string(kSine) + R"("mesh": {"N": 64, "r": 1}})";
  const auto a = run(Command::solve, cfg);
  const auto b = run(Command::solve, cfg);
  REQUIRE(a.status == ExitCode::ok);
  CHECK(a.out == b.out);
  CHECK(a.out.find('\r') == std::string::npos);
  CHECK(format_double(0.1) == "0.10000000000000001");
  const auto rows = csv_rows(a.out);
  CHECK(rows[2][0] == format_double(1.0 / 64));
  CHECK(std::stod(rows.back()[0]) == 1.0);
}

TEST_CASE("solve as JSON and into a directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "vofrac_cli_test";
  fs::remove_all(dir);
  auto cfg = parse_config(std::string(kSine) + R"("id": "case", "mesh": {"N": 16, "r": 1}})");
  cfg.out_dir = dir.string();
  cfg.format = OutputFormat::json;
  const auto r = run(Command::solve, cfg);
  REQUIRE(r.status == ExitCode::ok);
  CHECK(r.out.empty());
  std::ifstream sol(dir / "case_solution.json");
  const auto doc = nlohmann::json::parse(sol);
  CHECK(doc["U"].size() == 17);
  CHECK(doc["U"][0].get<double>() == 1.0);
  std::ifstream summary(dir / "case_summary.json");
  const auto s = nlohmann::json::parse(summary);
  CHECK(s["newton"]["max_iterations"].get<int>() <= 10);
  CHECK(s["timings_s"].contains("assembly"));
  fs::remove_all(dir);
}

TEST_CASE("exit statuses") {
  SUBCASE("invalid grading is a config error naming the mesh precondition") {
    const auto r = run(Command::solve, std::string(kSine) + R"("mesh": {"N": 8, "r": 0.5}})");
    CHECK(r.status == ExitCode::config_error);
    CHECK(r.log.find("grading r") != std::string::npos);
  }
  SUBCASE("case inconsistent with alpha(0)") {
    const auto r = run(Command::solve, std::string(kSine) + R"("mesh": {"N": 8, "case": "I"}})");
    CHECK(r.status == ExitCode::config_error);
  }
  SUBCASE("order outside its domain") {
    const auto r = run(Command::solve, R"({"order": {"family": "constant", "value": 1.5}, "mesh": {"N": 8}})");
    CHECK(r.status == ExitCode::config_error);
  }
  SUBCASE("N list not dividing ref_N") {
    const auto r = run(Command::converge, std::string(kSine) + R"("mesh": {"case": "II"}, )" +
                                              R"("convergence": {"N_list": [7, 14], "ref_N": 48}})");
    CHECK(r.status == ExitCode::config_error);
  }
  SUBCASE("convergence without a mesh case") {
    const auto r = run(Command::converge, std::string(kSine) + R"("mesh": {"r": 2}})");
    CHECK(r.status == ExitCode::config_error);
  }
  SUBCASE("Newton failure") {
    const auto r = run(Command::solve,
                       std::string(kSine) + R"("mesh": {"N": 8}, "newton": {"tol": 1e-300, "max_iter": 1}})");
    CHECK(r.status == ExitCode::solver_failure);
    CHECK(r.log.find("node 1") != std::string::npos);
  }
  SUBCASE("unwritable output directory") {
    namespace fs = std::filesystem;
    const fs::path blocker = fs::temp_directory_path() / "vofrac_cli_blocker";
    std::ofstream(blocker) << "x";
    auto cfg = parse_config(std::string(kSine) + R"("mesh": {"N": 8}})");
    cfg.out_dir = (blocker / "sub").string();
    CHECK(run(Command::solve, cfg).status == ExitCode::io_error);
    fs::remove(blocker);
  }
}

TEST_CASE("coefficient dump") {
  SUBCASE("linear order on a uniform mesh reports the dense/fast gap") {
    auto cfg = parse_config(std::string(kLinear) + R"("mesh": {"N": 16, "r": 1}})");
    cfg.format = OutputFormat::json;
    const auto r = run(Command::coeffs, cfg);
    REQUIRE(r.status == ExitCode::ok);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["max_difference"].get<double>() <= 1e-12);
    CHECK(doc["sequence"]["rise"].size() == 16);
    CHECK(doc["weights"].size() == 16 * 17 / 2 + 16);
    CHECK(r.log.find("fast 32") != std::string::npos);
  }
  SUBCASE("constant order dumps zeros") {
    const auto r = run(Command::coeffs, R"({"order": {"family": "constant", "value": 0.4}, "mesh": {"N": 6}})");
    REQUIRE(r.status == ExitCode::ok);
    const auto rows = csv_rows(r.out);
    CHECK(rows.front() == std::vector<std::string>{"n", "i", "h", "w"});
    CHECK(rows.size() == 1 + 6 * 7 / 2 + 6);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(std::stod(rows[k][2]) == 0.0);
  }
  SUBCASE("fast path on a graded mesh is rejected") {
    auto cfg = parse_config(std::string(kLinear) + R"("mesh": {"N": 16, "r": 2}})");
    cfg.fast_path = true;
    CHECK(run(Command::coeffs, cfg).status == ExitCode::config_error);
  }
}

TEST_CASE("figure configs: early growth is steeper for smaller alpha(0)") {
  std::vector<double> early;
  for (const char* name : {"fig1_casei", "fig1_caseii", "fig1_caseiii"}) {
    const auto r = run(Command::solve, bundled(name));
    REQUIRE(r.status == ExitCode::ok);
    const auto rows = csv_rows(r.out);
    // U(t_10) - U(0) at t_10 = 10 / 1440.
    early.push_back(std::stod(rows[11][1]) - std::stod(rows[1][1]));
  }
  CHECK(early[0] < early[1]);
  CHECK(early[1] < early[2]);
  CHECK(early[0] < 0.01);
  CHECK(early[2] > 0.2);
}

TEST_CASE("bundled convergence studies") {
  const auto uniform = run(Command::converge, bundled("table1_col1"));
  REQUIRE(uniform.status == ExitCode::ok);
  CHECK(std::fabs(final_rate(uniform) - 1.93) <= 0.15);
  CHECK(uniform.log.find("pred") != std::string::npos);

  const auto graded = run(Command::converge, bundled("table2_col2"));
  REQUIRE(graded.status == ExitCode::ok);
  CHECK(std::fabs(final_rate(graded) - 2.00) <= 0.10);
}
