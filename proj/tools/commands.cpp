#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vofrac/analysis.hpp"
#include "vofrac/errors.hpp"

namespace vofrac::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

AssemblyOptions assembly_options(const RunConfig& cfg) {
  AssemblyOptions opts;
  opts.fast_path = cfg.fast_path;
  opts.f_term = cfg.f_term;
  opts.workers = cfg.workers;
  return opts;
}

const char* extension(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

// Writes `text` to <out_dir>/<id>_<suffix> or, without an output directory, to `out`.
void emit(const RunConfig& cfg, const std::string& suffix, const std::string& text, std::ostream& out,
          std::ostream& log) {
  if (cfg.out_dir.empty()) {
    out << text;
    if (!out) throw IoError("failed to write to the output stream");
    return;
  }
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path file = dir / (cfg.id + "_" + suffix);
  std::ofstream f(file, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) throw IoError("cannot write " + file.string());
  log << "wrote " << file.string() << '\n';
}

std::string json_text(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const Problem problem = make_problem(cfg);
  const Mesh mesh = make_run_mesh(cfg, problem.order);

  const auto t0 = Clock::now();
  const WeightTable table = [&] {
    try {
      return assemble(problem.order, mesh, gauss_nodes(cfg.quad_nodes), assembly_options(cfg));
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
  }();
  const double t_assembly = seconds_since(t0);
  const auto t1 = Clock::now();
  const Solution sol = solve(problem, table, cfg.newton);
  const double t_solve = seconds_since(t1);

  std::string data;
  if (cfg.format == OutputFormat::csv) {
    data = "t,U\n";
    for (std::size_t i = 0; i <= mesh.N; ++i) {
      data += format_double(mesh.t(i)) + "," + format_double(sol.values[i]) + "\n";
    }
  } else {
    data = json_text(
        {{"id", cfg.id}, {"t", mesh.nodes}, {"U", sol.values}, {"newton_iterations", sol.newton_iterations}});
  }
  emit(cfg, std::string("solution.") + extension(cfg.format), data, out, log);

  const auto& its = sol.newton_iterations;
  const int max_it = *std::max_element(its.begin(), its.end());
  const long total_it = std::accumulate(its.begin(), its.end(), 0L);
  log << cfg.id << ": N=" << mesh.N << " r=" << format_double(mesh.r) << " U(T)=" << format_double(sol.values.back())
      << " newton max=" << max_it << " total=" << total_it << '\n';
  if (!cfg.out_dir.empty()) {
    const json summary = {
        {"id", cfg.id},
        {"N", mesh.N},
        {"r", mesh.r},
        {"T", mesh.T},
        {"u0", cfg.u0},
        {"f", to_string(cfg.source)},
        {"quad_nodes", cfg.quad_nodes},
        {"fast_path", table.invariant_mode()},
        {"history_storage", table.history_storage()},
        {"newton", {{"tol", cfg.newton.tol}, {"max_iterations", max_it}, {"total_iterations", total_it},
                    {"per_node", its}}},
        {"timings_s", {{"assembly", t_assembly}, {"solve", t_solve}}},
    };
    emit(cfg, "summary.json", json_text(summary), out, log);
  }
}

void cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const Problem problem = make_problem(cfg);
  const MeshCase mesh_case = require_case(cfg);
  ConvergenceOptions opts;
  opts.id = cfg.id;
  opts.assembly = assembly_options(cfg);
  ConvergenceReport report;
  try {
    report = run_convergence(problem, mesh_case, cfg.convergence.N_list, cfg.convergence.ref_N,
                             gauss_nodes(cfg.quad_nodes), cfg.newton, opts);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }

  std::string data;
  if (cfg.format == OutputFormat::csv) {
    data = "N,error,rate\n";
    for (std::size_t j = 0; j < report.Ns.size(); ++j) {
      data += std::to_string(report.Ns[j]) + "," + format_double(report.errors[j]) + ",";
      if (j > 0) data += format_double(report.rates[j - 1]);
      data += "\n";
    }
  } else {
    data = json_text({{"id", report.id},
                      {"case", std::string(to_string(report.mesh_case))},
                      {"grading", report.grading},
                      {"ref_N", report.ref_N},
                      {"N", report.Ns},
                      {"errors", report.errors},
                      {"rates", report.rates},
                      {"predicted_rate", report.predicted_rate}});
  }
  emit(cfg, std::string("convergence.") + extension(cfg.format), data, out, log);
  write_report_table(log, std::span<const ConvergenceReport>(&report, 1));
}

void cmd_coeffs(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const Problem problem = make_problem(cfg);
  const Mesh mesh = make_run_mesh(cfg, problem.order);
  const QuadratureRule rule = gauss_nodes(cfg.quad_nodes);

  AssemblyOptions dense_opts = assembly_options(cfg);
  dense_opts.fast_path = false;
  const WeightTable dense = assemble(problem.order, mesh, rule, dense_opts);

  std::optional<WeightTable> fast;
  const bool applicable = problem.order.is_linear() && mesh.is_uniform() && cfg.f_term == FTermMode::exact_moments;
  if (cfg.fast_path || applicable) {
    AssemblyOptions fast_opts = dense_opts;
    fast_opts.fast_path = true;
    try {
      fast = assemble(problem.order, mesh, rule, fast_opts);
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
  }

  if (cfg.format == OutputFormat::csv) {
    std::string data = "n,i,h,w\n";
    for (std::size_t n = 1; n <= mesh.N; ++n) {
      for (std::size_t i = 0; i <= n; ++i) {
        data += std::to_string(n) + "," + std::to_string(i) + "," + format_double(dense.h(n, i)) + "," +
                format_double(dense.f_weight(n, i)) + "\n";
      }
    }
    emit(cfg, "weights.csv", data, out, log);
    if (fast && !cfg.out_dir.empty()) {
      std::string seq = "k,rise,fall\n";
      for (std::size_t k = 0; k < fast->rise().size(); ++k) {
        seq += std::to_string(k) + "," + format_double(fast->rise()[k]) + "," + format_double(fast->fall()[k]) + "\n";
      }
      emit(cfg, "sequence.csv", seq, out, log);
    }
  } else {
    json rows = json::array();
    for (std::size_t n = 1; n <= mesh.N; ++n) {
      for (std::size_t i = 0; i <= n; ++i) {
        rows.push_back({{"n", n}, {"i", i}, {"h", dense.h(n, i)}, {"w", dense.f_weight(n, i)}});
      }
    }
    json doc = {{"id", cfg.id}, {"N", mesh.N}, {"r", mesh.r}, {"weights", rows}};
    if (fast) {
      doc["sequence"] = {{"rise", std::vector<double>(fast->rise().begin(), fast->rise().end())},
                         {"fall", std::vector<double>(fast->fall().begin(), fast->fall().end())}};
      doc["max_difference"] = max_history_difference(dense, *fast);
    }
    emit(cfg, "weights.json", json_text(doc), out, log);
  }

  log << cfg.id << ": dense history storage " << dense.history_storage();
  if (fast) {
    log << ", fast " << fast->history_storage() << ", max |dense - fast| = "
        << format_double(max_history_difference(dense, *fast));
  }
  log << '\n';
}

int dispatch(Command command, const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  try {
    switch (command) {
      case Command::solve: cmd_solve(cfg, out, log); break;
      case Command::converge: cmd_converge(cfg, out, log); break;
      case Command::coeffs: cmd_coeffs(cfg, out, log); break;
    }
    return ExitCode::ok;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << '\n';
    return ExitCode::io_error;
  } catch (const SolverError& e) {
    log << "solver failure: " << e.what() << '\n';
    return ExitCode::solver_failure;
  } catch (const ConvergenceError& e) {
    log << "solver failure: " << e.what() << '\n';
    return ExitCode::solver_failure;
  } catch (const PreconditionError& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const DomainError& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::config_error;
  }
}

}  // namespace vofrac::cli
