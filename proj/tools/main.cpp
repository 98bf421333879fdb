#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace vofrac::cli;

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::string format;
  std::size_t quad_nodes = 80;
  double newton_tol = 1e-10;
  bool fast_path = false;
  unsigned workers = 1;
};

struct Flags {
  CLI::Option* out = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* quad_nodes = nullptr;
  CLI::Option* newton_tol = nullptr;
  CLI::Option* workers = nullptr;
};

Flags add_flags(CLI::App* sub, Overrides& o) {
  Flags f;
  sub->add_option("--config", o.config, "JSON config file or bundled config name")->required();
  f.out = sub->add_option("--out", o.out, "Output directory (default: data to stdout)");
  f.format = sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  f.quad_nodes = sub->add_option("--quad-nodes", o.quad_nodes, "Gauss-Legendre nodes per cell (default 80)")
                     ->check(CLI::PositiveNumber);
  f.newton_tol = sub->add_option("--newton-tol", o.newton_tol, "Newton step tolerance (default 1e-10)")
                     ->check(CLI::PositiveNumber);
  sub->add_flag("--fast-path", o.fast_path, "Translation-invariant assembly (linear order, uniform mesh)");
  f.workers = sub->add_option("--workers", o.workers, "Threads for weight assembly; 0 = all cores");
  return f;
}

void apply(const Flags& f, const Overrides& o, RunConfig& cfg) {
  if (f.out->count() > 0) cfg.out_dir = o.out;
  if (f.format->count() > 0) cfg.format = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (f.quad_nodes->count() > 0) cfg.quad_nodes = o.quad_nodes;
  if (f.newton_tol->count() > 0) cfg.newton.tol = o.newton_tol;
  if (o.fast_path) cfg.fast_path = true;
  if (f.workers->count() > 0) cfg.workers = o.workers;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-order fractional Cauchy problems via a Volterra integral equation"};
  app.require_subcommand(1);

  Overrides o;
  CLI::App* solve = app.add_subcommand("solve", "Solve on one mesh and write the nodal solution");
  CLI::App* converge = app.add_subcommand("converge", "Run a convergence study against a fine reference");
  CLI::App* coeffs = app.add_subcommand("coeffs", "Dump the collocation weight table");
  const Flags fs = add_flags(solve, o);
  const Flags fc = add_flags(converge, o);
  const Flags fw = add_flags(coeffs, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ExitCode::config_error;
  }

  Command command = Command::solve;
  const Flags* flags = &fs;
  if (converge->parsed()) {
    command = Command::converge;
    flags = &fc;
  } else if (coeffs->parsed()) {
    command = Command::coeffs;
    flags = &fw;
  }

  RunConfig cfg;
  try {
    cfg = load_config(resolve_config_path(o.config));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return ExitCode::io_error;
  }
  apply(*flags, o, cfg);
  return dispatch(command, cfg, std::cout, std::cerr);
}
