#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vofrac/assembly.hpp"
#include "vofrac/mesh.hpp"
#include "vofrac/solver.hpp"

namespace vofrac::cli {

/// Malformed or inconsistent configuration (exit status 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failure while reading or writing (exit status 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SourceKind { zero, constant, linear, sin4 };

/// Builtin right-hand sides: "zero", "constant c", "linear lambda", "sin4" = 0.5 sin^4(u).
struct SourceSpec {
  SourceKind kind = SourceKind::sin4;
  double param = 0.0;
};

SourceSpec parse_source(std::string_view text);
std::string to_string(const SourceSpec& s);

struct OrderSpec {
  std::string family = "sine";  // sine | constant | linear
  double alpha0 = 1.0;
  double alpha1 = 0.8;  // sine
  double value = 0.5;   // constant
  double slope = 0.0;   // linear
};

struct MeshSpec {
  std::optional<std::size_t> N;
  std::optional<double> r;
  std::optional<MeshCase> mesh_case;
};

struct ConvergenceSpec {
  std::vector<std::size_t> N_list{48, 72, 96, 120};
  std::size_t ref_N = 1440;
};

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string id = "run";
  SourceSpec source;
  double u0 = 1.0;
  double T = 1.0;
  OrderSpec order;
  MeshSpec mesh;
  ConvergenceSpec convergence;
  std::size_t quad_nodes = 80;
  NewtonConfig newton;
  bool fast_path = false;
  unsigned workers = 1;
  FTermMode f_term = FTermMode::exact_moments;
  std::string out_dir;  // empty: primary output goes to the output stream
  OutputFormat format = OutputFormat::csv;
};

/// Parses a JSON document. Unknown keys and wrong types raise ConfigError.
RunConfig parse_config(std::string_view json_text);

/// Reads and parses a file. A missing or unreadable file raises IoError.
RunConfig load_config(const std::filesystem::path& path);

/// `name` itself if it names a file, otherwise `<dir>/<name>.json` for the
/// directory in VOFRAC_CONFIG_DIR and then the bundled config directory.
std::filesystem::path resolve_config_path(const std::string& name);

/// Builds the order and problem; module precondition failures become ConfigError.
Problem make_problem(const RunConfig& cfg);

/// Mesh from N and either r or the mesh case.
Mesh make_run_mesh(const RunConfig& cfg, const VariableOrder& order);

/// Mesh case required by convergence studies.
MeshCase require_case(const RunConfig& cfg);

}  // namespace vofrac::cli
