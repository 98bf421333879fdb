#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "vofrac/errors.hpp"

#ifndef VOFRAC_BUNDLED_CONFIG_DIR
#define VOFRAC_BUNDLED_CONFIG_DIR ""
#endif

namespace vofrac::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <class T>
void read(const json& obj, const char* key, std::string_view where, T& target) {
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + ": wrong type");
  }
}

std::size_t read_count(const json& obj, const char* key, std::string_view where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ConfigError(std::string(where) + "." + key + ": expected a positive integer");
  }
  return v.get<std::size_t>();
}

double parse_number(std::string_view text) {
  const std::string copy(text);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + copy + "'");
  }
  return v;
}

}  // namespace

SourceSpec parse_source(std::string_view text) {
  const auto space = text.find(' ');
  const std::string_view head = text.substr(0, space);
  const std::string_view arg = space == std::string_view::npos ? std::string_view{} : text.substr(space + 1);
  if (head == "zero" && arg.empty()) return {SourceKind::zero, 0.0};
  if (head == "sin4" && arg.empty()) return {SourceKind::sin4, 0.0};
  if (head == "constant" && !arg.empty()) return {SourceKind::constant, parse_number(arg)};
  if (head == "linear" && !arg.empty()) return {SourceKind::linear, parse_number(arg)};
  throw ConfigError("problem.f: expected \"zero\", \"sin4\", \"constant <c>\" or \"linear <lambda>\", got \"" +
                    std::string(text) + "\"");
}

std::string to_string(const SourceSpec& s) {
  std::ostringstream out;
  out.precision(17);
  switch (s.kind) {
    case SourceKind::zero: return "zero";
    case SourceKind::sin4: return "sin4";
    case SourceKind::constant: out << "constant " << s.param; break;
    case SourceKind::linear: out << "linear " << s.param; break;
  }
  return out.str();
}

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(doc, "config",
                 {"id", "problem", "order", "mesh", "convergence", "quadrature", "newton", "assembly", "output"});

  RunConfig cfg;
  read(doc, "id", "config", cfg.id);
  if (cfg.id.empty()) throw ConfigError("config.id must not be empty");

  if (doc.contains("problem")) {
    const json& p = doc["problem"];
    reject_unknown(p, "problem", {"f", "u0", "T"});
    std::string f = to_string(cfg.source);
    read(p, "f", "problem", f);
    cfg.source = parse_source(f);
    read(p, "u0", "problem", cfg.u0);
    read(p, "T", "problem", cfg.T);
  }

  if (doc.contains("order")) {
    const json& o = doc["order"];
    reject_unknown(o, "order", {"family", "a0", "a1", "value", "slope"});
    read(o, "family", "order", cfg.order.family);
    const auto& fam = cfg.order.family;
    auto forbid = [&](const char* key) {
      if (o.contains(key)) throw ConfigError(std::string("order.") + key + " does not apply to family " + fam);
    };
    if (fam == "sine") {
      forbid("value");
      forbid("slope");
    } else if (fam == "constant") {
      forbid("a0");
      forbid("a1");
      forbid("slope");
    } else if (fam == "linear") {
      forbid("a1");
      forbid("value");
    } else {
      throw ConfigError("order.family: expected sine, constant or linear, got " + fam);
    }
    read(o, "a0", "order", cfg.order.alpha0);
    read(o, "a1", "order", cfg.order.alpha1);
    read(o, "value", "order", cfg.order.value);
    read(o, "slope", "order", cfg.order.slope);
  }

  if (doc.contains("mesh")) {
    const json& m = doc["mesh"];
    reject_unknown(m, "mesh", {"N", "r", "case"});
    if (m.contains("N")) cfg.mesh.N = read_count(m, "N", "mesh");
    if (m.contains("r")) {
      double r = 0.0;
      read(m, "r", "mesh", r);
      cfg.mesh.r = r;
    }
    if (m.contains("case")) {
      std::string name;
      read(m, "case", "mesh", name);
      cfg.mesh.mesh_case = parse_mesh_case(name);
      if (!cfg.mesh.mesh_case) throw ConfigError("mesh.case: expected I, II or III, got " + name);
    }
    if (cfg.mesh.r && cfg.mesh.mesh_case) throw ConfigError("mesh: give either r or case, not both");
  }

  if (doc.contains("convergence")) {
    const json& c = doc["convergence"];
    reject_unknown(c, "convergence", {"N_list", "ref_N"});
    if (c.contains("N_list")) {
      const json& list = c["N_list"];
      if (!list.is_array() || list.size() < 2) throw ConfigError("convergence.N_list: expected at least two entries");
      cfg.convergence.N_list.clear();
      for (const auto& v : list) {
        if (!v.is_number_integer() || v.get<long long>() < 1) {
          throw ConfigError("convergence.N_list: entries must be positive integers");
        }
        cfg.convergence.N_list.push_back(v.get<std::size_t>());
      }
    }
    if (c.contains("ref_N")) cfg.convergence.ref_N = read_count(c, "ref_N", "convergence");
  }

  if (doc.contains("quadrature")) {
    const json& q = doc["quadrature"];
    reject_unknown(q, "quadrature", {"nodes"});
    if (q.contains("nodes")) cfg.quad_nodes = read_count(q, "nodes", "quadrature");
  }

  if (doc.contains("newton")) {
    const json& n = doc["newton"];
    reject_unknown(n, "newton", {"tol", "max_iter", "damping"});
    read(n, "tol", "newton", cfg.newton.tol);
    read(n, "max_iter", "newton", cfg.newton.max_iter);
    read(n, "damping", "newton", cfg.newton.damping);
    if (!(cfg.newton.tol > 0.0) || cfg.newton.max_iter < 1) {
      throw ConfigError("newton: tol must be positive and max_iter at least 1");
    }
  }

  if (doc.contains("assembly")) {
    const json& a = doc["assembly"];
    reject_unknown(a, "assembly", {"fast_path", "workers", "f_term"});
    read(a, "fast_path", "assembly", cfg.fast_path);
    if (a.contains("workers")) {
      const json& w = a["workers"];
      if (!w.is_number_integer() || w.get<long long>() < 0) {
        throw ConfigError("assembly.workers: expected a non-negative integer");
      }
      cfg.workers = w.get<unsigned>();
    }
    if (a.contains("f_term")) {
      std::string mode;
      read(a, "f_term", "assembly", mode);
      if (mode == "exact") {
        cfg.f_term = FTermMode::exact_moments;
      } else if (mode == "quadrature") {
        cfg.f_term = FTermMode::quadrature;
      } else {
        throw ConfigError("assembly.f_term: expected exact or quadrature, got " + mode);
      }
    }
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    reject_unknown(o, "output", {"dir", "format"});
    read(o, "dir", "output", cfg.out_dir);
    if (o.contains("format")) {
      std::string fmt;
      read(o, "format", "output", fmt);
      if (fmt == "csv") {
        cfg.format = OutputFormat::csv;
      } else if (fmt == "json") {
        cfg.format = OutputFormat::json;
      } else {
        throw ConfigError("output.format: expected csv or json, got " + fmt);
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return parse_config(text.str());
}

std::filesystem::path resolve_config_path(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name)) return name;
  const char* const dirs[] = {std::getenv("VOFRAC_CONFIG_DIR"), VOFRAC_BUNDLED_CONFIG_DIR};
  for (const char* dir : dirs) {
    if (dir == nullptr || *dir == '\0') continue;
    const fs::path candidate = fs::path(dir) / (name + ".json");
    if (fs::is_regular_file(candidate)) return candidate;
  }
  return name;
}

Problem make_problem(const RunConfig& cfg) {
  try {
    const auto& o = cfg.order;
    VariableOrder order = o.family == "sine"       ? make_sine_order(o.alpha0, o.alpha1, cfg.T)
                          : o.family == "constant" ? make_constant_order(o.value, cfg.T)
                                                   : make_linear_order(o.alpha0, o.slope, cfg.T);
    if (!std::isfinite(cfg.u0)) throw ConfigError("problem.u0 must be finite");
    const double c = cfg.source.param;
    switch (cfg.source.kind) {
      case SourceKind::zero:
        return {[](double, double) { return 0.0; }, [](double, double) { return 0.0; }, cfg.u0, std::move(order)};
      case SourceKind::constant:
        return {[c](double, double) { return c; }, [](double, double) { return 0.0; }, cfg.u0, std::move(order)};
      case SourceKind::linear:
        return {[c](double u, double) { return c * u; }, [c](double, double) { return c; }, cfg.u0, std::move(order)};
      case SourceKind::sin4:
        break;
    }
    return {[](double u, double) { return 0.5 * std::pow(std::sin(u), 4); },
            [](double u, double) { return 2.0 * std::pow(std::sin(u), 3) * std::cos(u); }, cfg.u0, std::move(order)};
  } catch (const DomainError& e) {
    throw ConfigError(std::string("order: ") + e.what());
  }
}

Mesh make_run_mesh(const RunConfig& cfg, const VariableOrder& order) {
  if (!cfg.mesh.N) throw ConfigError("mesh.N is required");
  try {
    const double r = cfg.mesh.mesh_case ? grading_for_case(order, *cfg.mesh.mesh_case) : cfg.mesh.r.value_or(1.0);
    return make_mesh(cfg.T, *cfg.mesh.N, r);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("mesh: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("mesh: ") + e.what());
  }
}

MeshCase require_case(const RunConfig& cfg) {
  if (!cfg.mesh.mesh_case) throw ConfigError("converge: mesh.case (I, II or III) is required");
  return *cfg.mesh.mesh_case;
}

}  // namespace vofrac::cli
