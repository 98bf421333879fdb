#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "vofrac/order.hpp"

namespace vofrac {

/// Graded partition t_i = T (i/N)^r of [0, T]; r = 1 is the uniform mesh.
struct Mesh {
  double T = 1.0;
  std::size_t N = 0;
  double r = 1.0;
  std::vector<double> nodes;  // N + 1 entries, nodes[0] = 0, nodes[N] = T
  std::vector<double> steps;  // N + 1 entries, steps[i] = t_i - t_{i-1}; steps[0] unused (0)

  double t(std::size_t i) const { return nodes[i]; }
  double tau(std::size_t i) const { return steps[i]; }
  double max_step() const;
  bool is_uniform() const noexcept { return r == 1.0; }
};

/// Throws DomainError unless T > 0, N >= 1 and r >= 1.
Mesh make_mesh(double T, std::size_t N, double r);

/// Solution-regularity regimes:
///   I   alpha(0) = 1, alpha'(0) = 0, uniform mesh
///   II  alpha(0) < 1, graded with r = 1 / alpha(0)
///   III alpha(0) < 1, uniform mesh
enum class MeshCase { I, II, III };

std::string_view to_string(MeshCase c);
std::optional<MeshCase> parse_mesh_case(std::string_view text);

/// Grading exponent prescribed for `c`. Throws PreconditionError when the
/// case disagrees with alpha(0).
double grading_for_case(const VariableOrder& order, MeshCase c);

/// Convergence-rate prediction for the case: 2 for I and II, 2 alpha(0) for III.
double predicted_rate(const VariableOrder& order, MeshCase c);

}  // namespace vofrac
