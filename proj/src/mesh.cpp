#include "vofrac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {
constexpr double kUnitTol = 1e-14;
bool starts_at_one(const VariableOrder& order) { return std::fabs(order.alpha0() - 1.0) <= kUnitTol; }
}  // namespace

double Mesh::max_step() const {
  return steps.size() < 2 ? 0.0 : *std::max_element(steps.begin() + 1, steps.end());
}

Mesh make_mesh(double T, std::size_t N, double r) {
  if (!(T > 0.0)) throw DomainError("make_mesh: T must be positive, got " + std::to_string(T));
  if (N == 0) throw DomainError("make_mesh: N must be at least 1");
  if (!(r >= 1.0)) throw DomainError("make_mesh: grading r must be >= 1, got " + std::to_string(r));

  Mesh mesh;
  mesh.T = T;
  mesh.N = N;
  mesh.r = r;
  mesh.nodes.resize(N + 1);
  mesh.steps.assign(N + 1, 0.0);
  // Closed form per node; no cumulative sums.
  for (std::size_t i = 0; i <= N; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(N);
    mesh.nodes[i] = r == 1.0 ? T * x : T * std::pow(x, r);
  }
  mesh.nodes[0] = 0.0;
  mesh.nodes[N] = T;
  for (std::size_t i = 1; i <= N; ++i) mesh.steps[i] = mesh.nodes[i] - mesh.nodes[i - 1];
  return mesh;
}

std::string_view to_string(MeshCase c) {
  switch (c) {
    case MeshCase::I: return "I";
    case MeshCase::II: return "II";
    case MeshCase::III: return "III";
  }
  return "?";
}

std::optional<MeshCase> parse_mesh_case(std::string_view text) {
  if (text == "I") return MeshCase::I;
  if (text == "II") return MeshCase::II;
  if (text == "III") return MeshCase::III;
  return std::nullopt;
}

double grading_for_case(const VariableOrder& order, MeshCase c) {
  const bool one = starts_at_one(order);
  switch (c) {
    case MeshCase::I:
      if (!one) throw PreconditionError("mesh case I requires alpha(0) = 1");
      return 1.0;
    case MeshCase::II:
      if (one) throw PreconditionError("mesh case II requires alpha(0) < 1");
      return 1.0 / order.alpha0();
    case MeshCase::III:
      if (one) throw PreconditionError("mesh case III requires alpha(0) < 1");
      return 1.0;
  }
  throw PreconditionError("unknown mesh case");
}

double predicted_rate(const VariableOrder& order, MeshCase c) {
  return c == MeshCase::III ? 2.0 * order.alpha0() : 2.0;
}

}  // namespace vofrac
