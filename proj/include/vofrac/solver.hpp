#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vofrac/assembly.hpp"
#include "vofrac/mesh.hpp"
#include "vofrac/order.hpp"
#include "vofrac/quadrature.hpp"

namespace vofrac {

/// D^{alpha(t)} u = f(u, t) on (0, T], u(0) = u0, with T = order.horizon().
struct Problem {
  std::function<double(double, double)> f;      // f(u, t)
  std::function<double(double, double)> df_du;  // partial f / partial u
  double u0 = 0.0;
  VariableOrder order;

  double horizon() const { return order.horizon(); }
};

/// Largest |central difference in u - df_du| over a grid of (u, t) samples.
/// Advisory consistency check for hand-written derivatives.
double derivative_consistency(const Problem& problem, double u_min, double u_max, std::size_t samples = 20);

struct NewtonConfig {
  double tol = 1e-10;  // stop when |dx| <= tol (1 + |x|)
  int max_iter = 50;
  bool damping = false;  // halve steps until |g| decreases
};

/// Piecewise-linear collocation solution.
struct Solution {
  Mesh mesh;
  std::vector<double> values;         // U(t_i), i = 0..N
  std::vector<int> newton_iterations;  // per node; entry 0 is 0

  /// Piecewise-linear interpolant; exact at nodes.
  double operator()(double t) const;
};

struct NodeResult {
  double value = 0.0;
  int iterations = 0;
};

/// Solves the collocation equation of node n given U(t_0..t_{n-1}) and the
/// matching f values. Newton starts from U(t_{n-1}).
/// Throws NewtonDiverged or SingularJacobian (both carry the node index).
NodeResult solve_node(const Problem& problem, const WeightTable& weights, std::span<const double> values,
                      std::span<const double> f_values, std::size_t n, const NewtonConfig& cfg = {});

/// Marches n = 1..N over an already assembled table.
Solution solve(const Problem& problem, const WeightTable& weights, const NewtonConfig& cfg = {});

/// Assembles the weights for `mesh` and marches.
Solution solve(const Problem& problem, const Mesh& mesh, const QuadratureRule& rule, const NewtonConfig& cfg = {},
               const AssemblyOptions& options = {});

enum class SourceForm {
  composed,      // f(U(s), s): residual of the continuous equation
  interpolated,  // piecewise-linear interpolant of f(U(t_i), t_i), as in the scheme
};

/// Residual of the Volterra equation at t in (0, T] for the piecewise-linear
/// `solution`, with both integrals computed by `fine_rule` per cell. The
/// cell ending at t uses a power substitution that removes the weak and the
/// logarithmic singularity. With the interpolated source the residual at a
/// node is the collocation residual. Diagnostic only.
double vie_residual(const Problem& problem, const Solution& solution, double t, const QuadratureRule& fine_rule,
                    SourceForm source = SourceForm::composed);

}  // namespace vofrac
