#include "vofrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "vofrac/errors.hpp"
#include "vofrac/kernel.hpp"

namespace vofrac {

namespace {

constexpr double kSingularJacobian = 1e-14;
constexpr int kMaxHalvings = 30;

std::string node_message(const char* what, std::size_t n, double residual) {
  std::ostringstream os;
  os << what << " at node " << n << " (residual " << residual << ")";
  return os.str();
}

}  // namespace

double derivative_consistency(const Problem& problem, double u_min, double u_max, std::size_t samples) {
  samples = std::max<std::size_t>(samples, 2);
  const double T = problem.horizon();
  double worst = 0.0;
  for (std::size_t a = 0; a < samples; ++a) {
    const double u = u_min + (u_max - u_min) * static_cast<double>(a) / static_cast<double>(samples - 1);
    const double h = 1e-6 * (1.0 + std::fabs(u));
    for (std::size_t b = 0; b < samples; ++b) {
      const double t = T * static_cast<double>(b) / static_cast<double>(samples - 1);
      const double fd = (problem.f(u + h, t) - problem.f(u - h, t)) / (2.0 * h);
      worst = std::max(worst, std::fabs(fd - problem.df_du(u, t)));
    }
  }
  return worst;
}

double Solution::operator()(double t) const {
  const auto& x = mesh.nodes;
  if (t <= x.front()) return values.front();
  if (t >= x.back()) return values.back();
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());  // x[i-1] <= t < x[i]
  if (t == x[i - 1]) return values[i - 1];
  const double theta = (t - x[i - 1]) / (x[i] - x[i - 1]);
  return (1.0 - theta) * values[i - 1] + theta * values[i];
}

NodeResult solve_node(const Problem& problem, const WeightTable& weights, std::span<const double> values,
                      std::span<const double> f_values, std::size_t n, const NewtonConfig& cfg) {
  if (n < 1 || n > weights.size() || values.size() < n || f_values.size() < n) {
    throw std::out_of_range("solve_node: node index or history size out of range");
  }
  const double tn = weights.mesh().t(n);

  double known = initial_coefficient(problem.order, tn, problem.u0);
  for (std::size_t i = 0; i < n; ++i) known += weights.h(n, i) * values[i] + weights.f_weight(n, i) * f_values[i];

  const double a = 1.0 - weights.h(n, n);
  const double w = weights.f_weight(n, n);
  const auto residual = [&](double x) { return a * x - w * problem.f(x, tn) - known; };

  double x = values[n - 1];
  double g = residual(x);
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    const double slope = a - w * problem.df_du(x, tn);
    if (!(std::fabs(slope) >= kSingularJacobian)) {
      throw SingularJacobian(node_message("singular Newton derivative", n, g), n, g);
    }
    const double dx = -g / slope;
    double step = 1.0;
    double next = x + dx;
    double g_next = residual(next);
    if (cfg.damping) {
      for (int k = 0; k < kMaxHalvings && std::fabs(g_next) > std::fabs(g); ++k) {
        step *= 0.5;
        next = x + step * dx;
        g_next = residual(next);
      }
    }
    if (!std::isfinite(next) || !std::isfinite(g_next)) {
      throw NewtonDiverged(node_message("non-finite Newton iterate", n, g), n, g);
    }
    x = next;
    g = g_next;
    if (std::fabs(step * dx) <= cfg.tol * (1.0 + std::fabs(x))) return {x, iter};
  }
  throw NewtonDiverged(node_message("Newton iteration limit reached", n, g), n, g);
}

Solution solve(const Problem& problem, const WeightTable& weights, const NewtonConfig& cfg) {
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1) throw DomainError("NewtonConfig: tol must be > 0 and max_iter >= 1");
  const Mesh& mesh = weights.mesh();
  Solution sol;
  sol.mesh = mesh;
  sol.values.assign(mesh.N + 1, 0.0);
  sol.newton_iterations.assign(mesh.N + 1, 0);
  std::vector<double> f_values(mesh.N + 1, 0.0);

  sol.values[0] = problem.u0;
  f_values[0] = problem.f(problem.u0, 0.0);
  for (std::size_t n = 1; n <= mesh.N; ++n) {
    const NodeResult r = solve_node(problem, weights, sol.values, f_values, n, cfg);
    sol.values[n] = r.value;
    sol.newton_iterations[n] = r.iterations;
    f_values[n] = problem.f(r.value, mesh.t(n));
  }
  return sol;
}

Solution solve(const Problem& problem, const Mesh& mesh, const QuadratureRule& rule, const NewtonConfig& cfg,
               const AssemblyOptions& options) {
  return solve(problem, assemble(problem.order, mesh, rule, options), cfg);
}

double vie_residual(const Problem& problem, const Solution& solution, double t, const QuadratureRule& fine_rule,
                    SourceForm source) {
  const Mesh& mesh = solution.mesh;
  if (!(t > 0.0 && t <= mesh.T)) throw DomainError("vie_residual: t must lie in (0, T]");
  const VariableOrder& order = problem.order;
  const double at = order(t);
  const double rg = 1.0 / std::tgamma(at);

  const auto it = std::lower_bound(mesh.nodes.begin() + 1, mesh.nodes.end(), t);
  const std::size_t last = static_cast<std::size_t>(it - mesh.nodes.begin());  // t_{last-1} < t <= t_last

  std::vector<double> f_nodes;
  if (source == SourceForm::interpolated) {
    for (std::size_t i = 0; i <= last; ++i) f_nodes.push_back(problem.f(solution.values[i], mesh.t(i)));
  }
  // f along cell j, either composed with U or interpolated from the nodes.
  const auto f_at = [&](std::size_t j, double s, double u) {
    if (source == SourceForm::composed) return problem.f(u, s);
    const double theta = (s - mesh.t(j - 1)) / mesh.tau(j);
    return (1.0 - theta) * f_nodes[j - 1] + theta * f_nodes[j];
  };

  double integral = 0.0;
  for (std::size_t j = 1; j < last; ++j) {
    integral += fine_rule.integrate(
        [&](double s) {
          const double u = solution(s);
          const double v = t - s;
          return detail::kernel_ks(at - order(s), order.derivative(s), v) * u +
                 rg * f_at(j, s, u) * std::pow(v, at - 1.0);
        },
        mesh.t(j - 1), mesh.t(j));
  }

  // Piece [t_{last-1}, t]: t - s = L x^p with p alpha(t) = 4.
  const double len = t - mesh.t(last - 1);
  const double p = 4.0 / at;
  double piece = 0.0;
  for (std::size_t k = 0; k < fine_rule.size(); ++k) {
    const double x = fine_rule.nodes[k];
    const double v = len * std::pow(x, p);
    const double s = t - v;
    const double u = solution(s);
    const double jac = p * len * std::pow(x, p - 1.0);
    const double weak = p * std::pow(len, at) * std::pow(x, p * at - 1.0);  // v^{a-1} * jac
    piece += fine_rule.weights[k] *
             (detail::kernel_ks(at - order(s), order.derivative(s), v) * u * jac + rg * f_at(last, s, u) * weak);
  }
  integral += piece;

  return solution(t) - integral - initial_coefficient(order, t, problem.u0);
}

}  // namespace vofrac
