#include "vofrac/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "vofrac/errors.hpp"

namespace vofrac {

QuadratureRule gauss_nodes(std::size_t count) {
  if (count == 0) throw DomainError("gauss_nodes: count must be positive");

  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const std::size_t n = count;
  const std::size_t half = (n + 1) / 2;

  // Newton on P_n from the Chebyshev-like initial guess; nodes are symmetric.
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      // P_n' from P_n and P_{n-1}.
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-16 * (1.0 + std::fabs(x))) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    // x > 0 here; map [-1, 1] -> (0, 1). Lower node written as (1 - x)/2 directly.
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

}  // namespace vofrac
