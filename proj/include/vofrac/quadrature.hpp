#pragma once

#include <cstddef>
#include <vector>

namespace vofrac {

/// Open quadrature rule on the unit interval: nodes strictly inside (0, 1),
/// increasing, positive weights summing to 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }

  /// Integral over [a, b] of f(a + (b - a) x).
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double len = b - a;
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * f(a + len * nodes[k]);
    return len * sum;
  }
};

/// Gauss-Legendre rule with `count` nodes mapped to (0, 1); exact for
/// polynomials of degree <= 2 count - 1. Throws DomainError for count == 0.
QuadratureRule gauss_nodes(std::size_t count);

}  // namespace vofrac
