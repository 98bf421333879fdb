#include "vofrac/kernel.hpp"

#include <cmath>
#include <sstream>

#include "vofrac/errors.hpp"
#include "vofrac/quadrature.hpp"

namespace vofrac {

namespace {

void require_ordered(const char* op, double t, double s) {
  if (!(s < t)) {
    std::ostringstream os;
    os << op << ": requires s < t (t = " << t << ", s = " << s << ")";
    throw DomainError(os.str());
  }
}

const QuadratureRule& identity_rule() {
  static const QuadratureRule rule = gauss_nodes(64);
  return rule;
}

}  // namespace

double kernel_K(const VariableOrder& order, double t, double s) {
  require_ordered("kernel_K", t, s);
  return detail::kernel_k(order(t) - order(s), t - s);
}

double kernel_Ks(const VariableOrder& order, double t, double s) {
  require_ordered("kernel_Ks", t, s);
  return detail::kernel_ks(order(t) - order(s), order.derivative(s), t - s);
}

double initial_coefficient(const VariableOrder& order, double t, double u0) {
  if (t == 0.0 || u0 == 0.0) return u0;
  if (!(t > 0.0)) throw DomainError("initial_coefficient: t must be non-negative");
  const double d = order(t) - order.alpha0();
  return u0 * std::exp(d * std::log(t)) / std::tgamma(1.0 + d);
}

double inversion_identity_check(const VariableOrder& order, double t, double s) {
  require_ordered("inversion_identity_check", t, s);
  const double at = order(t);
  const double as = order(s);
  if (!(as < 1.0)) throw DomainError("inversion_identity_check: requires alpha(s) < 1");

  const double half = 0.5 * (t - s);
  const QuadratureRule& rule = identity_rule();

  // Left half: the singular part g(s) (y - s)^{-a(s)} with g(y) = (t - y)^{a(t)-1} is
  // integrated exactly; the remainder vanishes like (y - s)^{1-a(s)} and takes
  // y - s = half * x^p with p (2 - a(s)) = 2.
  const auto g = [&](double y) { return std::pow(t - y, at - 1.0); };
  const double gs = g(s);
  const double p = 2.0 / (2.0 - as);
  double left = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double x = rule.nodes[k];
    const double xp = std::pow(x, p);
    left += rule.weights[k] * std::pow(x, p * (1.0 - as) - 1.0) * (g(s + half * xp) - gs);
  }
  left *= p * std::pow(half, 1.0 - as);
  left += gs * std::pow(half, 1.0 - as) / (1.0 - as);

  // Right half: t - y = half * x^q with q a(t) = 1 cancels (t - y)^{a(t)-1}.
  const double q = 1.0 / at;
  double right = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double x = rule.nodes[k];
    const double y = t - half * std::pow(x, q);
    right += rule.weights[k] * std::pow(y - s, -as);
  }
  right *= q * std::pow(half, at);

  const double closed = std::tgamma(at) * std::tgamma(1.0 - as) / std::tgamma(1.0 + at - as) *
                        std::exp((at - as) * std::log(t - s));
  return std::fabs(left + right - closed);
}

}  // namespace vofrac
