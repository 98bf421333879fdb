#pragma once

#include <cmath>

#include "vofrac/order.hpp"
#include "vofrac/specialfns.hpp"

namespace vofrac {

// Kernels of the second-kind Volterra equation equivalent to the
// variable-order Caputo problem:
//
//   u(t) - int_0^t K_s(t,s) u(s) ds - u0 t^{a(t)-a(0)} / Gamma(1+a(t)-a(0))
//        = 1/Gamma(a(t)) int_0^t f(u(s),s) (t-s)^{a(t)-1} ds
//
// with K(t,s) = (t-s)^{a(t)-a(s)} / Gamma(1 + a(t) - a(s)).

namespace detail {

// Kernel pieces in terms of d = a(t) - a(s), ds = a'(s) and v = t - s > 0.
// The power is formed as exp(d ln v) so that it tends to 1 as v -> 0.

inline double kernel_k(double d, double v) { return std::exp(d * std::log(v)) / std::tgamma(1.0 + d); }

inline double kernel_ks(double d, double ds, double v) {
  if (d == 0.0 && ds == 0.0) return 0.0;
  const double log_v = std::log(v);
  const double k = std::exp(d * log_v) / std::tgamma(1.0 + d);
  return k * (ds * (digamma(1.0 + d) - log_v) - d / v);
}

}  // namespace detail

/// K(t, s) for 0 <= s < t. Throws DomainError if s >= t.
double kernel_K(const VariableOrder& order, double t, double s);

/// Signed partial derivative dK/ds for 0 <= s < t; exactly 0 for constant order.
/// Diverges like ln(t - s) as s -> t. Throws DomainError if s >= t.
double kernel_Ks(const VariableOrder& order, double t, double s);

/// u0 t^{a(t)-a(0)} / Gamma(1 + a(t) - a(0)); equals u0 at t = 0.
double initial_coefficient(const VariableOrder& order, double t, double u0);

/// |numerical - closed form| for the Beta-type identity
///   int_s^t (t-y)^{a(t)-1} (y-s)^{-a(s)} dy
///     = Gamma(a(t)) Gamma(1-a(s)) / Gamma(1+a(t)-a(s)) (t-s)^{a(t)-a(s)},
/// with both endpoint singularities removed by power substitutions.
/// Requires 0 <= s < t and a(s) < 1. Diagnostic only.
double inversion_identity_check(const VariableOrder& order, double t, double s);

}  // namespace vofrac
