#pragma once

// Real-argument special functions used by the kernels and the analytic oracles.

namespace vofrac {

/// Gamma function. Throws PoleError at 0, -1, -2, ...
double gamma(double x);

/// Reciprocal gamma, defined as 0 at the poles of gamma.
double rgamma(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x) for x > 0. Throws DomainError otherwise.
double digamma(double x);

struct MLParams {
  double p = 1.0;     // index scale, > 0
  double q = 1.0;     // offset
  double tol = 1e-12; // relative truncation tolerance, > 0
};

/// Two-parameter Mittag-Leffler function E_{p,q}(z) by direct power series.
///
/// Terms are accumulated until one falls below tol * (1 + |partial sum|) on the
/// decreasing tail of the series. Intended for moderate |z| (<= 50); large
/// negative arguments lose accuracy to cancellation. Throws ConvergenceError
/// after 10^4 terms.
double mittag_leffler(const MLParams& params, double z);

}  // namespace vofrac
