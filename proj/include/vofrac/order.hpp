#pragma once

#include <cstddef>
#include <functional>

namespace vofrac {

/// Variable fractional order alpha(t) on [0, T] together with its derivative.
///
/// The derivative is supplied explicitly: the kernel K_s needs alpha'(s)
/// pointwise and numerical differentiation would pollute its accuracy.
/// Immutable after construction; the callables must be pure.
class VariableOrder {
 public:
  using Fn = std::function<double(double)>;

  /// Declared structure. `linear` (affine in t) enables the translation-invariant
  /// weight assembly; `constant` makes the history kernel vanish identically.
  enum class Shape { general, linear, constant };

  /// `alpha0` must agree with eval(0) to 1e-14.
  VariableOrder(Fn eval, Fn deriv, double alpha0, double horizon, Shape shape = Shape::general);

  double operator()(double t) const { return eval_(t); }
  double derivative(double t) const { return deriv_(t); }

  double alpha0() const noexcept { return alpha0_; }
  double alphaT() const noexcept { return alphaT_; }
  double horizon() const noexcept { return horizon_; }
  /// Minimum of alpha over 1001 uniform samples of [0, T].
  double lower_bound() const noexcept { return lower_bound_; }
  Shape shape() const noexcept { return shape_; }
  bool is_linear() const noexcept { return shape_ != Shape::general; }
  bool is_constant() const noexcept { return shape_ == Shape::constant; }

 private:
  Fn eval_;
  Fn deriv_;
  double alpha0_;
  double alphaT_;
  double horizon_;
  double lower_bound_;
  Shape shape_;
};

/// alpha(t) = a1 + (a0 - a1) * ((1 - x) - sin(2 pi (1 - x)) / (2 pi)), x = t / T.
/// alpha(0) = a0, alpha(T) = a1 and alpha' vanishes at both ends.
/// Requires a0 in (0, 1] and a1 in (0, 1).
VariableOrder make_sine_order(double a0, double a1, double horizon = 1.0);

/// Requires value in (0, 1].
VariableOrder make_constant_order(double value, double horizon = 1.0);

/// alpha(t) = a0 + slope * t. Requires alpha(0) in (0, 1] and alpha(T) in (0, 1].
VariableOrder make_linear_order(double a0, double slope, double horizon = 1.0);

struct OrderValidation {
  std::size_t samples = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  /// Largest |central difference - derivative| over 100 interior points.
  double max_derivative_discrepancy = 0.0;

  bool bounds_ok = false;      // 0 < alpha <= 1 at every sample
  bool interior_ok = false;    // alpha < 1 at every sample with t > 0
  bool derivative_ok = false;  // discrepancy <= 1e-6
  /// alpha(0) = 1 and alpha'(0) = 0: eligible for the smooth uniform-mesh case.
  bool smooth_case_eligible = false;
  /// alpha(0) = 1 but alpha'(0) != 0; outside both smooth-solution hypotheses.
  bool smooth_case_warning = false;

  bool passed() const noexcept { return bounds_ok && interior_ok && derivative_ok; }
};

/// Sampled check of the standing regularity/bounds assumptions on alpha.
/// Report-only: never throws for a bad order. `samples` >= 2.
OrderValidation validate_assumption_a(const VariableOrder& order, std::size_t samples = 1001);

}  // namespace vofrac
