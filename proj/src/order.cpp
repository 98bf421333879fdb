#include "vofrac/order.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

constexpr std::size_t kBoundSamples = 1001;
constexpr std::size_t kDerivativeSamples = 100;
constexpr double kDerivativeTol = 1e-6;

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  return os.str();
}

}  // namespace

VariableOrder::VariableOrder(Fn eval, Fn deriv, double alpha0, double horizon, Shape shape)
    : eval_(std::move(eval)),
      deriv_(std::move(deriv)),
      alpha0_(alpha0),
      horizon_(horizon),
      shape_(shape) {
  if (!eval_ || !deriv_) throw DomainError("VariableOrder: eval and deriv must be callable");
  if (!(horizon_ > 0.0)) throw DomainError(describe("VariableOrder: horizon must be positive", horizon_));
  if (std::fabs(eval_(0.0) - alpha0_) > 1e-14) {
    throw DomainError(describe("VariableOrder: declared alpha0 disagrees with alpha(0)", eval_(0.0)));
  }
  alphaT_ = eval_(horizon_);
  lower_bound_ = alpha0_;
  for (std::size_t k = 0; k < kBoundSamples; ++k) {
    const double t = horizon_ * static_cast<double>(k) / static_cast<double>(kBoundSamples - 1);
    lower_bound_ = std::min(lower_bound_, eval_(t));
  }
}

VariableOrder make_sine_order(double a0, double a1, double horizon) {
  if (!(a0 > 0.0 && a0 <= 1.0)) throw DomainError(describe("make_sine_order: a0 must lie in (0, 1]", a0));
  if (!(a1 > 0.0 && a1 < 1.0)) throw DomainError(describe("make_sine_order: a1 must lie in (0, 1)", a1));
  if (!(horizon > 0.0)) throw DomainError(describe("make_sine_order: horizon must be positive", horizon));
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double amp = a0 - a1;
  auto eval = [a1, amp, horizon](double t) {
    const double y = 1.0 - t / horizon;
    return a1 + amp * (y - std::sin(two_pi * y) / two_pi);
  };
  auto deriv = [amp, horizon](double t) {
    const double y = 1.0 - t / horizon;
    return amp * (std::cos(two_pi * y) - 1.0) / horizon;
  };
  const auto shape = amp == 0.0 ? VariableOrder::Shape::constant : VariableOrder::Shape::general;
  return VariableOrder(std::move(eval), std::move(deriv), a0, horizon, shape);
}

VariableOrder make_constant_order(double value, double horizon) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw DomainError(describe("make_constant_order: value must lie in (0, 1]", value));
  }
  return VariableOrder([value](double) { return value; }, [](double) { return 0.0; }, value, horizon,
                       VariableOrder::Shape::constant);
}

VariableOrder make_linear_order(double a0, double slope, double horizon) {
  const double aT = a0 + slope * horizon;
  if (!(a0 > 0.0 && a0 <= 1.0)) throw DomainError(describe("make_linear_order: alpha(0) must lie in (0, 1]", a0));
  if (!(aT > 0.0 && aT <= 1.0)) throw DomainError(describe("make_linear_order: alpha(T) must lie in (0, 1]", aT));
  const auto shape = slope == 0.0 ? VariableOrder::Shape::constant : VariableOrder::Shape::linear;
  return VariableOrder([a0, slope](double t) { return a0 + slope * t; }, [slope](double) { return slope; }, a0,
                       horizon, shape);
}

OrderValidation validate_assumption_a(const VariableOrder& order, std::size_t samples) {
  OrderValidation report;
  samples = std::max<std::size_t>(samples, 2);
  report.samples = samples;

  const double T = order.horizon();
  report.min_value = INFINITY;
  report.max_value = -INFINITY;
  bool interior_ok = true;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double a = order(t);
    report.min_value = std::min(report.min_value, a);
    report.max_value = std::max(report.max_value, a);
    if (k > 0 && !(a < 1.0)) interior_ok = false;
  }
  report.bounds_ok = report.min_value > 0.0 && report.max_value <= 1.0;
  report.interior_ok = interior_ok;

  const double h = 1e-6 * T;
  double worst = 0.0;
  for (std::size_t k = 1; k <= kDerivativeSamples; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(kDerivativeSamples + 1);
    const double fd = (order(t + h) - order(t - h)) / (2.0 * h);
    worst = std::max(worst, std::fabs(fd - order.derivative(t)));
  }
  report.max_derivative_discrepancy = worst;
  report.derivative_ok = worst <= kDerivativeTol;

  const bool starts_at_one = std::fabs(order.alpha0() - 1.0) <= 1e-14;
  const bool flat_start = std::fabs(order.derivative(0.0)) <= 1e-12;
  report.smooth_case_eligible = starts_at_one && flat_start;
  report.smooth_case_warning = starts_at_one && !flat_start;
  return report;
}

}  // namespace vofrac
