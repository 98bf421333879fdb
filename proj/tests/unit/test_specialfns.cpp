#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vofrac/errors.hpp"
#include "vofrac/specialfns.hpp"

using namespace vofrac;

namespace {

// Euler's constant from the harmonic sum with Euler-Maclaurin tail corrections.
double euler_gamma_oracle() {
  const int n = 1000;
  double h = 0.0;
  for (int k = n; k >= 1; --k) h += 1.0 / k;
  const double dn = n;
  return h - std::log(dn) - 1.0 / (2.0 * dn) + 1.0 / (12.0 * dn * dn) - 1.0 / (120.0 * std::pow(dn, 4));
}

}  // namespace

TEST_CASE("gamma at integers and half-integers") {
  CHECK(vofrac::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(vofrac::gamma(4.0) == doctest::Approx(6.0).epsilon(1e-15));
  const double g = vofrac::gamma(0.5);
  CHECK(std::fabs(g * g - std::numbers::pi) <= 1e-12);
}

TEST_CASE("gamma rejects poles") {
  CHECK_THROWS_AS(vofrac::gamma(0.0), PoleError);
  CHECK_THROWS_AS(vofrac::gamma(-3.0), PoleError);
  CHECK_NOTHROW(vofrac::gamma(-2.5));
  CHECK(rgamma(-2.0) == 0.0);
  CHECK(rgamma(0.0) == 0.0);
}

TEST_CASE("gamma matches an independent implementation on [0.1, 30]") {
  for (int k = 0; k <= 600; ++k) {
    const double x = 0.1 + (30.0 - 0.1) * k / 600.0;
    const double ref = boost::math::tgamma(x);
    CHECK(std::fabs(vofrac::gamma(x) - ref) <= 1e-13 * std::fabs(ref));
  }
}

TEST_CASE("digamma special values") {
  const double psi1 = digamma(1.0);
  CHECK(std::fabs(psi1 + euler_gamma_oracle()) <= 1e-12);
  CHECK(std::fabs(psi1 + 0.57721566490153286) <= 1e-12);
  CHECK(std::fabs(digamma(2.0) - (psi1 + 1.0)) <= 1e-14);
  // Duplication: psi(1/2) = psi(1) - 2 ln 2.
  CHECK(std::fabs(digamma(0.5) - (psi1 - 2.0 * std::log(2.0))) <= 1e-12);
}

TEST_CASE("digamma domain") {
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-1.5), DomainError);
}

TEST_CASE("digamma matches an independent implementation on [0.1, 30]") {
  for (int k = 0; k <= 600; ++k) {
    const double x = 0.1 + (30.0 - 0.1) * k / 600.0;
    CHECK(std::fabs(digamma(x) - boost::math::digamma(x)) <= 1e-12);
  }
}

TEST_CASE("recurrences hold at random points") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> dist(0.1, 20.0);
  for (int k = 0; k < 100; ++k) {
    const double x = dist(rng);
    CHECK(std::fabs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-11);
    CHECK(std::fabs(vofrac::gamma(x + 1.0) - x * vofrac::gamma(x)) <= 1e-11 * vofrac::gamma(x + 1.0));
  }
}

TEST_CASE("Mittag-Leffler reduces to elementary functions") {
  CHECK(std::fabs(mittag_leffler({1.0, 1.0, 1e-12}, 1.0) - std::exp(1.0)) <= 1e-11);
  CHECK(mittag_leffler({0.5, 1.0, 1e-12}, 0.0) == 1.0);
  CHECK(mittag_leffler({2.7, 1.0, 1e-12}, 0.0) == 1.0);
  CHECK(std::fabs(mittag_leffler({2.0, 1.0, 1e-12}, 1.0) - std::cosh(1.0)) <= 1e-11);
  // E_{2,1}(z^2) = cosh z at a second point.
  CHECK(std::fabs(mittag_leffler({2.0, 1.0, 1e-12}, 2.25) - std::cosh(1.5)) <= 1e-11);
  // E_{1/2,1}(-z) = exp(z^2) erfc(z).
  for (double z : {0.1, 0.5, 1.0, 2.0}) {
    const double ref = std::exp(z * z) * std::erfc(z);
    CHECK(std::fabs(mittag_leffler({0.5, 1.0, 1e-14}, -z) - ref) <= 1e-11);
  }
  // E_{1,2}(z) = (e^z - 1) / z.
  CHECK(std::fabs(mittag_leffler({1.0, 2.0, 1e-14}, 0.7) - std::expm1(0.7) / 0.7) <= 1e-13);
}

TEST_CASE("Mittag-Leffler E_{1,1} is exp on [-5, 5]") {
  for (int k = 0; k <= 100; ++k) {
    const double z = -5.0 + 10.0 * k / 100.0;
    CHECK(std::fabs(mittag_leffler({1.0, 1.0, 1e-12}, z) - std::exp(z)) <= 1e-10);
  }
}

TEST_CASE("Mittag-Leffler with a pole in the first terms") {
  // q = 0: the k = 0 term vanishes and E_{1,0}(z) = z e^z.
  CHECK(std::fabs(mittag_leffler({1.0, 0.0, 1e-14}, 0.8) - 0.8 * std::exp(0.8)) <= 1e-13);
}

TEST_CASE("Mittag-Leffler errors") {
  CHECK_THROWS_AS(mittag_leffler({0.0, 1.0, 1e-12}, 1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler({1.0, 1.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler({0.01, 1.0, 1e-12}, 50.0), ConvergenceError);
}
