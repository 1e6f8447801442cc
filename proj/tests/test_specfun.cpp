#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "helmdg/specfun.hpp"

using namespace helmdg;

namespace {
// Power series in long double, summed until terms vanish.
long double series_j(int order, long double x) {
  const long double q = -x * x / 4.0L;
  long double term = order == 0 ? 1.0L : x / 2.0L;
  long double sum = term;
  for (int n = 1; n < 400; ++n) {
    term *= q / (static_cast<long double>(n) * (n + order));
    sum += term;
    if (std::fabs(term) < 1e-30L * std::fabs(sum) && n > 10) break;
  }
  return sum;
}
}  // namespace

TEST_CASE("J0 and J1 values") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j1(0.0) == 0.0);
  CHECK(std::abs(bessel_j0(1.0) - 0.7651976865579666) < 1e-10);
  CHECK(std::abs(bessel_j1(1.0) - 0.4400505857449335) < 1e-10);
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-9);
}

TEST_CASE("first zero of J0 by bisection on the series oracle") {
  long double a = 2.0L, b = 3.0L;
  for (int i = 0; i < 100; ++i) {
    const long double c = 0.5L * (a + b);
    (series_j(0, a) * series_j(0, c) <= 0 ? b : a) = c;
  }
  CHECK(std::abs(static_cast<double>(a) - 2.404825557695773) < 1e-13);
  CHECK(std::abs(bessel_j0(static_cast<double>(a))) < 1e-12);
}

TEST_CASE("agreement with the series oracle on [0, 20]") {
  double worst = 0.0;
  for (double x = 0.0; x <= 20.0; x += 0.0137) {
    worst = std::max(worst, std::abs(bessel_j0(x) - static_cast<double>(series_j(0, x))));
    worst = std::max(worst, std::abs(bessel_j1(x) - static_cast<double>(series_j(1, x))));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("agreement with std::cyl_bessel_j on [0, 500]") {
  double worst = 0.0;
  for (double x = 0.0; x <= 500.0; x += 0.0731) {
    worst = std::max(worst, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
    worst = std::max(worst, std::abs(bessel_j1(x) - std::cyl_bessel_j(1.0, x)));
  }
  CHECK(worst < 1e-10);
  // Continuity across the series/asymptotic switch.
  for (double x : {11.999999, 12.0, 12.000001})
    CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) < 1e-12);
}

TEST_CASE("symmetry") {
  for (double x : {0.3, 5.0, 17.0, 230.0}) {
    CHECK(bessel_j0(-x) == bessel_j0(x));
    CHECK(bessel_j1(-x) == -bessel_j1(x));
  }
}

TEST_CASE("derivative identities by central differences") {
  const double d = 1e-5;
  for (double x : {0.5, 2.0, 10.0}) {
    const double dj0 = (bessel_j0(x + d) - bessel_j0(x - d)) / (2 * d);
    CHECK(std::abs(dj0 + bessel_j1(x)) < 1e-6);
  }
  for (double x = 0.5; x <= 50.0; x += 0.25) {
    const double dj1 = (bessel_j1(x + d) - bessel_j1(x - d)) / (2 * d);
    CHECK(std::abs(dj1 - (bessel_j0(x) - bessel_j1(x) / x)) < 1e-6);
  }
}

TEST_CASE("non-finite input") {
  CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(bessel_j1(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(sinc_scaled(1.0, std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("sinc_scaled") {
  CHECK(sinc_scaled(7.0, 0.0) == 7.0);
  CHECK(std::abs(sinc_scaled(M_PI, 1.0)) < 1e-14);
  const long double k = 10.0L, r = 1e-8L;
  const double direct = static_cast<double>(std::sin(k * r) / r);
  CHECK(std::abs(sinc_scaled(10.0, 1e-8) - direct) < 1e-12 * direct);
  // Both branches meet at the switch kr = 1e-2.
  for (double r2 : {0.9999e-3, 1.0001e-3}) {
    const long double exact = std::sin(10.0L * r2) / r2;
    CHECK(std::abs(sinc_scaled(10.0, r2) - static_cast<double>(exact)) < 1e-12 * static_cast<double>(exact));
  }
}
