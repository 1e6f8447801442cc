#include <doctest.h>

#include <cmath>

#include "helmdg/penalty.hpp"
#include "helmdg/quadrature.hpp"

using namespace helmdg;

namespace {
// ∫ over the reference triangle of λ1^a λ2^b = a! b! / (a + b + 2)!, divided by its area 1/2.
double monomial_mean(int a, int b) {
  return 2.0 * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

double apply(const TriangleRule& r, int a, int b) {
  double s = 0.0;
  for (std::size_t q = 0; q < r.points.size(); ++q)
    s += r.weights[q] * std::pow(r.points[q][1], a) * std::pow(r.points[q][2], b);
  return s;
}
}  // namespace

TEST_CASE("triangle rules integrate monomials up to their degree") {
  for (int degree : {1, 2, 3, 5, 7, 10}) {
    const auto r = triangle_rule(degree);
    CHECK(r.degree >= degree);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) CHECK(std::abs(apply(r, a, b) - monomial_mean(a, b)) < 1e-14);
    double w = 0.0;
    for (double x : r.weights) w += x;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("subdivided rules stay exact") {
  const auto r = subdivide(triangle_rule(5), 3);
  CHECK(r.points.size() == 9 * 7);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b) CHECK(std::abs(apply(r, a, b) - monomial_mean(a, b)) < 1e-14);
}

TEST_CASE("Gauss-Legendre on [0,1]") {
  for (int n : {1, 2, 3, 4, 8}) {
    const auto r = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int q = 0; q < n; ++q) s += r.weights[q] * std::pow(r.points[q], p);
      CHECK(std::abs(s - 1.0 / (p + 1)) < 1e-14);
    }
  }
  const auto s = subdivide(gauss_legendre(2), 4);
  double sum = 0.0;
  for (std::size_t q = 0; q < s.points.size(); ++q) sum += s.weights[q] * std::pow(s.points[q], 3);
  CHECK(std::abs(sum - 0.25) < 1e-15);
  CHECK_THROWS_AS(gauss_legendre(0), InvalidParameter);
}

TEST_CASE("quadrature set subdivides when kh exceeds the limit") {
  CHECK(QuadratureSet::make({}, 10.0, 0.05).subdivisions == 1);
  CHECK(QuadratureSet::make({}, 30.0, 0.25).subdivisions == 8);
  QuadratureSpec off;
  off.max_kh = 0.0;
  CHECK(QuadratureSet::make(off, 30.0, 0.25).subdivisions == 1);
  const auto d = QuadratureSpec{}.doubled();
  CHECK(d.degree == 10);
  CHECK(d.edge_points == 8);
}

TEST_CASE("penalty presets") {
  const double k = 20.0, h = 0.05;
  Edge e;
  e.length = h;
  const auto a = PenaltyConfig::preset_a(k).at(e);
  CHECK(std::abs(a.zeta1 - I * 0.1) < 1e-15);
  CHECK(std::abs(a.zetaB - I) < 1e-15);
  CHECK(std::abs(a.zeta0 - I * std::pow(k * k * h, 2.0 / 3.0) * std::cbrt(0.1)) < 1e-13);
  const auto b = PenaltyConfig::preset_b(k).at(e);
  CHECK(std::abs(b.zeta1 - Complex(-0.07, 0.01)) < 1e-16);
  CHECK(std::abs(b.zeta0 - I * 100.0) < 1e-13);
  CHECK(std::abs(b.zetaB - I) < 1e-16);
  const auto w = PenaltyConfig::preset_b(k).norm_weights(e);
  CHECK(w.zeta1.real() == doctest::Approx(std::hypot(0.07, 0.01)));
  CHECK(PenaltyConfig::preset("B", k).id() == "B");
  CHECK_THROWS_AS(PenaltyConfig::preset("C", k), InvalidParameter);
  CHECK_THROWS_AS(PenaltyConfig::preset_a(0.0), InvalidParameter);
  // gamma1 = 0.01 + 0.07i gives the same multiplier as preset B.
  const auto c = PenaltyConfig::constant(k, 100.0, Complex(0.01, 0.07), 1.0).at(e);
  CHECK(std::abs(c.zeta1 - b.zeta1) < 1e-16);
}

TEST_CASE("complex number parsing") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0));
  CHECK(parse_complex("-0.07+0.01i") == Complex(-0.07, 0.01));
  CHECK(parse_complex("0.01 - 0.07i") == Complex(0.01, -0.07));
  CHECK(parse_complex("2i") == Complex(0, 2));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("1e-3+2e+1i") == Complex(1e-3, 20));
  CHECK_THROWS_AS(parse_complex("abc"), InvalidParameter);
  CHECK_THROWS_AS(parse_complex(""), InvalidParameter);
  CHECK(parse_complex(format_complex(Complex(-0.07, 0.01))) == Complex(-0.07, 0.01));
}
