#include <doctest.h>

#include <cmath>
#include <random>

#include "helmdg/problem.hpp"
#include "helmdg/specfun.hpp"

using namespace helmdg;

namespace {
Complex fd_residual(const HelmholtzProblem& p, Point2 x, double d) {
  const Complex lap = (p.exact_u({x.x + d, x.y}) + p.exact_u({x.x - d, x.y}) + p.exact_u({x.x, x.y + d}) +
                       p.exact_u({x.x, x.y - d}) - 4.0 * p.exact_u(x)) /
                      (d * d);
  const double k = p.k();
  return -lap - k * k * p.exact_u(x) - p.source_f(x);
}
}  // namespace

TEST_CASE("Bessel problem: coefficient and point values") {
  const double k = 10.0;
  const BesselHexagonProblem p(k);
  const Complex c = Complex(std::cos(k), std::sin(k)) /
                    (k * Complex(std::cyl_bessel_j(0.0, k), std::cyl_bessel_j(1.0, k)));
  CHECK(std::abs(p.coefficient() - c) < 1e-12 * std::abs(c));
  CHECK(std::abs(p.exact_u({0, 0}) - (1.0 / k - c)) < 1e-12);
  const Complex u1 = std::cos(k) / k - c * std::cyl_bessel_j(0.0, k);
  CHECK(std::abs(p.exact_u({1, 0}) - u1) < 1e-10);
  // Depends on r only.
  const Point2 q{0.31, -0.47};
  CHECK(p.exact_u(q) == p.exact_u({-q.x, q.y}));
  CHECK(p.exact_u(q) == p.exact_u({q.y, q.x}));
}

TEST_CASE("Bessel problem: gradient") {
  const BesselHexagonProblem p(10.0);
  const CVec2 g0 = p.exact_grad_u({0, 0});
  CHECK(g0.x == Complex{});
  CHECK(g0.y == Complex{});
  const Point2 x{0.3, 0.4};
  const double d = 1e-6;
  const CVec2 g = p.exact_grad_u(x);
  const Complex fx = (p.exact_u({x.x + d, x.y}) - p.exact_u({x.x - d, x.y})) / (2 * d);
  const Complex fy = (p.exact_u({x.x, x.y + d}) - p.exact_u({x.x, x.y - d})) / (2 * d);
  CHECK(std::abs(g.x - fx) < 1e-6);
  CHECK(std::abs(g.y - fy) < 1e-6);
  // Radial: the gradient is parallel to x.
  const Complex z = g.x * x.y - g.y * x.x;
  CHECK(std::abs(z) < 1e-14 * std::sqrt(norm_sq(g)));
}

TEST_CASE("Bessel problem: PDE residual at random points") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-0.85, 0.85);
  for (double k : {5.0, 10.0, 20.0}) {
    const BesselHexagonProblem p(k);
    for (int i = 0; i < 20; ++i) {
      const Point2 x{u(rng), u(rng)};
      const double scale = std::abs(p.source_f(x)) + k * k * std::abs(p.exact_u(x));
      CHECK(std::abs(fd_residual(p, x, 1e-4)) < 1e-4 * scale);
    }
  }
}

TEST_CASE("Bessel problem: source and Robin data") {
  const double k = 7.0;
  const BesselHexagonProblem p(k);
  CHECK(p.source_f({0, 0}) == k);
  CHECK(std::abs(p.source_f({M_PI / k, 0})) < 1e-13);
  const Complex g = p.robin_g({1, 0}, {1, 0});
  CHECK(std::abs(g - (p.radial_derivative(1.0) + I * k * p.exact_u({1, 0}))) < 1e-14);
  const Point2 x{0.5, 0.5 * std::sqrt(3.0)};
  const Vec2 n{0.8, 0.6};
  CHECK(std::abs(p.robin_g(x, n) - (dot(p.exact_grad_u(x), n) + I * k * p.exact_u(x))) < 1e-14);
  CHECK_THROWS_AS(BesselHexagonProblem(0.0), InvalidParameter);
  CHECK_THROWS_AS(BesselHexagonProblem(-1.0), InvalidParameter);
}

TEST_CASE("plane wave problem") {
  const double k = 6.0, theta = 0.3;
  const PlaneWaveProblem p(k, theta);
  const Point2 x{0.2, -0.7};
  const Vec2 d{std::cos(theta), std::sin(theta)};
  CHECK(std::abs(p.exact_u(x) - std::exp(I * k * dot(d, x))) < 1e-15);
  CHECK(p.source_f(x) == Complex{});
  CHECK(std::abs(fd_residual(p, x, 1e-4)) < 1e-4 * k * k);
  CHECK(p.dirichlet_u(x) == p.exact_u(x));
}

TEST_CASE("homogeneous problem has zero data") {
  const HomogeneousProblem p(3.0);
  CHECK(p.exact_u({0.1, 0.2}) == Complex{});
  CHECK(p.robin_g({1, 0}, {1, 0}) == Complex{});
  CHECK(p.source_f({0.1, 0.2}) == Complex{});
}
