#include "helmdg/problem.hpp"

#include <cmath>

#include "helmdg/specfun.hpp"

namespace helmdg {

namespace {
constexpr double kCenterRadius = 1e-12;
}

HelmholtzProblem::HelmholtzProblem(double k) : k_(k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidParameter("wave number must be positive");
}

Complex HelmholtzProblem::robin_g(Point2 p, Vec2 n) const {
  return dot(exact_grad_u(p), n) + I * k() * exact_u(p);
}

BesselHexagonProblem::BesselHexagonProblem(double k) : HelmholtzProblem(k) {
  const Complex denom{bessel_j0(k), bessel_j1(k)};
  if (std::abs(denom) <= 1e-8) throw InvalidParameter("J0(k) + i J1(k) vanishes");
  c_ = Complex{std::cos(k), std::sin(k)} / (k * denom);
}

Complex BesselHexagonProblem::exact_u(Point2 p) const {
  const double r = norm(p);
  return std::cos(k() * r) / k() - c_ * bessel_j0(k() * r);
}

Complex BesselHexagonProblem::radial_derivative(double r) const {
  return -std::sin(k() * r) + c_ * k() * bessel_j1(k() * r);
}

CVec2 BesselHexagonProblem::exact_grad_u(Point2 p) const {
  const double r = norm(p);
  if (r < kCenterRadius) return {};
  const Complex ur = radial_derivative(r);
  return {ur * (p.x / r), ur * (p.y / r)};
}

Complex BesselHexagonProblem::source_f(Point2 p) const { return sinc_scaled(k(), norm(p)); }

PlaneWaveProblem::PlaneWaveProblem(double k, double theta)
    : HelmholtzProblem(k), d_{std::cos(theta), std::sin(theta)} {}

Complex PlaneWaveProblem::exact_u(Point2 p) const { return std::exp(I * (k() * dot(d_, p))); }

CVec2 PlaneWaveProblem::exact_grad_u(Point2 p) const {
  const Complex iku = I * k() * exact_u(p);
  return {iku * d_.x, iku * d_.y};
}

}  // namespace helmdg
