#pragma once

#include <memory>
#include <string>

#include "helmdg/types.hpp"

namespace helmdg {

/// Data of -Δu - k²u = f, ∂u/∂n + iku = g on the Robin boundary, u = u_D on
/// the Dirichlet boundary, together with a known exact solution.
class HelmholtzProblem {
 public:
  explicit HelmholtzProblem(double k);
  virtual ~HelmholtzProblem() = default;

  double k() const { return k_; }

  virtual Complex exact_u(Point2 p) const = 0;
  virtual CVec2 exact_grad_u(Point2 p) const = 0;
  virtual Complex source_f(Point2 p) const = 0;

  /// ∇u·n + iku.
  virtual Complex robin_g(Point2 p, Vec2 n) const;
  virtual Complex dirichlet_u(Point2 p) const { return exact_u(p); }
  virtual std::string name() const = 0;

 private:
  double k_;
};

/// The radial test problem on the hexagon:
///   u = cos(kr)/k - c J0(kr),  c = (cos k + i sin k) / (k (J0(k) + i J1(k))),
///   f = sin(kr)/r.
class BesselHexagonProblem final : public HelmholtzProblem {
 public:
  explicit BesselHexagonProblem(double k);

  Complex coefficient() const { return c_; }
  Complex exact_u(Point2 p) const override;
  CVec2 exact_grad_u(Point2 p) const override;
  Complex source_f(Point2 p) const override;
  /// du/dr as a function of the radius.
  Complex radial_derivative(double r) const;
  std::string name() const override { return "bessel-hexagon"; }

 private:
  Complex c_;
};

/// u = exp(i k d·x), d = (cos θ, sin θ); f = 0.
class PlaneWaveProblem final : public HelmholtzProblem {
 public:
  PlaneWaveProblem(double k, double theta);

  Complex exact_u(Point2 p) const override;
  CVec2 exact_grad_u(Point2 p) const override;
  Complex source_f(Point2) const override { return 0.0; }
  std::string name() const override { return "plane-wave"; }

 private:
  Vec2 d_;
};

/// f = 0, g = 0, u_D = 0: the exact solution vanishes.
class HomogeneousProblem final : public HelmholtzProblem {
 public:
  using HelmholtzProblem::HelmholtzProblem;

  Complex exact_u(Point2) const override { return 0.0; }
  CVec2 exact_grad_u(Point2) const override { return {}; }
  Complex source_f(Point2) const override { return 0.0; }
  std::string name() const override { return "homogeneous"; }
};

}  // namespace helmdg
