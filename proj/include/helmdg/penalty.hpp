#pragma once

#include <functional>
#include <string>

#include "helmdg/mesh.hpp"
#include "helmdg/types.hpp"

namespace helmdg {

/// Complex multipliers of the three penalty families on one edge:
///   zeta0/h_e <[u],[v]>,  zeta1 h_e <[∂u/∂n],[∂v/∂n]>,  zetaB/h_e <[∂u/∂τ],[∂v/∂τ]>.
/// With real parameters gamma0, gamma1, beta1 these are i*gamma0, i*gamma1, i*beta1.
struct EdgePenalty {
  Complex zeta0{};
  Complex zeta1{};
  Complex zetaB{};
};

/// Context a penalty rule may depend on.
struct EdgeContext {
  EdgeKind kind;
  double h_e;
  double k;
};

/// A real penalty parameter given either as a fixed value or as the
/// (k^2 h)^(2/3) gamma1^(1/3) scaling rule.
using PenaltyRule = std::function<Complex(const EdgeContext&)>;

/// Per-edge penalty multipliers plus the symmetry parameter sigma.
class PenaltyConfig {
 public:
  PenaltyConfig(std::string id, double k, PenaltyRule zeta0, PenaltyRule zeta1, PenaltyRule zetaB,
                double sigma = 1.0);

  /// gamma1 = 0.1, gamma0 = (k^2 h)^(2/3) gamma1^(1/3), beta1 = 1.
  static PenaltyConfig preset_a(double k, double sigma = 1.0);
  /// i*gamma1 = -0.07 + 0.01i, gamma0 = 100, beta1 = 1.
  static PenaltyConfig preset_b(double k, double sigma = 1.0);
  /// By name: "A" or "B".
  static PenaltyConfig preset(const std::string& name, double k);
  /// Constant parameters; every multiplier is i times the given value.
  static PenaltyConfig constant(double k, Complex gamma0, Complex gamma1, Complex beta1, double sigma = 1.0,
                                std::string id = "custom");
  /// All multipliers zero: the plain symmetric interior penalty form without stabilization.
  static PenaltyConfig none(double k, double sigma = 1.0);

  EdgePenalty at(const Edge& e) const;
  /// Real norm weights |zeta| for the DG norm.
  EdgePenalty norm_weights(const Edge& e) const;

  double sigma() const { return sigma_; }
  double k() const { return k_; }
  const std::string& id() const { return id_; }

 private:
  std::string id_;
  double k_;
  PenaltyRule zeta0_, zeta1_, zetaB_;
  double sigma_;
};

/// gamma0 = (k^2 h)^(2/3) gamma1^(1/3).
double gamma0_scaling_rule(double k, double h, double gamma1);

/// Parses "a+bi", "a-bi", "bi", "a" into a complex number.
Complex parse_complex(const std::string& text);
/// Formats as "re+imi" with 12 significant digits.
std::string format_complex(Complex z);

}  // namespace helmdg
