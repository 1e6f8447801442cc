#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "helmdg/dg_assembly.hpp"

namespace helmdg {

/// Errors of a discrete field against the exact solution.
struct ErrorReport {
  double h1_semi = 0.0;        // |u - u_h|_{1,h}
  double dg_norm = 0.0;        // ||u - u_h||_{1,h}, 0 when no penalty was given
  double l2 = 0.0;             // ||u - u_h||
  double exact_h1_semi = 0.0;  // |u|_{H1}
  double exact_l2 = 0.0;       // ||u||
  double k = 0.0;
  double h = 0.0;
  std::string penalty_id;

  double rel_h1_semi() const { return h1_semi / exact_h1_semi; }
  double rel_dg_norm() const { return dg_norm / exact_h1_semi; }
  double rel_l2() const { return l2 / exact_l2; }
};

/// (Σ_K ||∇u - ∇u_h||²_K)^{1/2}.
double broken_h1_seminorm_error(const Mesh& mesh, const SolutionField& field, const HelmholtzProblem& problem,
                                const QuadratureSpec& quad = {}, Execution exec = Execution::serial);
double exact_h1_seminorm(const Mesh& mesh, const HelmholtzProblem& problem, const QuadratureSpec& quad = {});
double l2_error(const Mesh& mesh, const SolutionField& field, const HelmholtzProblem& problem,
                const QuadratureSpec& quad = {}, Execution exec = Execution::serial);
double exact_l2_norm(const Mesh& mesh, const HelmholtzProblem& problem, const QuadratureSpec& quad = {});

/// Full DG norm of u - u_h with weights |zeta|. Interior jumps come from u_h
/// alone; on Dirichlet edges the trace of u enters.
double dg_norm_error(const Mesh& mesh, const SolutionField& field, const HelmholtzProblem& problem,
                     const PenaltyConfig& penalty, const QuadratureSpec& quad = {},
                     Execution exec = Execution::serial);

/// Norms of a discrete field itself.
double broken_h1_seminorm(const Mesh& mesh, const SolutionField& field);
double dg_norm(const Mesh& mesh, const SolutionField& field, const PenaltyConfig& penalty);
double l2_norm(const Mesh& mesh, const SolutionField& field);

/// All of the above; dg_norm is filled only if a penalty is passed.
ErrorReport compute_errors(const Mesh& mesh, const SolutionField& field, const HelmholtzProblem& problem,
                           const PenaltyConfig* penalty = nullptr, const QuadratureSpec& quad = {},
                           Execution exec = Execution::serial);

/// Pieces of a_h(v, v) evaluated directly from the field:
///   a_h(v,v) = grad_sq - consistency - σ conj(consistency) + j0 + j1 + l1
/// where consistency = Σ_{E^ID} <{∂v/∂n}, [v]> and j0, j1, l1 carry the
/// complex multipliers.
struct FormEnergy {
  double grad_sq = 0.0;
  Complex consistency{};
  Complex j0{}, j1{}, l1{};
  Complex value(double sigma) const { return grad_sq - consistency - sigma * std::conj(consistency) + j0 + j1 + l1; }
};
FormEnergy form_energy(const Mesh& mesh, const SolutionField& v, const PenaltyConfig& penalty);

/// a_h(u, v) by edge and element quadrature, independent of the assembled matrix.
Complex evaluate_ah(const Mesh& mesh, const SolutionField& u, const SolutionField& v, const PenaltyConfig& penalty);

/// Residuals of the element and edge integral identities with weight
/// α(x) = x - center. Each residual comes with the sum of the magnitudes of
/// its terms, for scaling.
struct IdentityResidual {
  double residual = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? residual / scale : residual; }
};
struct RellichResiduals {
  std::vector<IdentityResidual> element_value;     // per element, |v|² weighted by α
  std::vector<IdentityResidual> element_gradient;  // per element, |∇v|² weighted by α
  std::vector<IdentityResidual> edge;              // per interior or Dirichlet edge, in E^ID order
  double max_relative() const;
};
RellichResiduals rellich_identity_residuals(const Mesh& mesh, const SolutionField& v, Point2 center = {0.0, 0.0});

/// Real and imaginary parts of
///   a_h(u_h,u_h) - k²||u_h||² + ik||u_h||²_{Γ_R} = (f,u_h) + <g,u_h>_{Γ_R}
/// for a solution of the discrete system, relative to |lhs| + |rhs|.
struct EnergyIdentityResiduals {
  double real = 0.0;
  double imag = 0.0;
  Complex lhs{};
  Complex rhs{};
  /// J0 + J1 + L1 + k||u_h||²_{Γ_R} with the imaginary parts of the multipliers.
  double jump_energy = 0.0;
};
EnergyIdentityResiduals discrete_energy_identities(const Mesh& mesh, const SolutionField& uh,
                                                   const HelmholtzProblem& problem, const PenaltyConfig& penalty,
                                                   const QuadratureSpec& quad = {});

/// The computable stability bound from the penalty parameters. Throws
/// InvalidParameter unless every gamma is real and positive on the edges used.
double theoretical_csta(const Mesh& mesh, const PenaltyConfig& penalty, double k);

/// Smallest C >= 0 with Re a_h(v,v) >= ||v||²_{1,h}/2 - C Im a_h(v,v) over
/// `samples` random fields; also reports whether Im a_h(v,v) >= 0 held.
struct CoercivityFit {
  double c = 0.0;
  double min_imag = 0.0;
  bool imag_nonnegative = true;
};
CoercivityFit fit_coercivity_constant(const Mesh& mesh, const PenaltyConfig& penalty, int samples,
                                      std::uint64_t seed);

/// r_i = a_h(u,φ_i) - k²(u,φ_i) + ik<u,φ_i>_{Γ_R} - (f,φ_i) - <g,φ_i>_{Γ_R}
/// for the exact solution, as max|r_i| / max|(f,φ_i) + <g,φ_i>|.
double consistency_residual(const Mesh& mesh, const HelmholtzProblem& problem, const PenaltyConfig& penalty,
                            const QuadratureSpec& quad = {});

/// Random complex DG field with components uniform in [-1,1] + i[-1,1].
SolutionField random_dg_field(const Mesh& mesh, std::uint64_t seed);

/// Samples of the DG field along the segment y = 0, x in [-1, 1]; points
/// on element boundaries take the value of the lowest-labelled element.
struct TracePoint {
  double x;
  Complex value;
};
std::vector<TracePoint> trace_along_x_axis(const Mesh& mesh, const SolutionField& field, int samples);

}  // namespace helmdg
