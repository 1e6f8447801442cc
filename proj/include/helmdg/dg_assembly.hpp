#pragma once

#include <array>
#include <span>
#include <vector>

#include "helmdg/linalg.hpp"
#include "helmdg/mesh.hpp"
#include "helmdg/penalty.hpp"
#include "helmdg/problem.hpp"
#include "helmdg/quadrature.hpp"

namespace helmdg {

/// Discontinuous P1: three element-local nodal basis functions per element,
/// global index 3 e + j for local vertex j of element e.
class DGSpace {
 public:
  explicit DGSpace(const Mesh& mesh) : mesh_(&mesh) {}

  const Mesh& mesh() const { return *mesh_; }
  Index size() const { return 3 * mesh_->num_elements(); }
  static Index dof(Index element, int local) { return 3 * element + local; }

 private:
  const Mesh* mesh_;
};

/// Conforming P1 on vertices. Dirichlet vertices carry no unknown.
class FEMSpace {
 public:
  explicit FEMSpace(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }
  Index size() const { return num_free_; }
  /// Unknown index of a vertex, -1 for Dirichlet vertices.
  Index dof(Index vertex) const { return dof_[vertex]; }

 private:
  const Mesh* mesh_;
  std::vector<Index> dof_;
  Index num_free_ = 0;
};

enum class SpaceKind { dg, fem };

/// Coefficients of a discrete field. DG fields hold 3 values per element;
/// FEM fields hold one value per mesh vertex (Dirichlet vertices included).
struct SolutionField {
  SpaceKind kind = SpaceKind::dg;
  ComplexVector coefficients;

  /// Nodal values on element e in local vertex order.
  std::array<Complex, 3> local_values(const Mesh& mesh, Index e) const;
  /// Checks the coefficient count against the mesh.
  void validate(const Mesh& mesh) const;
};

/// Constant gradients of the three barycentric functions of element e.
std::array<Vec2, 3> basis_gradients(const Mesh& mesh, Index e);

/// Local index (0..2) of a mesh vertex in element e, -1 if absent.
int local_vertex(const Mesh& mesh, Index e, Index vertex);

struct LinearSystem {
  SparseComplexMatrix matrix;
  ComplexVector rhs;
};

/// M[i][j] = a_h(φ_j, φ_i): broken stiffness, symmetric-interior-penalty
/// consistency terms and the three penalty families.
SparseComplexMatrix assemble_ah(const DGSpace& space, const PenaltyConfig& penalty,
                                Execution exec = Execution::serial);

/// Element mass matrix (φ_j, φ_i)_Ω.
SparseComplexMatrix assemble_mass(const DGSpace& space, Execution exec = Execution::serial);

/// Robin boundary mass <φ_j, φ_i>_{Γ_R}.
SparseComplexMatrix assemble_robin_boundary(const DGSpace& space);

/// A = a_h - k² M + i k B and rhs_i = (f, φ_i) + <g, φ_i>_{Γ_R} plus the weak
/// Dirichlet data terms.
LinearSystem assemble_full_system(const DGSpace& space, const HelmholtzProblem& problem,
                                  const PenaltyConfig& penalty, const QuadratureSpec& quad = {},
                                  Execution exec = Execution::serial);

/// Right-hand side only (see assemble_full_system).
ComplexVector assemble_rhs(const DGSpace& space, const HelmholtzProblem& problem, const PenaltyConfig& penalty,
                           const QuadratureSpec& quad = {}, Execution exec = Execution::serial);

/// Conforming P1 Galerkin system; Dirichlet values are lifted into the rhs.
LinearSystem assemble_fem_system(const FEMSpace& space, const HelmholtzProblem& problem,
                                 const QuadratureSpec& quad = {});

/// Expands a solution vector of the FEM system to a per-vertex field.
SolutionField fem_field(const FEMSpace& space, const HelmholtzProblem& problem, std::span<const Complex> x);

/// Nodal interpolant of the exact solution, one value per vertex.
SolutionField fe_interpolate(const HelmholtzProblem& problem, const FEMSpace& space);

/// The same piecewise linear function written in the DG basis.
SolutionField inject_into_dg(const Mesh& mesh, const SolutionField& fem);

/// rhs_i = a_h(u, φ_i) + i k <u, φ_i>_{Γ_R} for the exact solution u.
ComplexVector elliptic_projection_rhs(const HelmholtzProblem& problem, const DGSpace& space,
                                      const PenaltyConfig& penalty, const QuadratureSpec& quad = {});

/// A_ah + i k B, the operator of the elliptic projection.
SparseComplexMatrix elliptic_projection_matrix(const DGSpace& space, const PenaltyConfig& penalty);

}  // namespace helmdg
