#pragma once

#include <array>
#include <vector>

#include "helmdg/types.hpp"

namespace helmdg {

/// Rule on the reference triangle. Points are barycentric; weights sum to 1,
/// so ∫_K f ≈ |K| Σ w_q f(x_q).
struct TriangleRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Rule on [0, 1]; weights sum to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Exact for polynomials of total degree `degree`: 1-point, 3-point, the
/// 7-point degree-5 rule, and a collapsed Gauss product beyond that.
TriangleRule triangle_rule(int degree);

/// Composite rule on s^2 congruent sub-triangles.
TriangleRule subdivide(const TriangleRule& rule, int s);

/// n-point Gauss-Legendre on [0, 1] (exact to degree 2n-1).
LineRule gauss_legendre(int n);

/// Composite rule on s equal segments.
LineRule subdivide(const LineRule& rule, int s);

/// Quadrature choices for integrals involving data (f, g, exact solution).
/// Polynomial-only terms always use exact low-order rules.
struct QuadratureSpec {
  int degree = 5;       // volume rule degree
  int edge_points = 4;  // Gauss points per edge
  /// Elements with k*h above this are integrated on ceil(k*h/max_kh)^2
  /// sub-triangles. Non-positive disables subdivision.
  double max_kh = 1.0;

  /// Same spec with twice the volume degree and edge points.
  QuadratureSpec doubled() const { return {2 * degree, 2 * edge_points, max_kh}; }
};

/// Resolved rules for one mesh and wave number.
struct QuadratureSet {
  TriangleRule volume;
  LineRule edge;
  int subdivisions = 1;

  static QuadratureSet make(const QuadratureSpec& spec, double k, double h);
};

}  // namespace helmdg
