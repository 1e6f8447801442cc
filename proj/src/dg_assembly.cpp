#include "helmdg/dg_assembly.hpp"

#include <algorithm>
#include <numeric>

namespace helmdg {

// ---------------------------------------------------------------------------
// Spaces and fields

FEMSpace::FEMSpace(const Mesh& mesh) : mesh_(&mesh), dof_(mesh.num_vertices(), -1) {
  const auto& dv = mesh.dirichlet_vertices();
  for (Index v = 0; v < mesh.num_vertices(); ++v)
    if (!dv[v]) dof_[v] = num_free_++;
}

void SolutionField::validate(const Mesh& mesh) const {
  const Index expected = kind == SpaceKind::dg ? 3 * mesh.num_elements() : mesh.num_vertices();
  if (static_cast<Index>(coefficients.size()) != expected)
    throw InvalidParameter("solution field length does not match its space");
}

std::array<Complex, 3> SolutionField::local_values(const Mesh& mesh, Index e) const {
  if (kind == SpaceKind::dg) return {coefficients[3 * e], coefficients[3 * e + 1], coefficients[3 * e + 2]};
  const auto& v = mesh.elements()[e].vertices;
  return {coefficients[v[0]], coefficients[v[1]], coefficients[v[2]]};
}

std::array<Vec2, 3> basis_gradients(const Mesh& mesh, Index e) {
  const auto p = mesh.element_points(e);
  const double two_area = 2.0 * mesh.elements()[e].area;
  std::array<Vec2, 3> g;
  for (int j = 0; j < 3; ++j) {
    const Point2 a = p[(j + 1) % 3], b = p[(j + 2) % 3];
    // Inward normal of the opposite edge scaled by its length.
    g[j] = Vec2{a.y - b.y, b.x - a.x} / two_area;
  }
  return g;
}

int local_vertex(const Mesh& mesh, Index e, Index vertex) {
  const auto& v = mesh.elements()[e].vertices;
  for (int j = 0; j < 3; ++j)
    if (v[j] == vertex) return j;
  return -1;
}

namespace {

// ---------------------------------------------------------------------------
// Edge trace data

/// One side of an edge: element, jump sign, average weight, and the normal
/// and tangential derivatives and edge-trace coordinates of its basis functions.
struct EdgeSide {
  Index element = -1;
  double sign = 1.0;
  double avg = 1.0;
  std::array<double, 3> dn{};
  std::array<double, 3> dt{};
  // Which edge endpoint (0 or 1) each local vertex sits on, -1 if off the edge.
  std::array<int, 3> endpoint{-1, -1, -1};

  /// φ_j at parameter t along the edge (t = 0 at vertices[0]).
  double trace(int j, double t) const {
    if (endpoint[j] == 0) return 1.0 - t;
    if (endpoint[j] == 1) return t;
    return 0.0;
  }
};

struct EdgeTraces {
  std::array<EdgeSide, 2> side;
  int count = 1;
};

EdgeTraces edge_traces(const Mesh& mesh, const Edge& edge) {
  EdgeTraces tr;
  tr.count = edge.is_interior() ? 2 : 1;
  const double avg = edge.is_interior() ? 0.5 : 1.0;
  for (int s = 0; s < tr.count; ++s) {
    auto& side = tr.side[s];
    side.element = s == 0 ? edge.plus : edge.minus;
    side.sign = s == 0 ? 1.0 : -1.0;
    side.avg = avg;
    const auto g = basis_gradients(mesh, side.element);
    const auto& v = mesh.elements()[side.element].vertices;
    for (int j = 0; j < 3; ++j) {
      side.dn[j] = dot(g[j], edge.normal);
      side.dt[j] = dot(g[j], edge.tangent);
      side.endpoint[j] = v[j] == edge.vertices[0] ? 0 : (v[j] == edge.vertices[1] ? 1 : -1);
    }
  }
  return tr;
}

Point2 edge_point(const Mesh& mesh, const Edge& edge, double t) {
  const Point2 a = mesh.points()[edge.vertices[0]], b = mesh.points()[edge.vertices[1]];
  return a + (b - a) * t;
}

Point2 element_point(const std::array<Point2, 3>& p, const std::array<double, 3>& lambda) {
  return p[0] * lambda[0] + p[1] * lambda[1] + p[2] * lambda[2];
}

const LineRule& gauss2() {
  static const LineRule rule = gauss_legendre(2);
  return rule;
}

// ---------------------------------------------------------------------------
// Local kernels

/// Local block of the edge terms of a_h, (3 count)^2 entries, row = test.
std::size_t edge_block(const Mesh& mesh, const Edge& edge, const PenaltyConfig& penalty, Triplet* out) {
  if (edge.kind == EdgeKind::robin) return 0;
  const auto tr = edge_traces(mesh, edge);
  const auto z = penalty.at(edge);
  const double sigma = penalty.sigma();
  const double len = edge.length;
  const bool interior = edge.is_interior();
  const auto& g = gauss2();

  std::size_t n = 0;
  for (int sa = 0; sa < tr.count; ++sa)
    for (int a = 0; a < 3; ++a) {
      const auto& A = tr.side[sa];
      for (int sb = 0; sb < tr.count; ++sb)
        for (int b = 0; b < 3; ++b) {
          const auto& B = tr.side[sb];
          double int_a = 0.0, int_b = 0.0, int_ab = 0.0;
          for (std::size_t q = 0; q < g.points.size(); ++q) {
            const double ta = A.trace(a, g.points[q]), tb = B.trace(b, g.points[q]);
            int_a += g.weights[q] * ta;
            int_b += g.weights[q] * tb;
            int_ab += g.weights[q] * ta * tb;
          }
          int_a *= len;
          int_b *= len;
          int_ab *= len;
          const double ss = A.sign * B.sign;
          Complex v = -(B.avg * B.dn[b]) * A.sign * int_a - sigma * B.sign * int_b * (A.avg * A.dn[a]);
          v += z.zeta0 / len * (ss * int_ab);
          if (interior) v += z.zeta1 * (len * len * ss * A.dn[a] * B.dn[b]);
          v += z.zetaB * (ss * A.dt[a] * B.dt[b]);
          out[n++] = {DGSpace::dof(A.element, a), DGSpace::dof(B.element, b), v};
        }
    }
  return n;
}

std::size_t edge_block_size(const Edge& edge) {
  switch (edge.kind) {
    case EdgeKind::interior: return 36;
    case EdgeKind::dirichlet: return 9;
    case EdgeKind::robin: return 0;
  }
  return 0;
}

void stiffness_block(const Mesh& mesh, Index e, Triplet* out) {
  const auto g = basis_gradients(mesh, e);
  const double area = mesh.elements()[e].area;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out[3 * a + b] = {DGSpace::dof(e, a), DGSpace::dof(e, b), area * dot(g[a], g[b])};
}

void mass_block(const Mesh& mesh, Index e, Triplet* out) {
  const double area = mesh.elements()[e].area;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      out[3 * a + b] = {DGSpace::dof(e, a), DGSpace::dof(e, b), area / 12.0 * (a == b ? 2.0 : 1.0)};
}

/// Runs body(i) for i in [0, n), serially or with OpenMP. Each index writes
/// only its own output slots, so both paths give identical results.
template <class F>
void for_each_index(Index n, Execution exec, F&& body) {
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) body(i);
  } else {
    for (Index i = 0; i < n; ++i) body(i);
  }
}

// ---------------------------------------------------------------------------
// Right-hand side pieces

/// Volume load (f, φ_j) on element e.
std::array<Complex, 3> volume_load(const Mesh& mesh, Index e, const HelmholtzProblem& problem,
                                   const TriangleRule& rule) {
  const auto p = mesh.element_points(e);
  const double area = mesh.elements()[e].area;
  std::array<Complex, 3> r{};
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const auto& l = rule.points[q];
    const Complex f = problem.source_f(element_point(p, l)) * (rule.weights[q] * area);
    for (int j = 0; j < 3; ++j) r[j] += f * l[j];
  }
  return r;
}

/// Boundary data terms for the test functions of the single adjacent element:
/// Robin: <g, φ>; Dirichlet: -σ<u_D, ∂φ/∂n> + ζ0/h <u_D, φ> + ζB/h <∂u_D/∂τ, ∂φ/∂τ>.
std::array<Complex, 3> boundary_load(const Mesh& mesh, const Edge& edge, const HelmholtzProblem& problem,
                                     const PenaltyConfig& penalty, const LineRule& rule) {
  std::array<Complex, 3> r{};
  if (edge.is_interior()) return r;
  const auto tr = edge_traces(mesh, edge);
  const auto& side = tr.side[0];
  const double len = edge.length;
  if (edge.kind == EdgeKind::robin) {
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double t = rule.points[q];
      const Complex gq = problem.robin_g(edge_point(mesh, edge, t), edge.normal) * (rule.weights[q] * len);
      for (int j = 0; j < 3; ++j) r[j] += gq * side.trace(j, t);
    }
    return r;
  }
  const auto z = penalty.at(edge);
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double t = rule.points[q];
    const Point2 x = edge_point(mesh, edge, t);
    const double w = rule.weights[q] * len;
    const Complex ud = problem.dirichlet_u(x);
    const Complex dtu = dot(problem.exact_grad_u(x), edge.tangent);
    for (int j = 0; j < 3; ++j)
      r[j] += w * (-penalty.sigma() * ud * side.dn[j] + z.zeta0 / len * ud * side.trace(j, t) +
                   z.zetaB / len * dtu * side.dt[j]);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrices

SparseComplexMatrix assemble_ah(const DGSpace& space, const PenaltyConfig& penalty, Execution exec) {
  const Mesh& mesh = space.mesh();
  const Index ne = mesh.num_elements();
  const Index nedge = mesh.num_edges();
  std::vector<std::size_t> offset(nedge + 1, 9 * static_cast<std::size_t>(ne));
  for (Index i = 0; i < nedge; ++i) offset[i + 1] = offset[i] + edge_block_size(mesh.edges()[i]);
  std::vector<Triplet> t(offset.back());

  for_each_index(ne, exec, [&](Index e) { stiffness_block(mesh, e, &t[9 * e]); });
  for_each_index(nedge, exec, [&](Index i) { edge_block(mesh, mesh.edges()[i], penalty, &t[offset[i]]); });
  return SparseComplexMatrix::from_triplets(space.size(), t);
}

SparseComplexMatrix assemble_mass(const DGSpace& space, Execution exec) {
  const Mesh& mesh = space.mesh();
  std::vector<Triplet> t(9 * mesh.num_elements());
  for_each_index(mesh.num_elements(), exec, [&](Index e) { mass_block(mesh, e, &t[9 * e]); });
  return SparseComplexMatrix::from_triplets(space.size(), t);
}

SparseComplexMatrix assemble_robin_boundary(const DGSpace& space) {
  const Mesh& mesh = space.mesh();
  std::vector<Triplet> t;
  for (Index i : mesh.edge_sets().robin) {
    const auto& edge = mesh.edges()[i];
    const auto tr = edge_traces(mesh, edge);
    const auto& s = tr.side[0];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (s.endpoint[a] < 0 || s.endpoint[b] < 0) continue;
        t.push_back({DGSpace::dof(s.element, a), DGSpace::dof(s.element, b),
                     edge.length / 6.0 * (a == b ? 2.0 : 1.0)});
      }
  }
  return SparseComplexMatrix::from_triplets(space.size(), t);
}

ComplexVector assemble_rhs(const DGSpace& space, const HelmholtzProblem& problem, const PenaltyConfig& penalty,
                           const QuadratureSpec& quad, Execution exec) {
  const Mesh& mesh = space.mesh();
  const auto rules = QuadratureSet::make(quad, problem.k(), mesh.h());
  ComplexVector rhs(space.size());
  for_each_index(mesh.num_elements(), exec, [&](Index e) {
    const auto r = volume_load(mesh, e, problem, rules.volume);
    for (int j = 0; j < 3; ++j) rhs[DGSpace::dof(e, j)] = r[j];
  });

  // Boundary edges may share an element, so local vectors are summed afterwards in edge order.
  const auto& sets = mesh.edge_sets();
  std::vector<Index> boundary(sets.robin);
  boundary.insert(boundary.end(), sets.dirichlet.begin(), sets.dirichlet.end());
  std::sort(boundary.begin(), boundary.end());
  std::vector<std::array<Complex, 3>> local(boundary.size());
  for_each_index(static_cast<Index>(boundary.size()), exec, [&](Index i) {
    local[i] = boundary_load(mesh, mesh.edges()[boundary[i]], problem, penalty, rules.edge);
  });
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const Index e = mesh.edges()[boundary[i]].plus;
    for (int j = 0; j < 3; ++j) rhs[DGSpace::dof(e, j)] += local[i][j];
  }
  return rhs;
}

LinearSystem assemble_full_system(const DGSpace& space, const HelmholtzProblem& problem,
                                  const PenaltyConfig& penalty, const QuadratureSpec& quad, Execution exec) {
  const double k = problem.k();
  const auto ah = assemble_ah(space, penalty, exec);
  const auto mass = assemble_mass(space, exec);
  const auto robin = assemble_robin_boundary(space);
  const SparseComplexMatrix* mats[] = {&ah, &mass, &robin};
  const Complex coefs[] = {1.0, -k * k, I * k};
  return {linear_combination(mats, coefs), assemble_rhs(space, problem, penalty, quad, exec)};
}

SparseComplexMatrix elliptic_projection_matrix(const DGSpace& space, const PenaltyConfig& penalty) {
  const auto ah = assemble_ah(space, penalty);
  const auto robin = assemble_robin_boundary(space);
  const SparseComplexMatrix* mats[] = {&ah, &robin};
  const Complex coefs[] = {1.0, I * penalty.k()};
  return linear_combination(mats, coefs);
}

ComplexVector elliptic_projection_rhs(const HelmholtzProblem& problem, const DGSpace& space,
                                      const PenaltyConfig& penalty, const QuadratureSpec& quad) {
  const Mesh& mesh = space.mesh();
  const double k = problem.k();
  const auto rules = QuadratureSet::make(quad, k, mesh.h());
  ComplexVector rhs(space.size());

  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto p = mesh.element_points(e);
    const auto g = basis_gradients(mesh, e);
    const double area = mesh.elements()[e].area;
    for (std::size_t q = 0; q < rules.volume.points.size(); ++q) {
      const CVec2 gu = problem.exact_grad_u(element_point(p, rules.volume.points[q]));
      const double w = rules.volume.weights[q] * area;
      for (int j = 0; j < 3; ++j) rhs[DGSpace::dof(e, j)] += w * dot(gu, g[j]);
    }
  }

  for (const auto& edge : mesh.edges()) {
    const auto tr = edge_traces(mesh, edge);
    const double len = edge.length;
    if (edge.kind == EdgeKind::robin) {
      const auto& s = tr.side[0];
      for (std::size_t q = 0; q < rules.edge.points.size(); ++q) {
        const double t = rules.edge.points[q];
        const Complex u = problem.exact_u(edge_point(mesh, edge, t)) * (rules.edge.weights[q] * len);
        for (int j = 0; j < 3; ++j) rhs[DGSpace::dof(s.element, j)] += I * k * u * s.trace(j, t);
      }
      continue;
    }
    // -<∂u/∂n_e, [φ]> on interior and Dirichlet edges.
    for (std::size_t q = 0; q < rules.edge.points.size(); ++q) {
      const double t = rules.edge.points[q];
      const Complex dnu = dot(problem.exact_grad_u(edge_point(mesh, edge, t)), edge.normal) *
                          (rules.edge.weights[q] * len);
      for (int s = 0; s < tr.count; ++s)
        for (int j = 0; j < 3; ++j)
          rhs[DGSpace::dof(tr.side[s].element, j)] -= dnu * tr.side[s].sign * tr.side[s].trace(j, t);
    }
    if (edge.kind == EdgeKind::dirichlet) {
      // Jump terms of u on Γ_D, [u] = u.
      const auto d = boundary_load(mesh, edge, problem, penalty, rules.edge);
      for (int j = 0; j < 3; ++j) rhs[DGSpace::dof(edge.plus, j)] += d[j];
    }
  }
  return rhs;
}

// ---------------------------------------------------------------------------
// Conforming P1

LinearSystem assemble_fem_system(const FEMSpace& space, const HelmholtzProblem& problem,
                                 const QuadratureSpec& quad) {
  const Mesh& mesh = space.mesh();
  const double k = problem.k();
  const auto rules = QuadratureSet::make(quad, k, mesh.h());
  const auto& pts = mesh.points();
  std::vector<Triplet> t;
  t.reserve(9 * mesh.num_elements());
  ComplexVector rhs(space.size());

  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto& v = mesh.elements()[e].vertices;
    const auto g = basis_gradients(mesh, e);
    const double area = mesh.elements()[e].area;
    const auto load = volume_load(mesh, e, problem, rules.volume);
    for (int a = 0; a < 3; ++a) {
      const Index row = space.dof(v[a]);
      if (row < 0) continue;
      rhs[row] += load[a];
      for (int b = 0; b < 3; ++b) {
        const Complex val = area * dot(g[a], g[b]) - k * k * area / 12.0 * (a == b ? 2.0 : 1.0);
        const Index col = space.dof(v[b]);
        if (col >= 0) {
          t.push_back({row, col, val});
        } else {
          rhs[row] -= val * problem.dirichlet_u(pts[v[b]]);
        }
      }
    }
  }

  for (Index i : mesh.edge_sets().robin) {
    const auto& edge = mesh.edges()[i];
    const Index ends[2] = {edge.vertices[0], edge.vertices[1]};
    for (int a = 0; a < 2; ++a) {
      const Index row = space.dof(ends[a]);
      if (row < 0) continue;
      for (int b = 0; b < 2; ++b) {
        const Complex val = I * k * edge.length / 6.0 * (a == b ? 2.0 : 1.0);
        const Index col = space.dof(ends[b]);
        if (col >= 0) {
          t.push_back({row, col, val});
        } else {
          rhs[row] -= val * problem.dirichlet_u(pts[ends[b]]);
        }
      }
      for (std::size_t q = 0; q < rules.edge.points.size(); ++q) {
        const double s = rules.edge.points[q];
        const double phi = a == 0 ? 1.0 - s : s;
        rhs[row] += problem.robin_g(edge_point(mesh, edge, s), edge.normal) * (rules.edge.weights[q] * edge.length * phi);
      }
    }
  }
  return {SparseComplexMatrix::from_triplets(space.size(), t), std::move(rhs)};
}

SolutionField fem_field(const FEMSpace& space, const HelmholtzProblem& problem, std::span<const Complex> x) {
  const Mesh& mesh = space.mesh();
  if (static_cast<Index>(x.size()) != space.size()) throw InvalidParameter("fem_field: size mismatch");
  SolutionField f{SpaceKind::fem, ComplexVector(mesh.num_vertices())};
  for (Index v = 0; v < mesh.num_vertices(); ++v) {
    const Index d = space.dof(v);
    f.coefficients[v] = d >= 0 ? x[d] : problem.dirichlet_u(mesh.points()[v]);
  }
  return f;
}

SolutionField fe_interpolate(const HelmholtzProblem& problem, const FEMSpace& space) {
  const Mesh& mesh = space.mesh();
  SolutionField f{SpaceKind::fem, ComplexVector(mesh.num_vertices())};
  for (Index v = 0; v < mesh.num_vertices(); ++v) f.coefficients[v] = problem.exact_u(mesh.points()[v]);
  return f;
}

SolutionField inject_into_dg(const Mesh& mesh, const SolutionField& fem) {
  if (fem.kind == SpaceKind::dg) return fem;
  fem.validate(mesh);
  SolutionField f{SpaceKind::dg, ComplexVector(3 * mesh.num_elements())};
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto vals = fem.local_values(mesh, e);
    for (int j = 0; j < 3; ++j) f.coefficients[DGSpace::dof(e, j)] = vals[j];
  }
  return f;
}

}  // namespace helmdg
