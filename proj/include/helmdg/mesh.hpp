#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "helmdg/types.hpp"

namespace helmdg {

/// A triangle. Its label is its position in Mesh::elements(); labels fix the
/// sign convention of jumps on interior edges.
struct Element {
  std::array<Index, 3> vertices{};  // counterclockwise
  double area = 0.0;
  Index label = 0;
};

enum class EdgeKind { interior, robin, dirichlet };

const char* to_string(EdgeKind kind);

/// An edge with its orientation data.
///
/// For interior edges `plus` is the element with the larger label and `normal`
/// is its outward normal, so that [v] = v|plus - v|minus. For boundary edges
/// `plus` is the single adjacent element, `minus` is -1 and `normal` points out
/// of the domain. The tangent is the normal rotated by +90 degrees and points
/// from vertices[0] to vertices[1].
struct Edge {
  std::array<Index, 2> vertices{};
  double length = 0.0;
  EdgeKind kind = EdgeKind::interior;
  Index plus = -1;
  Index minus = -1;
  Vec2 normal;
  Vec2 tangent;

  bool is_interior() const { return kind == EdgeKind::interior; }
};

/// Partition of the edge indices.
struct EdgeSets {
  std::vector<Index> interior;
  std::vector<Index> robin;
  std::vector<Index> dirichlet;
  std::vector<Index> interior_dirichlet;  // interior followed by dirichlet, each sorted
};

/// Conforming triangulation with full edge topology. Immutable once built.
class Mesh {
 public:
  /// Builds edges and validates orientation. A boundary edge is Dirichlet iff
  /// both of its endpoints are flagged in `dirichlet_vertices` (may be empty).
  Mesh(std::vector<Point2> points, std::vector<std::array<Index, 3>> triangles,
       std::vector<bool> dirichlet_vertices = {});

  const std::vector<Point2>& points() const { return points_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const EdgeSets& edge_sets() const { return sets_; }
  /// Edge indices of element e, edge j opposite local vertex j.
  const std::array<Index, 3>& element_edges(Index e) const { return element_edges_[e]; }
  const std::vector<bool>& dirichlet_vertices() const { return dirichlet_vertices_; }

  Index num_vertices() const { return static_cast<Index>(points_.size()); }
  Index num_elements() const { return static_cast<Index>(elements_.size()); }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }

  /// Maximum element diameter.
  double h() const { return h_; }
  double total_area() const;
  double robin_perimeter() const;

  std::array<Point2, 3> element_points(Index e) const;
  /// Outward normal of element e on the given edge.
  Vec2 outward_normal(Index e, Index edge) const;

  /// Same triangulation with element `e` renamed to `new_label[e]`.
  Mesh relabeled(std::span<const Index> new_label) const;

 private:
  void build_edges();

  std::vector<Point2> points_;
  std::vector<Element> elements_;
  std::vector<Edge> edges_;
  std::vector<std::array<Index, 3>> element_edges_;
  std::vector<bool> dirichlet_vertices_;
  EdgeSets sets_;
  double h_ = 0.0;
};

/// Regular hexagon of circumradius 1 centred at the origin with a vertex at
/// (1, 0), split into 6 m^2 equilateral triangles of side 1/m. All boundary
/// edges are Robin.
Mesh build_hexagon_mesh(int m);

/// [-1,1]^2 minus the concentric square [-1/3,1/3]^2 on an m x m grid of
/// cells, two right triangles per cell. Outer boundary Robin, hole Dirichlet.
/// Requires m divisible by 3.
Mesh build_square_with_hole_mesh(int m);

/// Recomputes the partition of mesh edges by kind.
EdgeSets classify_edges(const Mesh& mesh);

/// Counts for the hexagon family without building the mesh.
struct HexagonCounts {
  Index vertices;
  Index elements;
  Index dg_unknowns;
};
HexagonCounts hexagon_counts(int m);

/// Line records `v x y`, `t i j k`, `e i j kind`.
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace helmdg
