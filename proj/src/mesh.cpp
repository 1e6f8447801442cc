#include "helmdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <utility>

namespace helmdg {

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::interior: return "interior";
    case EdgeKind::robin: return "robin";
    case EdgeKind::dirichlet: return "dirichlet";
  }
  return "?";
}

namespace {

using EdgeKey = std::pair<Index, Index>;

EdgeKey make_key(Index a, Index b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Local edge j of a triangle is opposite vertex j and runs counterclockwise.
std::array<Index, 2> local_edge(const std::array<Index, 3>& v, int j) {
  return {v[(j + 1) % 3], v[(j + 2) % 3]};
}

double signed_area(Point2 a, Point2 b, Point2 c) { return 0.5 * cross(b - a, c - a); }

}  // namespace

Mesh::Mesh(std::vector<Point2> points, std::vector<std::array<Index, 3>> triangles,
           std::vector<bool> dirichlet_vertices)
    : points_(std::move(points)), dirichlet_vertices_(std::move(dirichlet_vertices)) {
  if (dirichlet_vertices_.empty()) dirichlet_vertices_.assign(points_.size(), false);
  if (dirichlet_vertices_.size() != points_.size())
    throw MalformedMesh("dirichlet vertex mask has wrong length");

  const auto nv = static_cast<Index>(points_.size());
  elements_.reserve(triangles.size());
  for (std::size_t e = 0; e < triangles.size(); ++e) {
    const auto& t = triangles[e];
    for (Index v : t)
      if (v < 0 || v >= nv) throw MalformedMesh("triangle references a missing vertex");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw MalformedMesh("triangle with repeated vertex");
    for (Index v : t)
      if (!std::isfinite(points_[v].x) || !std::isfinite(points_[v].y))
        throw MalformedMesh("non-finite vertex coordinate");
    const double a = signed_area(points_[t[0]], points_[t[1]], points_[t[2]]);
    if (!(a > 0.0)) throw MalformedMesh("triangle is not counterclockwise");
    elements_.push_back({t, a, static_cast<Index>(e)});

    for (int j = 0; j < 3; ++j) {
      const auto [p, q] = local_edge(t, j);
      h_ = std::max(h_, norm(points_[q] - points_[p]));
    }
  }
  build_edges();
}

void Mesh::build_edges() {
  // Edges are numbered in order of first appearance over elements in label order.
  std::map<EdgeKey, Index> index_of;
  std::vector<std::vector<std::pair<Index, int>>> incident;  // (element, local edge)
  element_edges_.assign(elements_.size(), {-1, -1, -1});
  for (const auto& el : elements_) {
    for (int j = 0; j < 3; ++j) {
      const auto [p, q] = local_edge(el.vertices, j);
      auto [it, inserted] = index_of.try_emplace(make_key(p, q), static_cast<Index>(incident.size()));
      if (inserted) incident.emplace_back();
      auto& inc = incident[it->second];
      if (inc.size() == 2) throw MalformedMesh("edge shared by more than two elements");
      inc.emplace_back(el.label, j);
      element_edges_[el.label][j] = it->second;
    }
  }

  edges_.clear();
  edges_.reserve(incident.size());
  for (const auto& inc : incident) {
    Edge edge;
    // The owning side is the element with the larger label.
    auto owner = inc.front();
    if (inc.size() == 2) {
      if (inc[1].first == inc[0].first) throw MalformedMesh("element adjacent to itself");
      owner = inc[0].first > inc[1].first ? inc[0] : inc[1];
      edge.minus = inc[0].first > inc[1].first ? inc[1].first : inc[0].first;
    }
    edge.plus = owner.first;
    edge.vertices = local_edge(elements_[owner.first].vertices, owner.second);
    const Vec2 d = points_[edge.vertices[1]] - points_[edge.vertices[0]];
    edge.length = norm(d);
    edge.tangent = d / edge.length;
    // Counterclockwise traversal: outward normal is the tangent rotated by -90 degrees.
    edge.normal = {edge.tangent.y, -edge.tangent.x};
    if (inc.size() == 2) {
      edge.kind = EdgeKind::interior;
    } else if (dirichlet_vertices_[edge.vertices[0]] && dirichlet_vertices_[edge.vertices[1]]) {
      edge.kind = EdgeKind::dirichlet;
    } else {
      edge.kind = EdgeKind::robin;
    }
    edges_.push_back(edge);
  }
  sets_ = classify_edges(*this);
}

double Mesh::total_area() const {
  double a = 0.0;
  for (const auto& el : elements_) a += el.area;
  return a;
}

double Mesh::robin_perimeter() const {
  double p = 0.0;
  for (Index e : sets_.robin) p += edges_[e].length;
  return p;
}

std::array<Point2, 3> Mesh::element_points(Index e) const {
  const auto& v = elements_[e].vertices;
  return {points_[v[0]], points_[v[1]], points_[v[2]]};
}

Vec2 Mesh::outward_normal(Index e, Index edge) const {
  const auto& ed = edges_[edge];
  if (ed.plus == e) return ed.normal;
  if (ed.minus == e) return -ed.normal;
  throw MalformedMesh("edge is not on the given element");
}

Mesh Mesh::relabeled(std::span<const Index> new_label) const {
  const auto n = elements_.size();
  if (new_label.size() != n) throw InvalidParameter("relabeling has wrong length");
  std::vector<std::array<Index, 3>> tris(n);
  std::vector<bool> seen(n, false);
  for (std::size_t e = 0; e < n; ++e) {
    const Index l = new_label[e];
    if (l < 0 || static_cast<std::size_t>(l) >= n || seen[l])
      throw InvalidParameter("relabeling is not a permutation");
    seen[l] = true;
    tris[l] = elements_[e].vertices;
  }
  return Mesh(points_, std::move(tris), dirichlet_vertices_);
}

EdgeSets classify_edges(const Mesh& mesh) {
  std::map<EdgeKey, int> count;
  for (const auto& el : mesh.elements())
    for (int j = 0; j < 3; ++j) {
      const auto [p, q] = local_edge(el.vertices, j);
      if (++count[make_key(p, q)] > 2) throw MalformedMesh("edge shared by more than two elements");
    }

  EdgeSets sets;
  for (Index i = 0; i < mesh.num_edges(); ++i) {
    switch (mesh.edges()[i].kind) {
      case EdgeKind::interior: sets.interior.push_back(i); break;
      case EdgeKind::robin: sets.robin.push_back(i); break;
      case EdgeKind::dirichlet: sets.dirichlet.push_back(i); break;
    }
  }
  sets.interior_dirichlet = sets.interior;
  sets.interior_dirichlet.insert(sets.interior_dirichlet.end(), sets.dirichlet.begin(),
                                 sets.dirichlet.end());
  return sets;
}

Mesh build_hexagon_mesh(int m) {
  if (m < 1) throw InvalidParameter("hexagon mesh needs m >= 1");
  // Axial lattice coordinates (a, b): x = (a + b/2)/m, y = b*sqrt(3)/(2m).
  // Inside the hexagon iff |a|, |b|, |a+b| <= m.
  const double s3 = std::sqrt(3.0);
  const int w = 2 * m + 1;
  auto inside = [m](int a, int b) { return std::abs(a) <= m && std::abs(b) <= m && std::abs(a + b) <= m; };
  std::vector<Index> id(static_cast<std::size_t>(w) * w, -1);
  auto slot = [&](int a, int b) -> Index& { return id[(b + m) * w + (a + m)]; };

  std::vector<Point2> pts;
  for (int b = -m; b <= m; ++b)
    for (int a = -m; a <= m; ++a)
      if (inside(a, b)) {
        slot(a, b) = static_cast<Index>(pts.size());
        pts.push_back({(a + 0.5 * b) / m, 0.5 * s3 * b / m});
      }

  // Row-by-row sweep (bottom to top), left to right, up-triangle before down-triangle.
  std::vector<std::array<Index, 3>> tris;
  tris.reserve(6 * static_cast<std::size_t>(m) * m);
  for (int b = -m; b < m; ++b)
    for (int a = -m; a < m; ++a) {
      if (inside(a, b) && inside(a + 1, b) && inside(a, b + 1))
        tris.push_back({slot(a, b), slot(a + 1, b), slot(a, b + 1)});
      if (inside(a + 1, b) && inside(a + 1, b + 1) && inside(a, b + 1))
        tris.push_back({slot(a + 1, b), slot(a + 1, b + 1), slot(a, b + 1)});
    }
  return Mesh(std::move(pts), std::move(tris));
}

Mesh build_square_with_hole_mesh(int m) {
  if (m < 3 || m % 3 != 0) throw InvalidParameter("square-with-hole mesh needs m >= 3 divisible by 3");
  const int lo = m / 3;
  const int hi = 2 * m / 3;
  auto in_hole = [&](int i, int j) { return i >= lo && i < hi && j >= lo && j < hi; };
  auto on_hole_boundary = [&](int i, int j) {
    return i >= lo && i <= hi && j >= lo && j <= hi && (i == lo || i == hi || j == lo || j == hi);
  };

  const int w = m + 1;
  std::vector<Index> id(static_cast<std::size_t>(w) * w, -1);
  std::vector<Point2> pts;
  std::vector<bool> dirichlet;
  auto vertex = [&](int i, int j) {
    Index& v = id[j * w + i];
    if (v < 0) {
      v = static_cast<Index>(pts.size());
      pts.push_back({-1.0 + 2.0 * i / m, -1.0 + 2.0 * j / m});
      dirichlet.push_back(on_hole_boundary(i, j));
    }
    return v;
  };

  std::vector<std::array<Index, 3>> tris;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      if (in_hole(i, j)) continue;
      const Index v00 = vertex(i, j), v10 = vertex(i + 1, j);
      const Index v01 = vertex(i, j + 1), v11 = vertex(i + 1, j + 1);
      tris.push_back({v00, v10, v11});
      tris.push_back({v00, v11, v01});
    }
  return Mesh(std::move(pts), std::move(tris), std::move(dirichlet));
}

HexagonCounts hexagon_counts(int m) {
  if (m < 1) throw InvalidParameter("hexagon mesh needs m >= 1");
  const Index mm = m;
  return {3 * mm * mm + 3 * mm + 1, 6 * mm * mm, 18 * mm * mm};
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out.precision(17);
  for (const auto& p : mesh.points()) out << "v " << p.x << ' ' << p.y << '\n';
  for (const auto& el : mesh.elements())
    out << "t " << el.vertices[0] << ' ' << el.vertices[1] << ' ' << el.vertices[2] << '\n';
  for (const auto& ed : mesh.edges())
    out << "e " << ed.vertices[0] << ' ' << ed.vertices[1] << ' ' << to_string(ed.kind) << '\n';
}

}  // namespace helmdg
