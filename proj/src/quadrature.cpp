#include "helmdg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace helmdg {

LineRule gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("gauss_legendre needs n >= 1");
  LineRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

LineRule subdivide(const LineRule& rule, int s) {
  if (s <= 1) return rule;
  LineRule out;
  for (int j = 0; j < s; ++j)
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      out.points.push_back((j + rule.points[q]) / s);
      out.weights.push_back(rule.weights[q] / s);
    }
  return out;
}

TriangleRule triangle_rule(int degree) {
  TriangleRule r;
  if (degree <= 1) {
    r.points = {{1.0 / 3, 1.0 / 3, 1.0 / 3}};
    r.weights = {1.0};
    r.degree = 1;
  } else if (degree == 2) {
    r.points = {{2.0 / 3, 1.0 / 6, 1.0 / 6}, {1.0 / 6, 2.0 / 3, 1.0 / 6}, {1.0 / 6, 1.0 / 6, 2.0 / 3}};
    r.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    r.degree = 2;
  } else if (degree <= 5) {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, a2 = (6.0 + s15) / 21.0;
    const double w1 = (155.0 - s15) / 1200.0, w2 = (155.0 + s15) / 1200.0;
    r.points = {{1.0 / 3, 1.0 / 3, 1.0 / 3},
                {a1, a1, 1 - 2 * a1}, {a1, 1 - 2 * a1, a1}, {1 - 2 * a1, a1, a1},
                {a2, a2, 1 - 2 * a2}, {a2, 1 - 2 * a2, a2}, {1 - 2 * a2, a2, a2}};
    r.weights = {9.0 / 40, w1, w1, w1, w2, w2, w2};
    r.degree = 5;
  } else {
    // Collapsed product: λ1 = s, λ2 = t (1 - s), Jacobian 2 (1 - s) relative to area.
    const int n = (degree + 3) / 2;
    const LineRule g = gauss_legendre(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double s = g.points[i], t = g.points[j];
        const double l1 = s, l2 = t * (1.0 - s);
        r.points.push_back({1.0 - l1 - l2, l1, l2});
        r.weights.push_back(2.0 * g.weights[i] * g.weights[j] * (1.0 - s));
      }
    r.degree = degree;
  }
  return r;
}

TriangleRule subdivide(const TriangleRule& rule, int s) {
  if (s <= 1) return rule;
  TriangleRule out;
  out.degree = rule.degree;
  const double w = 1.0 / (static_cast<double>(s) * s);
  // Sub-triangle vertices in (λ1, λ2) lattice coordinates.
  auto emit = [&](std::array<double, 2> a, std::array<double, 2> b, std::array<double, 2> c) {
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& mu = rule.points[q];
      const double l1 = (mu[0] * a[0] + mu[1] * b[0] + mu[2] * c[0]) / s;
      const double l2 = (mu[0] * a[1] + mu[1] * b[1] + mu[2] * c[1]) / s;
      out.points.push_back({1.0 - l1 - l2, l1, l2});
      out.weights.push_back(rule.weights[q] * w);
    }
  };
  for (int i = 0; i < s; ++i)
    for (int j = 0; i + j < s; ++j) {
      const double x = i, y = j;
      emit({x, y}, {x + 1, y}, {x, y + 1});
      if (i + j + 2 <= s) emit({x + 1, y}, {x + 1, y + 1}, {x, y + 1});
    }
  return out;
}

QuadratureSet QuadratureSet::make(const QuadratureSpec& spec, double k, double h) {
  QuadratureSet set;
  if (spec.max_kh > 0.0) set.subdivisions = std::max(1, static_cast<int>(std::ceil(k * h / spec.max_kh - 1e-12)));
  set.volume = subdivide(triangle_rule(spec.degree), set.subdivisions);
  set.edge = subdivide(gauss_legendre(std::max(1, spec.edge_points)), set.subdivisions);
  return set;
}

}  // namespace helmdg
