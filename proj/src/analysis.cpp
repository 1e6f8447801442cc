#include "helmdg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

namespace helmdg {

namespace {

/// A P1 field restricted to one element.
struct LocalField {
  std::array<Complex, 3> values{};
  std::array<Vec2, 3> g{};
  Point2 centroid;
  CVec2 grad;

  LocalField(const Mesh& mesh, const SolutionField& f, Index e) {
    values = f.local_values(mesh, e);
    g = basis_gradients(mesh, e);
    const auto p = mesh.element_points(e);
    centroid = (p[0] + p[1] + p[2]) / 3.0;
    for (int j = 0; j < 3; ++j) grad = grad + CVec2{g[j].x, g[j].y} * values[j];
  }

  Complex at(const std::array<double, 3>& lambda) const {
    return values[0] * lambda[0] + values[1] * lambda[1] + values[2] * lambda[2];
  }
  Complex at(Point2 p) const {
    Complex v{};
    for (int j = 0; j < 3; ++j) v += values[j] * (1.0 / 3.0 + dot(g[j], p - centroid));
    return v;
  }
};

Point2 from_barycentric(const std::array<Point2, 3>& p, const std::array<double, 3>& l) {
  return p[0] * l[0] + p[1] * l[1] + p[2] * l[2];
}

Point2 edge_point(const Mesh& mesh, const Edge& e, double t) {
  const Point2 a = mesh.points()[e.vertices[0]], b = mesh.points()[e.vertices[1]];
  return a + (b - a) * t;
}

double ordered_sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

template <class F>
std::vector<double> per_element(const Mesh& mesh, Execution exec, F&& f) {
  const Index n = mesh.num_elements();
  std::vector<double> out(n);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (Index e = 0; e < n; ++e) out[e] = f(e);
  } else {
    for (Index e = 0; e < n; ++e) out[e] = f(e);
  }
  return out;
}

/// Σ_K ∫_K |G(x)|² for G built from the exact solution and the field.
template <class Integrand>
double volume_integral(const Mesh& mesh, const HelmholtzProblem& problem, const QuadratureSpec& quad,
                       Execution exec, Integrand&& integrand) {
  const auto rules = QuadratureSet::make(quad, problem.k(), mesh.h());
  const auto contrib = per_element(mesh, exec, [&](Index e) {
    const auto p = mesh.element_points(e);
    double s = 0.0;
    for (std::size_t q = 0; q < rules.volume.points.size(); ++q) {
      const auto& l = rules.volume.points[q];
      s += rules.volume.weights[q] * integrand(e, l, from_barycentric(p, l));
    }
    return s * mesh.elements()[e].area;
  });
  return ordered_sum(contrib);
}

/// Values and derivatives of both traces on an edge at one point.
struct EdgeJumps {
  Complex value{};    // [v]
  Complex dn{};       // [∂v/∂n]
  Complex dt{};       // [∂v/∂τ]
  Complex avg_dn{};   // {∂v/∂n}
  Complex avg_dt{};   // {∂v/∂τ}
  CVec2 avg_grad;     // {∇v}
  CVec2 jump_grad;    // [∇v]
};

EdgeJumps edge_jumps(const Edge& edge, const LocalField& plus, const LocalField* minus, Point2 x) {
  EdgeJumps j;
  const double w = minus ? 0.5 : 1.0;
  j.value = plus.at(x);
  j.jump_grad = plus.grad;
  j.avg_grad = plus.grad * w;
  if (minus) {
    j.value -= minus->at(x);
    j.jump_grad = j.jump_grad - minus->grad;
    j.avg_grad = j.avg_grad + minus->grad * w;
  }
  j.dn = dot(j.jump_grad, edge.normal);
  j.dt = dot(j.jump_grad, edge.tangent);
  j.avg_dn = dot(j.avg_grad, edge.normal);
  j.avg_dt = dot(j.avg_grad, edge.tangent);
  return j;
}

const LineRule& gauss3() {
  static const LineRule r = gauss_legendre(3);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Error norms

double broken_h1_seminorm_error(const Mesh& mesh, const SolutionField& field, const HelmholtzProblem& problem,
                                const QuadratureSpec& quad, Execution exec) {
  field.validate(mesh);
  std::vector<CVec2> grads(mesh.num_elements());
  for (Index e = 0; e < mesh.num_elements(); ++e) grads[e] = LocalField(mesh, field, e).grad;
  return std::sqrt(volume_integral(mesh, problem, quad, exec, [&](Index e, const auto&, Point2 x) {
    return norm_sq(problem.exact_grad_u(x) - grads[e]);
  }));
}

double exact_h1_seminorm(const Mesh& mesh, const HelmholtzProblem& problem, const QuadratureSpec& quad) {
  return std::sqrt(volume_integral(mesh, problem, quad, Execution::serial,
                                   [&](Index, const auto&, Point2 x) { return norm_sq(problem.exact_grad_u(x)); }));
}

double l2_error(const Mesh& mesh, const SolutionField& field, const HelmholtzProblem& problem,
                const QuadratureSpec& quad, Execution exec) {
  field.validate(mesh);
  return std::sqrt(volume_integral(mesh, problem, quad, exec, [&](Index e, const auto& l, Point2 x) {
    const auto v = field.local_values(mesh, e);
    return std::norm(problem.exact_u(x) - (v[0] * l[0] + v[1] * l[1] + v[2] * l[2]));
  }));
}

double exact_l2_norm(const Mesh& mesh, const HelmholtzProblem& problem, const QuadratureSpec& quad) {
  return std::sqrt(volume_integral(mesh, problem, quad, Execution::serial,
                                   [&](Index, const auto&, Point2 x) { return std::norm(problem.exact_u(x)); }));
}

double dg_norm_error(const Mesh& mesh, const SolutionField& field, const HelmholtzProblem& problem,
                     const PenaltyConfig& penalty, const QuadratureSpec& quad, Execution exec) {
  const double semi = broken_h1_seminorm_error(mesh, field, problem, quad, exec);
  const auto rules = QuadratureSet::make(quad, problem.k(), mesh.h());
  const auto& edges = mesh.edges();
  std::vector<double> contrib(edges.size(), 0.0);
  auto edge_term = [&](Index i) {
    const Edge& edge = edges[i];
    if (edge.kind == EdgeKind::robin) return 0.0;
    const auto w = penalty.norm_weights(edge);
    const LocalField plus(mesh, field, edge.plus);
    const double len = edge.length;
    if (edge.is_interior()) {
      // u has no interior jumps.
      const LocalField minus(mesh, field, edge.minus);
      double s = 0.0;
      for (std::size_t q = 0; q < gauss3().points.size(); ++q) {
        const auto j = edge_jumps(edge, plus, &minus, edge_point(mesh, edge, gauss3().points[q]));
        s += gauss3().weights[q] * len *
             (w.zeta0.real() / len * std::norm(j.value) + w.zeta1.real() * len * std::norm(j.dn) +
              w.zetaB.real() / len * std::norm(j.dt));
      }
      return s;
    }
    double s = 0.0;
    for (std::size_t q = 0; q < rules.edge.points.size(); ++q) {
      const Point2 x = edge_point(mesh, edge, rules.edge.points[q]);
      const Complex jv = problem.dirichlet_u(x) - plus.at(x);
      const Complex jt = dot(problem.exact_grad_u(x), edge.tangent) - dot(plus.grad, edge.tangent);
      s += rules.edge.weights[q] * len * (w.zeta0.real() / len * std::norm(jv) + w.zetaB.real() / len * std::norm(jt));
    }
    return s;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < static_cast<Index>(edges.size()); ++i) contrib[i] = edge_term(i);
  } else {
    for (Index i = 0; i < static_cast<Index>(edges.size()); ++i) contrib[i] = edge_term(i);
  }
  return std::sqrt(semi * semi + ordered_sum(contrib));
}

double broken_h1_seminorm(const Mesh& mesh, const SolutionField& field) {
  field.validate(mesh);
  double s = 0.0;
  for (Index e = 0; e < mesh.num_elements(); ++e)
    s += mesh.elements()[e].area * norm_sq(LocalField(mesh, field, e).grad);
  return std::sqrt(s);
}

double l2_norm(const Mesh& mesh, const SolutionField& field) {
  field.validate(mesh);
  const auto rule = triangle_rule(2);
  double s = 0.0;
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const LocalField f(mesh, field, e);
    double t = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) t += rule.weights[q] * std::norm(f.at(rule.points[q]));
    s += t * mesh.elements()[e].area;
  }
  return std::sqrt(s);
}

double dg_norm(const Mesh& mesh, const SolutionField& field, const PenaltyConfig& penalty) {
  double s = std::pow(broken_h1_seminorm(mesh, field), 2);
  for (const Edge& edge : mesh.edges()) {
    if (edge.kind == EdgeKind::robin) continue;
    const auto w = penalty.norm_weights(edge);
    const LocalField plus(mesh, field, edge.plus);
    std::optional<LocalField> minus;
    if (edge.is_interior()) minus.emplace(mesh, field, edge.minus);
    const double len = edge.length;
    for (std::size_t q = 0; q < gauss3().points.size(); ++q) {
      const auto j = edge_jumps(edge, plus, minus ? &*minus : nullptr, edge_point(mesh, edge, gauss3().points[q]));
      double v = w.zeta0.real() / len * std::norm(j.value) + w.zetaB.real() / len * std::norm(j.dt);
      if (edge.is_interior()) v += w.zeta1.real() * len * std::norm(j.dn);
      s += gauss3().weights[q] * len * v;
    }
  }
  return std::sqrt(s);
}

ErrorReport compute_errors(const Mesh& mesh, const SolutionField& field, const HelmholtzProblem& problem,
                           const PenaltyConfig* penalty, const QuadratureSpec& quad, Execution exec) {
  ErrorReport r;
  r.k = problem.k();
  r.h = mesh.h();
  r.h1_semi = broken_h1_seminorm_error(mesh, field, problem, quad, exec);
  r.l2 = l2_error(mesh, field, problem, quad, exec);
  r.exact_h1_semi = exact_h1_seminorm(mesh, problem, quad);
  r.exact_l2 = exact_l2_norm(mesh, problem, quad);
  if (penalty) {
    r.dg_norm = dg_norm_error(mesh, field, problem, *penalty, quad, exec);
    r.penalty_id = penalty->id();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Form evaluation

Complex evaluate_ah(const Mesh& mesh, const SolutionField& u, const SolutionField& v, const PenaltyConfig& penalty) {
  u.validate(mesh);
  v.validate(mesh);
  Complex s{};
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const LocalField fu(mesh, u, e), fv(mesh, v, e);
    s += mesh.elements()[e].area * (fu.grad.x * std::conj(fv.grad.x) + fu.grad.y * std::conj(fv.grad.y));
  }
  const double sigma = penalty.sigma();
  for (const Edge& edge : mesh.edges()) {
    if (edge.kind == EdgeKind::robin) continue;
    const auto z = penalty.at(edge);
    const LocalField up(mesh, u, edge.plus), vp(mesh, v, edge.plus);
    std::optional<LocalField> um, vm;
    if (edge.is_interior()) {
      um.emplace(mesh, u, edge.minus);
      vm.emplace(mesh, v, edge.minus);
    }
    const double len = edge.length;
    for (std::size_t q = 0; q < gauss3().points.size(); ++q) {
      const Point2 x = edge_point(mesh, edge, gauss3().points[q]);
      const auto ju = edge_jumps(edge, up, um ? &*um : nullptr, x);
      const auto jv = edge_jumps(edge, vp, vm ? &*vm : nullptr, x);
      Complex t = -ju.avg_dn * std::conj(jv.value) - sigma * ju.value * std::conj(jv.avg_dn);
      t += z.zeta0 / len * ju.value * std::conj(jv.value);
      if (edge.is_interior()) t += z.zeta1 * len * ju.dn * std::conj(jv.dn);
      t += z.zetaB / len * ju.dt * std::conj(jv.dt);
      s += gauss3().weights[q] * len * t;
    }
  }
  return s;
}

FormEnergy form_energy(const Mesh& mesh, const SolutionField& v, const PenaltyConfig& penalty) {
  v.validate(mesh);
  FormEnergy en;
  en.grad_sq = std::pow(broken_h1_seminorm(mesh, v), 2);
  for (const Edge& edge : mesh.edges()) {
    if (edge.kind == EdgeKind::robin) continue;
    const auto z = penalty.at(edge);
    const LocalField plus(mesh, v, edge.plus);
    std::optional<LocalField> minus;
    if (edge.is_interior()) minus.emplace(mesh, v, edge.minus);
    const double len = edge.length;
    for (std::size_t q = 0; q < gauss3().points.size(); ++q) {
      const auto j = edge_jumps(edge, plus, minus ? &*minus : nullptr, edge_point(mesh, edge, gauss3().points[q]));
      const double w = gauss3().weights[q] * len;
      en.consistency += w * j.avg_dn * std::conj(j.value);
      en.j0 += w * z.zeta0 / len * std::norm(j.value);
      if (edge.is_interior()) en.j1 += w * z.zeta1 * len * std::norm(j.dn);
      en.l1 += w * z.zetaB / len * std::norm(j.dt);
    }
  }
  return en;
}

// ---------------------------------------------------------------------------
// Integral identities

double RellichResiduals::max_relative() const {
  double m = 0.0;
  for (const auto* v : {&element_value, &element_gradient, &edge})
    for (const auto& r : *v) m = std::max(m, r.relative());
  return m;
}

RellichResiduals rellich_identity_residuals(const Mesh& mesh, const SolutionField& v, Point2 center) {
  v.validate(mesh);
  constexpr double d = 2.0;
  const auto rule = triangle_rule(2);
  RellichResiduals out;
  out.element_value.reserve(mesh.num_elements());
  out.element_gradient.reserve(mesh.num_elements());

  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const LocalField f(mesh, v, e);
    const auto p = mesh.element_points(e);
    const double area = mesh.elements()[e].area;

    // w = α·∇v is linear; its gradient comes from its vertex values.
    std::array<Complex, 3> w_vertex;
    for (int j = 0; j < 3; ++j) {
      const Vec2 a = p[j] - center;
      w_vertex[j] = f.grad.x * a.x + f.grad.y * a.y;
    }
    CVec2 grad_w;
    for (int j = 0; j < 3; ++j) grad_w = grad_w + CVec2{f.g[j].x, f.g[j].y} * w_vertex[j];

    double v_sq = 0.0;
    Complex v_aw{};
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& l = rule.points[q];
      const Complex vq = f.at(l);
      const Complex wq = w_vertex[0] * l[0] + w_vertex[1] * l[1] + w_vertex[2] * l[2];
      v_sq += rule.weights[q] * area * std::norm(vq);
      v_aw += rule.weights[q] * area * vq * std::conj(wq);
    }
    const double grad_sq = area * norm_sq(f.grad);
    const Complex grad_gw = area * (f.grad.x * std::conj(grad_w.x) + f.grad.y * std::conj(grad_w.y));

    double bd1 = 0.0, bd2 = 0.0, bd_abs1 = 0.0, bd_abs2 = 0.0;
    for (int j = 0; j < 3; ++j) {
      const Point2 a = p[(j + 1) % 3], b = p[(j + 2) % 3];
      const double len = norm(b - a);
      const Vec2 n{(b - a).y / len, -(b - a).x / len};
      for (std::size_t q = 0; q < gauss3().points.size(); ++q) {
        const Point2 x = a + (b - a) * gauss3().points[q];
        const double an = dot(x - center, n) * gauss3().weights[q] * len;
        bd1 += an * std::norm(f.at(x));
        bd2 += an * norm_sq(f.grad);
        bd_abs1 += std::abs(an) * std::norm(f.at(x));
        bd_abs2 += std::abs(an) * norm_sq(f.grad);
      }
    }
    const double lhs1 = d * v_sq + 2.0 * v_aw.real();
    out.element_value.push_back({std::abs(lhs1 - bd1), d * v_sq + 2.0 * std::abs(v_aw) + bd_abs1});
    const double lhs2 = (d - 2.0) * grad_sq + 2.0 * grad_gw.real();
    out.element_gradient.push_back({std::abs(lhs2 - bd2), std::abs(d - 2.0) * grad_sq + 2.0 * std::abs(grad_gw) + bd_abs2});
  }

  for (Index i : mesh.edge_sets().interior_dirichlet) {
    const Edge& edge = mesh.edges()[i];
    const LocalField plus(mesh, v, edge.plus);
    std::optional<LocalField> minus;
    if (edge.is_interior()) minus.emplace(mesh, v, edge.minus);
    const double len = edge.length;
    // ∂[v̄]/∂τ is constant along the edge: difference of the end values of [v].
    const auto j0 = edge_jumps(edge, plus, minus ? &*minus : nullptr, edge_point(mesh, edge, 0.0));
    const auto j1 = edge_jumps(edge, plus, minus ? &*minus : nullptr, edge_point(mesh, edge, 1.0));
    const Complex dt_jump = (j1.value - j0.value) / len;
    Complex lhs{}, rhs{};
    double scale = 0.0;
    for (std::size_t q = 0; q < gauss3().points.size(); ++q) {
      const Point2 x = edge_point(mesh, edge, gauss3().points[q]);
      const double w = gauss3().weights[q] * len;
      const Vec2 alpha = x - center;
      const auto j = edge_jumps(edge, plus, minus ? &*minus : nullptr, x);
      // [α·∇v] from the two traces.
      Complex jump_aw = plus.grad.x * alpha.x + plus.grad.y * alpha.y;
      if (minus) jump_aw -= minus->grad.x * alpha.x + minus->grad.y * alpha.y;
      const double an = dot(alpha, edge.normal), at = dot(alpha, edge.tangent);
      const Complex t1 = w * j.avg_dn * std::conj(jump_aw);
      const Complex t2 = w * an * (j.avg_grad.x * std::conj(j.jump_grad.x) + j.avg_grad.y * std::conj(j.jump_grad.y));
      const Complex t3 = w * (at * j.avg_dn - an * j.avg_dt) * std::conj(dt_jump);
      lhs += t1 - t2;
      rhs += t3;
      scale += std::abs(t1) + std::abs(t2) + std::abs(t3);
    }
    out.edge.push_back({std::abs(lhs - rhs), scale});
  }
  return out;
}

EnergyIdentityResiduals discrete_energy_identities(const Mesh& mesh, const SolutionField& uh,
                                                   const HelmholtzProblem& problem, const PenaltyConfig& penalty,
                                                   const QuadratureSpec& quad) {
  uh.validate(mesh);
  if (uh.kind != SpaceKind::dg) throw InvalidParameter("energy identities need a DG field");
  const double k = problem.k();
  const auto en = form_energy(mesh, uh, penalty);
  const double l2_sq = std::pow(l2_norm(mesh, uh), 2);
  double robin_sq = 0.0;
  for (Index i : mesh.edge_sets().robin) {
    const Edge& edge = mesh.edges()[i];
    const LocalField f(mesh, uh, edge.plus);
    for (std::size_t q = 0; q < gauss3().points.size(); ++q)
      robin_sq += gauss3().weights[q] * edge.length * std::norm(f.at(edge_point(mesh, edge, gauss3().points[q])));
  }

  const DGSpace space(mesh);
  const auto b = assemble_rhs(space, problem, penalty, quad);
  Complex rhs{};
  for (std::size_t i = 0; i < b.size(); ++i) rhs += b[i] * std::conj(uh.coefficients[i]);

  EnergyIdentityResiduals r;
  r.lhs = en.value(penalty.sigma()) - k * k * l2_sq + I * k * robin_sq;
  r.rhs = rhs;
  const double scale = std::abs(r.lhs) + std::abs(r.rhs);
  r.real = std::abs(r.lhs.real() - r.rhs.real()) / (scale > 0 ? scale : 1.0);
  r.imag = std::abs(r.lhs.imag() - r.rhs.imag()) / (scale > 0 ? scale : 1.0);
  r.jump_energy = en.j0.imag() + en.j1.imag() + en.l1.imag() + k * robin_sq;
  return r;
}

double theoretical_csta(const Mesh& mesh, const PenaltyConfig& penalty, double k) {
  if (!(k > 0.0)) throw InvalidParameter("theoretical_csta needs k > 0");
  auto real_gamma = [](Complex zeta, const char* name) {
    // zeta = i gamma
    const double g = zeta.imag();
    if (std::abs(zeta.real()) > 0.0 || !(g > 0.0))
      throw InvalidParameter(std::string("stability bound undefined: ") + name + " must be real and positive");
    return g;
  };
  double max_d = 0.0, max_i = 0.0;
  for (Index i : mesh.edge_sets().interior_dirichlet) {
    const Edge& edge = mesh.edges()[i];
    const auto z = penalty.at(edge);
    const double g0 = real_gamma(z.zeta0, "gamma0");
    const double b1 = real_gamma(z.zetaB, "beta1");
    const double h = edge.length;
    if (edge.is_interior()) {
      const double g1 = real_gamma(z.zeta1, "gamma1");
      max_i = std::max(max_i, (k * k + 1.0) / g0 + std::sqrt(g0 / g1) / h + std::sqrt(g0 / b1) + 1.0 / b1);
    } else {
      max_d = std::max(max_d, 1.0 / g0 + g0 / h + std::sqrt(g0 / b1) + 1.0 / b1);
    }
  }
  return 1.0 / k + 1.0 / (k * k) + (max_d + max_i) / (k * k);
}

CoercivityFit fit_coercivity_constant(const Mesh& mesh, const PenaltyConfig& penalty, int samples,
                                      std::uint64_t seed) {
  CoercivityFit fit;
  fit.min_imag = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const auto v = random_dg_field(mesh, seed + static_cast<std::uint64_t>(s));
    const Complex a = form_energy(mesh, v, penalty).value(penalty.sigma());
    const double nrm = std::pow(dg_norm(mesh, v, penalty), 2);
    fit.min_imag = std::min(fit.min_imag, a.imag());
    if (a.imag() < 0.0) {
      fit.imag_nonnegative = false;
      continue;
    }
    const double deficit = 0.5 * nrm - a.real();
    if (deficit > 0.0) fit.c = std::max(fit.c, a.imag() > 0.0 ? deficit / a.imag() : std::numeric_limits<double>::infinity());
  }
  return fit;
}

double consistency_residual(const Mesh& mesh, const HelmholtzProblem& problem, const PenaltyConfig& penalty,
                            const QuadratureSpec& quad) {
  const DGSpace space(mesh);
  const double k = problem.k();
  const auto ep = elliptic_projection_rhs(problem, space, penalty, quad);
  const auto b = assemble_rhs(space, problem, penalty, quad);
  const auto rules = QuadratureSet::make(quad, k, mesh.h());
  double rmax = 0.0, bmax = 0.0;
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto p = mesh.element_points(e);
    const double area = mesh.elements()[e].area;
    std::array<Complex, 3> mass{};
    for (std::size_t q = 0; q < rules.volume.points.size(); ++q) {
      const auto& l = rules.volume.points[q];
      const Complex u = problem.exact_u(from_barycentric(p, l)) * (rules.volume.weights[q] * area);
      for (int j = 0; j < 3; ++j) mass[j] += u * l[j];
    }
    for (int j = 0; j < 3; ++j) {
      const Index i = DGSpace::dof(e, j);
      rmax = std::max(rmax, std::abs(ep[i] - k * k * mass[j] - b[i]));
      bmax = std::max(bmax, std::abs(b[i]));
    }
  }
  return rmax / bmax;
}

SolutionField random_dg_field(const Mesh& mesh, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SolutionField f{SpaceKind::dg, ComplexVector(3 * mesh.num_elements())};
  for (auto& c : f.coefficients) {
    const double re = dist(rng);
    c = {re, dist(rng)};
  }
  return f;
}

std::vector<TracePoint> trace_along_x_axis(const Mesh& mesh, const SolutionField& field, int samples) {
  if (samples < 2) throw InvalidParameter("trace needs at least 2 samples");
  field.validate(mesh);
  std::vector<TracePoint> out;
  out.reserve(samples);
  const double tol = 1e-12;
  for (int s = 0; s < samples; ++s) {
    const double x = -1.0 + 2.0 * s / (samples - 1);
    const Point2 pt{x, 0.0};
    for (Index e = 0; e < mesh.num_elements(); ++e) {
      const LocalField f(mesh, field, e);
      bool inside = true;
      std::array<double, 3> l;
      for (int j = 0; j < 3; ++j) {
        l[j] = 1.0 / 3.0 + dot(f.g[j], pt - f.centroid);
        if (l[j] < -tol) inside = false;
      }
      if (inside) {
        out.push_back({x, f.at(l)});
        break;
      }
    }
  }
  return out;
}

}  // namespace helmdg
