#include <doctest.h>

#include <cmath>

#include "helmdg/analysis.hpp"
#include "helmdg/experiments.hpp"

using namespace helmdg;

namespace {
class LinearProblem final : public HelmholtzProblem {
 public:
  explicit LinearProblem(double k) : HelmholtzProblem(k) {}
  Complex exact_u(Point2 p) const override { return Complex(1.0, 2.0) * p.x - 0.5 * p.y + I; }
  CVec2 exact_grad_u(Point2) const override { return {Complex(1.0, 2.0), -0.5}; }
  Complex source_f(Point2 p) const override { return -k() * k() * exact_u(p); }
  std::string name() const override { return "linear"; }
};

SolutionField zero_dg(const Mesh& mesh) { return {SpaceKind::dg, ComplexVector(3 * mesh.num_elements())}; }
}  // namespace

TEST_CASE("exact norms") {
  const Mesh mesh = build_hexagon_mesh(6);
  const double area = mesh.total_area();
  const PlaneWaveProblem wave(7.0, 1.1);
  CHECK(exact_l2_norm(mesh, wave) == doctest::Approx(std::sqrt(area)).epsilon(1e-13));
  CHECK(exact_h1_seminorm(mesh, wave) == doctest::Approx(7.0 * std::sqrt(area)).epsilon(1e-13));
  const LinearProblem lin(2.0);
  CHECK(exact_h1_seminorm(mesh, lin) == doctest::Approx(std::sqrt(5.25 * area)).epsilon(1e-13));
}

TEST_CASE("Bessel solution H1 seminorm is moderate and quadrature-stable") {
  for (double k : {5.0, 10.0, 20.0, 40.0, 60.0}) {
    const Mesh mesh = build_hexagon_mesh(20);
    const BesselHexagonProblem p(k);
    const double a = exact_h1_seminorm(mesh, p);
    const double b = exact_h1_seminorm(mesh, p, QuadratureSpec{}.doubled());
    CHECK(a > 0.3);
    CHECK(a < 3.0);
    CHECK(std::abs(a - b) < 1e-6 * a);
  }
}

TEST_CASE("errors of the zero field are the exact norms") {
  const Mesh mesh = build_hexagon_mesh(5);
  const BesselHexagonProblem p(10.0);
  const auto z = zero_dg(mesh);
  const auto penalty = PenaltyConfig::preset_a(10.0);
  const auto r = compute_errors(mesh, z, p, &penalty);
  CHECK(r.rel_h1_semi() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.rel_l2() == doctest::Approx(1.0).epsilon(1e-14));
  // No Dirichlet edges and no jumps in u_h: the DG norm reduces to the seminorm.
  CHECK(r.dg_norm == doctest::Approx(r.h1_semi).epsilon(1e-14));
  CHECK(r.penalty_id == "A");
  CHECK(compute_errors(mesh, z, p).dg_norm == 0.0);
}

TEST_CASE("norms of discrete fields") {
  const Mesh mesh = build_hexagon_mesh(4);
  const LinearProblem lin(2.0);
  const auto dg = inject_into_dg(mesh, fe_interpolate(lin, FEMSpace(mesh)));
  const double area = mesh.total_area();
  CHECK(broken_h1_seminorm(mesh, dg) == doctest::Approx(std::sqrt(5.25 * area)).epsilon(1e-13));
  CHECK(dg_norm(mesh, dg, PenaltyConfig::preset_b(3.0)) == doctest::Approx(broken_h1_seminorm(mesh, dg)));
  CHECK(l2_norm(mesh, dg) == doctest::Approx(exact_l2_norm(mesh, lin)).epsilon(1e-13));
  // A broken field has jumps, so its DG norm exceeds its seminorm.
  const auto v = random_dg_field(mesh, 1);
  CHECK(dg_norm(mesh, v, PenaltyConfig::preset_b(3.0)) > 1.1 * broken_h1_seminorm(mesh, v));
  CHECK(dg_norm(mesh, v, PenaltyConfig::none(3.0)) == doctest::Approx(broken_h1_seminorm(mesh, v)));
}

TEST_CASE("DG norm error on Dirichlet edges uses the exact trace") {
  const Mesh mesh = build_square_with_hole_mesh(6);
  const LinearProblem lin(2.0);
  const auto exact = inject_into_dg(mesh, fe_interpolate(lin, FEMSpace(mesh)));
  CHECK(dg_norm_error(mesh, exact, lin, PenaltyConfig::preset_a(2.0)) < 1e-12);
  // The zero field misses the Dirichlet data: boundary terms add to the seminorm.
  const auto z = zero_dg(mesh);
  const auto penalty = PenaltyConfig::preset_b(2.0);
  CHECK(dg_norm_error(mesh, z, lin, penalty) > 1.5 * broken_h1_seminorm_error(mesh, z, lin));
}

TEST_CASE("integral identities hold for random fields") {
  for (const Mesh& mesh : {build_hexagon_mesh(3), build_square_with_hole_mesh(6)}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto v = random_dg_field(mesh, seed);
      for (Point2 c : {Point2{0, 0}, Point2{0.2, -0.3}}) {
        const auto r = rellich_identity_residuals(mesh, v, c);
        CHECK(r.element_value.size() == static_cast<std::size_t>(mesh.num_elements()));
        CHECK(r.edge.size() == mesh.edge_sets().interior_dirichlet.size());
        CHECK(r.max_relative() < 1e-12);
      }
    }
  }
}

TEST_CASE("discrete energy identities") {
  for (const auto& penalty : {PenaltyConfig::preset_a(10.0), PenaltyConfig::preset_b(10.0)}) {
    const Mesh mesh = build_hexagon_mesh(10);
    const BesselHexagonProblem p(10.0);
    const auto s = solve_dg(mesh, p, penalty);
    const auto e = discrete_energy_identities(mesh, s.field, p, penalty);
    CHECK(e.real < 1e-9);
    CHECK(e.imag < 1e-9);
    CHECK(e.jump_energy > 0.0);
    // Imaginary part: jump energy plus Robin term equals Im of the load.
    CHECK(e.jump_energy == doctest::Approx(e.rhs.imag()).epsilon(1e-8));
  }
}

TEST_CASE("stability constant and coercivity fit") {
  const Mesh mesh = build_hexagon_mesh(6);
  const double ca = theoretical_csta(mesh, PenaltyConfig::preset_a(10.0), 10.0);
  CHECK(std::isfinite(ca));
  CHECK(ca > 0.1);
  CHECK_THROWS_AS(theoretical_csta(mesh, PenaltyConfig::preset_b(10.0), 10.0), InvalidParameter);
  CHECK_THROWS_AS(theoretical_csta(mesh, PenaltyConfig::none(10.0), 10.0), InvalidParameter);

  const auto fa = fit_coercivity_constant(mesh, PenaltyConfig::preset_a(10.0), 40, 5);
  CHECK(fa.imag_nonnegative);
  CHECK(fa.min_imag > 0.0);
  CHECK(std::isfinite(fa.c));
  CHECK(fa.c >= 0.0);
  // Same seed, same fit.
  CHECK(fit_coercivity_constant(mesh, PenaltyConfig::preset_a(10.0), 40, 5).c == fa.c);
  // Without penalties the imaginary part vanishes and no constant can work.
  CHECK(fit_coercivity_constant(mesh, PenaltyConfig::none(10.0), 10, 5).min_imag == doctest::Approx(0.0));
}

TEST_CASE("consistency residual of the exact solution") {
  const Mesh mesh = build_hexagon_mesh(8);
  QuadratureSpec quad;
  quad.degree = 7;
  for (const auto& penalty : {PenaltyConfig::preset_a(5.0), PenaltyConfig::preset_b(5.0, -1.0)})
    CHECK(consistency_residual(mesh, BesselHexagonProblem(5.0), penalty, quad) < 1e-8);
  CHECK(consistency_residual(build_square_with_hole_mesh(6), PlaneWaveProblem(4.0, 0.3),
                             PenaltyConfig::preset_a(4.0), quad) < 1e-8);
}

TEST_CASE("random fields and traces") {
  const Mesh mesh = build_hexagon_mesh(4);
  CHECK(random_dg_field(mesh, 11).coefficients == random_dg_field(mesh, 11).coefficients);
  CHECK(random_dg_field(mesh, 11).coefficients != random_dg_field(mesh, 12).coefficients);
  for (const auto& c : random_dg_field(mesh, 11).coefficients) {
    CHECK(std::abs(c.real()) <= 1.0);
    CHECK(std::abs(c.imag()) <= 1.0);
  }
  const LinearProblem lin(1.0);
  const auto dg = inject_into_dg(mesh, fe_interpolate(lin, FEMSpace(mesh)));
  const auto t = trace_along_x_axis(mesh, dg, 401);
  REQUIRE(t.size() == 401);
  CHECK(t.front().x == -1.0);
  CHECK(t.back().x == 1.0);
  for (const auto& p : t) CHECK(std::abs(p.value - lin.exact_u({p.x, 0.0})) < 1e-13);
  CHECK_THROWS_AS(trace_along_x_axis(mesh, dg, 1), InvalidParameter);
}
