#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helmdg/dg_assembly.hpp"
#include "helmdg/linalg.hpp"

using namespace helmdg;

namespace {
SparseComplexMatrix random_banded(Index n, Index band, std::uint64_t seed, Complex shift = {4.0, 1.0}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i)
    for (Index j = std::max<Index>(0, i - band); j <= std::min(n - 1, i + band); ++j)
      t.push_back({i, j, Complex(u(rng), u(rng)) + (i == j ? shift : Complex{})});
  return SparseComplexMatrix::from_triplets(n, t);
}

ComplexVector random_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexVector v(n);
  for (auto& x : v) x = Complex(u(rng), u(rng));
  return v;
}
}  // namespace

TEST_CASE("triplets are summed on compression") {
  TripletBuilder b(3);
  b.add(0, 0, 1.0);
  b.add(2, 1, Complex(0, 1));
  b.add(0, 0, 2.0);
  b.add(1, 2, -1.0);
  const SparseComplexMatrix a(b);
  CHECK(a.nnz() == 3);
  CHECK(a.entry(0, 0) == Complex(3.0));
  CHECK(a.entry(2, 1) == Complex(0, 1));
  CHECK(a.entry(1, 1) == Complex{});
  CHECK(a.zero_rows().empty());
  const auto x = a.multiply(ComplexVector{1.0, 2.0, 3.0});
  CHECK(x[0] == Complex(3.0));
  CHECK(x[1] == Complex(-3.0));
  CHECK(x[2] == Complex(0, 2));
  CHECK(a.transpose().entry(1, 2) == Complex(0, 1));
  CHECK_THROWS(SparseComplexMatrix::from_triplets(2, std::vector<Triplet>{{0, 5, 1.0}}));
}

TEST_CASE("small systems by every method") {
  const auto id = SparseComplexMatrix::identity(5);
  const ComplexVector b{1.0, Complex(0, 2), 3.0, -4.0, Complex(5, 5)};
  const auto diag = SparseComplexMatrix::from_triplets(2, std::vector<Triplet>{{0, 0, I}, {1, 1, 2.0}});
  for (auto m : {SolverMethod::automatic, SolverMethod::dense, SolverMethod::band, SolverMethod::gmres,
                 SolverMethod::sparse_lu}) {
    const auto r = solve(id, b, m);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(r.x[i] - b[i]) < 1e-14);
    const auto d = solve(diag, ComplexVector{1.0, 2.0}, m);
    CHECK(std::abs(d.x[0] - Complex(0, -1)) < 1e-14);
    CHECK(std::abs(d.x[1] - Complex(1.0)) < 1e-14);
    CHECK(d.report.relative_residual < 1e-14);
  }
}

TEST_CASE("band, sparse and GMRES agree with dense") {
  const auto a = random_banded(50, 3, 1);
  const auto b = random_vector(50, 2);
  const auto dense = solve(a, b, SolverMethod::dense);
  for (auto m : {SolverMethod::band, SolverMethod::sparse_lu, SolverMethod::gmres}) {
    const auto r = solve(a, b, m);
    CHECK(r.report.method == m);
    double d = 0.0;
    for (int i = 0; i < 50; ++i) d = std::max(d, std::abs(r.x[i] - dense.x[i]));
    CHECK(d < 1e-9);
    CHECK(r.report.relative_residual < 1e-10);
  }
}

TEST_CASE("direct solvers pivot correctly") {
  // No diagonal dominance: partial pivoting must swap rows.
  const auto swap = SparseComplexMatrix::from_triplets(3, std::vector<Triplet>{
      {0, 1, 1.0}, {0, 2, 2.0}, {1, 0, 3.0}, {1, 2, 1.0}, {2, 0, 1.0}, {2, 1, 5.0}});
  const ComplexVector x{1.0, Complex(0, 1), -2.0};
  const auto b = swap.multiply(x);
  const auto a = random_banded(80, 6, 11, 0.0);
  const auto rhs = random_vector(80, 12);
  for (auto m : {SolverMethod::dense, SolverMethod::band, SolverMethod::sparse_lu}) {
    const auto r = solve(swap, b, m);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(r.x[i] - x[i]) < 1e-14);
    CHECK(solve(a, rhs, m).report.relative_residual < 1e-12);
  }
}

TEST_CASE("automatic selection") {
  CHECK(solve(random_banded(100, 2, 3), random_vector(100, 4)).report.method == SolverMethod::dense);
  const auto big = random_banded(1000, 2, 5);
  CHECK(solve(big, random_vector(1000, 6)).report.method == SolverMethod::band);
  const auto sys = assemble_full_system(DGSpace(build_hexagon_mesh(40)), BesselHexagonProblem(10.0),
                                        PenaltyConfig::preset_b(10.0));
  CHECK(solve(sys.matrix, sys.rhs).report.method == SolverMethod::sparse_lu);
}

TEST_CASE("RCM ordering") {
  // A path graph written with a scrambled numbering.
  const Index n = 30;
  std::vector<Index> label(n);
  for (Index i = 0; i < n; ++i) label[i] = (7 * i) % n;
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) {
    t.push_back({label[i], label[i], 2.0});
    if (i + 1 < n) {
      t.push_back({label[i], label[i + 1], -1.0});
      t.push_back({label[i + 1], label[i], -1.0});
    }
  }
  const auto chain = SparseComplexMatrix::from_triplets(n, t);
  CHECK(bandwidth(chain) > 1);
  const auto perm = rcm_order(chain);
  CHECK(bandwidth(chain, perm) == 1);
  std::vector<Index> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (Index i = 0; i < n; ++i) CHECK(sorted[i] == i);
  CHECK(bandwidth(SparseComplexMatrix::identity(9), rcm_order(SparseComplexMatrix::identity(9))) == 0);

  const auto dg = assemble_ah(DGSpace(build_hexagon_mesh(8)), PenaltyConfig::preset_a(10.0));
  const auto p = rcm_order(dg);
  CHECK(bandwidth(dg, p) < bandwidth(dg));
  // permuted() places A(perm[i], perm[j]) at (i, j).
  const auto b = dg.permuted(p);
  CHECK(bandwidth(b) == bandwidth(dg, p));
  for (Index i : {Index{0}, Index{17}, Index{500}})
    for (Index j : {Index{0}, Index{3}, Index{501}}) CHECK(b.entry(i, j) == dg.entry(p[i], p[j]));
}

TEST_CASE("singular systems are reported") {
  const auto z = SparseComplexMatrix::from_triplets(3, std::vector<Triplet>{{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 0.0}});
  const ComplexVector b{1.0, 1.0, 1.0};
  CHECK(z.zero_rows() == std::vector<Index>{2});
  for (auto m : {SolverMethod::dense, SolverMethod::band, SolverMethod::sparse_lu})
    CHECK_THROWS_AS(solve(z, b, m), SingularSystem);
  // Rank one: two equal rows.
  const auto r1 = SparseComplexMatrix::from_triplets(
      2, std::vector<Triplet>{{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
  CHECK_THROWS_AS(solve(r1, ComplexVector{1.0, 2.0}, SolverMethod::dense), SingularSystem);
  CHECK_THROWS_AS(solve(SparseComplexMatrix::identity(2), ComplexVector{1.0}), InvalidParameter);
}

TEST_CASE("a residual above tolerance is reported") {
  SolveOptions o;
  o.residual_tolerance = -1.0;
  const auto a = random_banded(20, 2, 8);
  for (auto m : {SolverMethod::dense, SolverMethod::band, SolverMethod::sparse_lu})
    CHECK_THROWS_AS(solve(a, random_vector(20, 9), m, o), NonConvergence);
}

TEST_CASE("names and dumps") {
  for (auto m : {SolverMethod::automatic, SolverMethod::band, SolverMethod::dense, SolverMethod::gmres,
                 SolverMethod::sparse_lu})
    CHECK(parse_solver_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_solver_method("cholesky"), InvalidParameter);
  std::ostringstream out;
  write_matrix(out, SparseComplexMatrix::identity(2));
  CHECK(out.str().find("1 1 1 0") != std::string::npos);
  const ComplexVector v{3.0, Complex(0, 4)};
  CHECK(norm2(v) == doctest::Approx(5.0));
}
