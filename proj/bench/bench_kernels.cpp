// Serial reference kernels against their OpenMP versions.
//   bench_kernels [m] [repeats]
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "helmdg/analysis.hpp"

using namespace helmdg;

namespace {
double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}
}  // namespace

int main(int argc, char** argv) {
  const int m = argc > 1 ? std::atoi(argv[1]) : 60;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  const double k = 40.0;
  const Mesh mesh = build_hexagon_mesh(m);
  const DGSpace space(mesh);
  const BesselHexagonProblem problem(k);
  const auto penalty = PenaltyConfig::preset_b(k);
  const auto v = random_dg_field(mesh, 1);
  const auto a = assemble_ah(space, penalty);

  std::printf("m=%d unknowns=%lld threads=%d\n", m, static_cast<long long>(space.size()), omp_get_max_threads());
  std::printf("%-16s %12s %12s %8s %s\n", "kernel", "serial_s", "parallel_s", "speedup", "identical");
  const auto row = [&](const char* name, auto&& kernel) {
    decltype(kernel(Execution::serial)) s, p;
    const double ts = best_of(repeats, [&] { s = kernel(Execution::serial); });
    const double tp = best_of(repeats, [&] { p = kernel(Execution::parallel); });
    std::printf("%-16s %12.4f %12.4f %8.2f %s\n", name, ts, tp, ts / tp, s == p ? "yes" : "NO");
  };
  row("assemble_ah", [&](Execution e) { return assemble_ah(space, penalty, e).values(); });
  row("full_system", [&](Execution e) { return assemble_full_system(space, problem, penalty, {}, e).rhs; });
  row("spmv", [&](Execution e) { return a.multiply(v.coefficients, e); });
  row("h1_error", [&](Execution e) { return broken_h1_seminorm_error(mesh, v, problem, {}, e); });
  row("dg_norm_error", [&](Execution e) { return dg_norm_error(mesh, v, problem, penalty, {}, e); });
  return 0;
}
