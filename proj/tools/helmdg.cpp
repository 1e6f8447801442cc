// helmdg: experiment runner for the IPDG Helmholtz solver.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "helmdg/experiments.hpp"

using namespace helmdg;

namespace {

/// "a,b,c" items, each either a value or an inclusive range "lo:hi[:step]".
std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    std::vector<double> parts;
    std::stringstream ss(item);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(std::stod(p));
    if (parts.size() == 1) {
      out.push_back(parts[0]);
    } else if (parts.size() == 2 || parts.size() == 3) {
      const double step = parts.size() == 3 ? parts[2] : 1.0;
      if (!(step > 0)) throw InvalidParameter("range step must be positive in '" + item + "'");
      for (double v = parts[0]; v <= parts[1] + 1e-9 * step; v += step) out.push_back(v);
    } else {
      throw InvalidParameter("cannot parse list item '" + item + "'");
    }
  }
  return out;
}

struct CommonArgs {
  std::vector<std::string> k;
  std::vector<std::string> m;
  double kh = 0.0;
  bool k3h2 = false;
  std::string preset;
  std::string gamma0, gamma1, beta1;
  double sigma = 1.0;
  std::string solver = "auto";
  int quad_degree = 5;
  std::string out = ".";
  bool deterministic = false;
  bool force = false;
  int m_max = 0;
};

void add_common(CLI::App* app, CommonArgs& a) {
  app->add_option("--k", a.k, "wave numbers: values or lo:hi[:step] ranges")->delimiter(',');
  app->add_option("--m", a.m, "mesh parameters (h = 1/m): values or ranges")->delimiter(',');
  app->add_option("--kh", a.kh, "fix kh and derive m = k/kh");
  app->add_flag("--k3h2", a.k3h2, "derive m from k^3 h^2 = 1");
  app->add_option("--preset", a.preset, "penalty preset A or B");
  app->add_option("--gamma0", a.gamma0, "gamma0 value, or 'rule' for (k^2 h)^(2/3) |gamma1|^(1/3)");
  app->add_option("--gamma1", a.gamma1, "gamma1 (complex a+bi accepted); multiplier is i*gamma1");
  app->add_option("--beta1", a.beta1, "beta1 (complex a+bi accepted)");
  app->add_option("--sigma", a.sigma, "symmetry parameter");
  app->add_option("--solver", a.solver, "auto|band|dense|gmres|sparse");
  app->add_option("--quad-degree", a.quad_degree, "volume quadrature degree for data and error integrals");
  app->add_option("--out", a.out, "output directory");
  app->add_flag("--deterministic", a.deterministic, "serial kernels, no timestamps: byte-identical output");
  app->add_flag("--force", a.force, "allow systems above the size guard; do not fail on failed rows");
  app->add_option("--m-max", a.m_max, "mesh budget for searches");
}

ExperimentConfig make_config(const CommonArgs& a, std::vector<double> default_k, std::vector<int> default_m,
                             const std::string& default_preset, int default_m_max) {
  ExperimentConfig cfg;
  cfg.k = a.k.empty() ? std::move(default_k) : parse_list(a.k);
  for (double k : cfg.k)
    if (!(k > 0)) throw InvalidParameter("k must be positive");
  if (!a.m.empty()) {
    for (double m : parse_list(a.m)) {
      if (m < 1 || m != std::floor(m)) throw InvalidParameter("m must be a positive integer");
      cfg.m.push_back(static_cast<int>(m));
    }
  } else {
    cfg.m = std::move(default_m);
  }
  if (a.kh > 0) cfg.kh = a.kh;
  cfg.k3h2 = a.k3h2;

  const bool custom = !a.gamma0.empty() || !a.gamma1.empty() || !a.beta1.empty();
  if (custom) {
    if (!a.preset.empty()) throw InvalidParameter("--preset cannot be combined with explicit gamma values");
    cfg.penalty.preset = "custom";
    if (!a.gamma0.empty() && a.gamma0 != "rule") cfg.penalty.gamma0 = parse_complex(a.gamma0);
    if (!a.gamma1.empty()) cfg.penalty.gamma1 = parse_complex(a.gamma1);
    if (!a.beta1.empty()) cfg.penalty.beta1 = parse_complex(a.beta1);
  } else {
    cfg.penalty = PenaltySpec::named(a.preset.empty() ? default_preset : a.preset);
  }
  cfg.penalty.sigma = a.sigma;

  cfg.run.solver = parse_solver_method(a.solver);
  if (a.quad_degree < 1) throw InvalidParameter("--quad-degree must be >= 1");
  cfg.run.quad.degree = a.quad_degree;
  cfg.run.quad.edge_points = std::max(4, (a.quad_degree + 2) / 2);
  cfg.run.exec = a.deterministic ? Execution::serial : Execution::parallel;
  cfg.run.force = a.force;
  cfg.deterministic = a.deterministic;
  cfg.m_max = a.m_max > 0 ? a.m_max : default_m_max;
  return cfg;
}

int finish(ExperimentOutput out, const CommonArgs& a, const std::string& file) {
  if (!a.deterministic) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out.table.add_metadata(std::string("generated: ") + buf);
  }
  std::filesystem::create_directories(a.out);
  const auto path = (std::filesystem::path(a.out) / file).string();
  out.table.write_file(path);
  std::cout << "wrote " << path << " (" << out.table.rows().size() << " rows)\n";
  if (out.any_failed && !a.force) {
    std::cerr << "some rows failed; see the status column\n";
    return 2;
  }
  return 0;
}

std::vector<double> range(double lo, double hi) {
  std::vector<double> v;
  for (double k = lo; k <= hi; k += 1.0) v.push_back(k);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IPDG and conforming P1 solvers for the Helmholtz equation with experiment sweeps"};
  app.require_subcommand(1);

  CommonArgs a;
  auto* stability = app.add_subcommand("stability", "norms of u_h across k at fixed h -> stability.csv");
  auto* convergence = app.add_subcommand("convergence", "relative errors vs h -> error.csv");
  auto* critical = app.add_subcommand("critical", "critical mesh size search -> critical.csv");
  auto* sensitivity = app.add_subcommand("sensitivity", "penalty parameter grid -> sensitivity.csv");
  auto* pollution = app.add_subcommand("pollution", "preset A vs B along kh = const -> pollution.csv");
  auto* dof_table = app.add_subcommand("dof-table", "unknowns needed for 30% error -> dof_table.csv");
  for (auto* sub : {stability, convergence, critical, sensitivity, pollution, dof_table}) add_common(sub, a);

  auto* solve_cmd = app.add_subcommand("solve", "one solve with optional dumps");
  add_common(solve_cmd, a);
  std::string domain = "hexagon", method = "dg", dump_mesh, dump_matrix, dump_trace;
  double theta = 0.0;
  int trace_samples = 401;
  solve_cmd->add_option("--domain", domain, "hexagon|square-hole");
  solve_cmd->add_option("--method", method, "dg|fem|interp");
  solve_cmd->add_option("--theta", theta, "plane-wave direction on the square-with-hole domain");
  solve_cmd->add_option("--dump-mesh", dump_mesh, "write `v`/`t`/`e` mesh records");
  solve_cmd->add_option("--dump-matrix", dump_matrix, "write `row col re im` system matrix");
  solve_cmd->add_option("--dump-trace", dump_trace, "write `x re im` samples along y = 0");
  solve_cmd->add_option("--trace-samples", trace_samples, "number of trace samples");

  auto* mesh_cmd = app.add_subcommand("mesh", "write a mesh dump");
  int mesh_m = 4;
  std::string mesh_out = "mesh.txt";
  mesh_cmd->add_option("--domain", domain, "hexagon|square-hole");
  mesh_cmd->add_option("--m", mesh_m, "mesh parameter");
  mesh_cmd->add_option("--out", mesh_out, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (stability->parsed())
      return finish(run_stability_sweep(make_config(a, range(1, 60), {20}, "A", 60)), a, "stability.csv");
    if (convergence->parsed())
      return finish(run_convergence(make_config(a, {5}, {4, 8, 16, 32}, "A", 60)), a, "error.csv");
    if (critical->parsed())
      return finish(run_critical_mesh_search(make_config(a, {10, 20, 30}, {}, "A", 60)), a, "critical.csv");
    if (sensitivity->parsed())
      return finish(run_sensitivity(make_config(a, {5, 20}, {10, 20}, "A", 60)), a, "sensitivity.csv");
    if (pollution->parsed())
      return finish(run_pollution_comparison(make_config(a, {5, 10, 20, 30, 40, 50, 60}, {}, "A", 60)), a,
                    "pollution.csv");
    if (dof_table->parsed())
      return finish(run_dof_table(make_config(a, {10, 50}, {}, "B", 120)), a, "dof_table.csv");

    if (mesh_cmd->parsed()) {
      const Mesh mesh = domain == "hexagon" ? build_hexagon_mesh(mesh_m) : build_square_with_hole_mesh(mesh_m);
      std::ofstream out(mesh_out);
      write_mesh(out, mesh);
      std::cout << "wrote " << mesh_out << "\n";
      return 0;
    }

    if (solve_cmd->parsed()) {
      auto cfg = make_config(a, {10}, {10}, "A", 60);
      const double k = cfg.k.at(0);
      const int m = meshes_for(cfg, k).at(0);
      if (domain != "hexagon" && domain != "square-hole") throw InvalidParameter("unknown domain " + domain);
      const bool hex = domain == "hexagon";
      const Mesh mesh = hex ? build_hexagon_mesh(m) : build_square_with_hole_mesh(m);
      std::unique_ptr<HelmholtzProblem> problem;
      if (hex) {
        problem = std::make_unique<BesselHexagonProblem>(k);
      } else {
        problem = std::make_unique<PlaneWaveProblem>(k, theta);
      }
      const auto penalty = cfg.penalty.make(k);
      const Index n = method == "dg" ? 3 * mesh.num_elements() : mesh.num_vertices();
      if (n > kMaxUnknowns && !cfg.run.force) throw InvalidParameter("system too large; pass --force");

      SolutionField field;
      SolveReport report;
      if (method == "dg") {
        const DGSpace space(mesh);
        const auto sys = assemble_full_system(space, *problem, penalty, cfg.run.quad, cfg.run.exec);
        if (!dump_matrix.empty()) {
          std::ofstream out(dump_matrix);
          write_matrix(out, sys.matrix);
        }
        auto res = solve(sys.matrix, sys.rhs, cfg.run.solver);
        field = {SpaceKind::dg, std::move(res.x)};
        report = res.report;
      } else if (method == "fem") {
        const FEMSpace space(mesh);
        const auto sys = assemble_fem_system(space, *problem, cfg.run.quad);
        if (!dump_matrix.empty()) {
          std::ofstream out(dump_matrix);
          write_matrix(out, sys.matrix);
        }
        auto res = solve(sys.matrix, sys.rhs, cfg.run.solver);
        field = fem_field(space, *problem, res.x);
        report = res.report;
      } else if (method == "interp") {
        field = fe_interpolate(*problem, FEMSpace(mesh));
      } else {
        throw InvalidParameter("unknown method " + method);
      }
      if (!dump_mesh.empty()) {
        std::ofstream out(dump_mesh);
        write_mesh(out, mesh);
      }
      if (!dump_trace.empty()) {
        std::ofstream out(dump_trace);
        out.precision(12);
        for (const auto& p : trace_along_x_axis(mesh, field, trace_samples))
          out << p.x << ' ' << p.value.real() << ' ' << p.value.imag() << '\n';
      }
      const auto err = compute_errors(mesh, field, *problem, method == "dg" ? &penalty : nullptr, cfg.run.quad,
                                      cfg.run.exec);
      std::cout << "problem " << problem->name() << " k=" << k << " m=" << m << " unknowns=" << n << "\n";
      if (method != "interp")
        std::cout << "solver " << to_string(report.method) << " residual=" << report.relative_residual
                  << " seconds=" << report.seconds << "\n";
      std::cout << "rel_h1=" << err.rel_h1_semi() << " rel_l2=" << err.rel_l2();
      if (method == "dg") std::cout << " rel_dg_norm=" << err.rel_dg_norm();
      std::cout << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
