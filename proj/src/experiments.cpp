#include "helmdg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace helmdg {

PenaltySpec PenaltySpec::named(const std::string& preset) {
  PenaltySpec s;
  if (preset == "A" || preset == "a") {
    s.preset = "A";
  } else if (preset == "B" || preset == "b") {
    s.preset = "B";
  } else {
    throw InvalidParameter("unknown preset '" + preset + "' (expected A or B)");
  }
  return s;
}

PenaltyConfig PenaltySpec::make(double k) const {
  if (preset == "A") return PenaltyConfig::preset_a(k, sigma);
  if (preset == "B") return PenaltyConfig::preset_b(k, sigma);
  const Complex z1 = I * gamma1, zb = I * beta1;
  PenaltyRule r0;
  if (gamma0) {
    r0 = [z = I * *gamma0](const EdgeContext&) { return z; };
  } else {
    r0 = [g1 = std::abs(gamma1)](const EdgeContext& c) { return I * gamma0_scaling_rule(c.k, c.h_e, g1); };
  }
  return PenaltyConfig(id(), k, r0, [z1](const EdgeContext&) { return z1; },
                       [zb](const EdgeContext&) { return zb; }, sigma);
}

std::string PenaltySpec::id() const {
  std::string s = preset;
  if (preset == "A" || preset == "B") return sigma != 1.0 ? s + ";sigma=" + fmt(sigma) : s;
  s = "g0=" + (gamma0 ? format_complex(*gamma0) : std::string("rule")) + ";g1=" + format_complex(gamma1) +
                  ";b1=" + format_complex(beta1);
  if (sigma != 1.0) s += ";sigma=" + fmt(sigma);
  return s;
}

const char* to_string(Method m) {
  switch (m) {
    case Method::interpolation: return "interp";
    case Method::dg: return "dg";
    case Method::fem: return "fem";
  }
  return "?";
}

Index unknowns_for(Method method, int m) {
  const auto c = hexagon_counts(m);
  return method == Method::dg ? c.dg_unknowns : c.vertices;
}

int mesh_for_kh(double k, double kh) {
  if (!(kh > 0.0)) throw InvalidParameter("kh must be positive");
  return std::max(1, static_cast<int>(std::lround(k / kh)));
}

int mesh_for_k3h2(double k) { return std::max(1, static_cast<int>(std::lround(std::pow(k, 1.5)))); }

DGSolve solve_dg(const Mesh& mesh, const HelmholtzProblem& problem, const PenaltyConfig& penalty,
                 const RunOptions& opts) {
  const DGSpace space(mesh);
  const auto sys = assemble_full_system(space, problem, penalty, opts.quad, opts.exec);
  auto res = solve(sys.matrix, sys.rhs, opts.solver);
  return {SolutionField{SpaceKind::dg, std::move(res.x)}, res.report};
}

DGSolve solve_fem(const Mesh& mesh, const HelmholtzProblem& problem, const RunOptions& opts) {
  const FEMSpace space(mesh);
  const auto sys = assemble_fem_system(space, problem, opts.quad);
  auto res = solve(sys.matrix, sys.rhs, opts.solver);
  return {fem_field(space, problem, res.x), res.report};
}

RunResult run_case(Method method, double k, int m, const PenaltySpec& penalty, const RunOptions& opts,
                   bool keep_field) {
  RunResult r;
  r.method = method;
  r.k = k;
  r.m = m;
  r.h = 1.0 / m;
  r.unknowns = unknowns_for(method, m);
  r.penalty_id = method == Method::dg ? penalty.id() : "";
  if (r.unknowns > kMaxUnknowns && !opts.force) {
    r.status = "skipped:size";
    r.errors.h1_semi = r.errors.exact_h1_semi = std::nan("");
    return r;
  }
  try {
    const Mesh mesh = build_hexagon_mesh(m);
    const BesselHexagonProblem problem(k);
    std::optional<PenaltyConfig> pc;
    switch (method) {
      case Method::interpolation:
        r.field = fe_interpolate(problem, FEMSpace(mesh));
        break;
      case Method::fem: {
        auto s = solve_fem(mesh, problem, opts);
        r.field = std::move(s.field);
        r.solve = s.report;
        break;
      }
      case Method::dg: {
        pc.emplace(penalty.make(k));
        auto s = solve_dg(mesh, problem, *pc, opts);
        r.field = std::move(s.field);
        r.solve = s.report;
        break;
      }
    }
    r.errors = compute_errors(mesh, r.field, problem, pc ? &*pc : nullptr, opts.quad, opts.exec);
    r.h1_semi_of_uh = broken_h1_seminorm(mesh, r.field);
    if (pc) r.dg_norm_of_uh = dg_norm(mesh, r.field, *pc);
  } catch (const NonConvergence& e) {
    r.status = std::string("failed:nonconvergence");
    r.solve.relative_residual = e.best_residual;
  } catch (const SingularSystem&) {
    r.status = "failed:singular";
  } catch (const std::exception& e) {
    r.status = std::string("failed:") + e.what();
  }
  if (!r.ok()) r.errors.h1_semi = r.errors.exact_h1_semi = std::nan("");
  if (!keep_field) r.field.coefficients.clear();
  return r;
}

double critical_h_reference(Method method, double k) {
  switch (method) {
    case Method::interpolation: return std::sqrt(3.0) * std::numbers::pi / k;
    case Method::dg: return 1.35 * std::numbers::pi / k;
    case Method::fem: return std::sqrt(48.0 / (k * k * k));
  }
  return 0.0;
}

CriticalResult critical_mesh_search(Method method, double k, const PenaltySpec& penalty, const RunOptions& opts,
                                    int m_max, double threshold, int window) {
  CriticalResult c{method, k, 0, 0.0, {}};
  auto err = [&](int m) {
    while (static_cast<int>(c.errors.size()) < m) {
      const int mm = static_cast<int>(c.errors.size()) + 1;
      const auto r = run_case(method, k, mm, penalty, opts);
      c.errors.push_back(r.ok() ? r.errors.rel_h1_semi() : std::nan(""));
    }
    return c.errors[m - 1];
  };
  for (int m = 1; m + window <= m_max; ++m) {
    const double e = err(m);
    if (!(e < threshold)) continue;
    bool monotone = true;
    double prev = e;
    for (int j = 1; j <= window && monotone; ++j) {
      const double next = err(m + j);
      if (!(next <= prev)) monotone = false;
      prev = next;
    }
    if (monotone) {
      c.m_crit = m;
      c.error_at_crit = e;
      break;
    }
  }
  return c;
}

DofResult first_passing_mesh(Method method, double k, const PenaltySpec& penalty, const RunOptions& opts,
                             int m_max, double target) {
  DofResult d{method, k, 0, 0, 0.0};
  for (int m = 1; m <= m_max; ++m) {
    const auto r = run_case(method, k, m, penalty, opts);
    if (r.status == "skipped:size") break;
    if (r.ok() && r.errors.rel_h1_semi() <= target) {
      d.m = m;
      d.dofs = r.unknowns;
      d.error = r.errors.rel_h1_semi();
      break;
    }
  }
  return d;
}

std::vector<int> meshes_for(const ExperimentConfig& cfg, double k) {
  if (cfg.k3h2) return {mesh_for_k3h2(k)};
  if (cfg.kh) return {mesh_for_kh(k, *cfg.kh)};
  if (cfg.m.empty()) throw InvalidParameter("no mesh sizes given (use --m, --kh or --k3h2)");
  return cfg.m;
}

namespace {

void add_common_metadata(CsvTable& t, const std::string& experiment, const ExperimentConfig& cfg) {
  t.add_metadata("experiment: " + experiment);
  t.add_metadata("domain: unit hexagon, u = cos(kr)/k - c J0(kr), f = sin(kr)/r, Robin boundary");
  t.add_metadata("quadrature: volume degree " + fmt(cfg.run.quad.degree) + ", edge points " +
                 fmt(cfg.run.quad.edge_points) + ", subdivision at kh > " + fmt(cfg.run.quad.max_kh));
  t.add_metadata("desk-scale limits: k <= 60 by default, at most " + fmt(kMaxUnknowns) +
                 " DG unknowns without --force; larger sweeps are truncated");
}

std::vector<std::string> provenance_columns() { return {"preset", "solver", "quad_degree", "residual", "status"}; }

std::vector<std::string> with_provenance(std::vector<std::string> cols) {
  for (auto& c : provenance_columns()) cols.push_back(c);
  return cols;
}

std::string solver_name(const RunResult& r) {
  return r.method == Method::interpolation || !r.ok() ? "-" : to_string(r.solve.method);
}

/// Combines the solve provenance of several runs of the same row.
struct RowProvenance {
  std::string solver = "-";
  double residual = 0.0;
  std::string status = "ok";
  bool failed = false;

  void add(const RunResult& r) {
    if (r.method != Method::interpolation && r.ok()) {
      if (solver == "-" || r.method == Method::dg) solver = solver_name(r);
      residual = std::max(residual, r.solve.relative_residual);
    }
    if (!r.ok() && status == "ok") status = r.status;
    failed = failed || r.failed();
  }
  void append(std::vector<std::string>& row, const std::string& preset, int quad_degree) const {
    row.push_back(preset);
    row.push_back(solver);
    row.push_back(fmt(quad_degree));
    row.push_back(fmt(residual));
    row.push_back(status);
  }
};

}  // namespace

ExperimentOutput run_stability_sweep(const ExperimentConfig& cfg) {
  ExperimentOutput out{CsvTable(with_provenance(
      {"k", "m", "h", "dg_norm_1h_of_uh", "dg_h1_semi_of_uh", "fem_h1_semi", "exact_h1_semi"}))};
  add_common_metadata(out.table, "stability", cfg);
  for (double k : cfg.k)
    for (int m : meshes_for(cfg, k)) {
      const auto dg = run_case(Method::dg, k, m, cfg.penalty, cfg.run);
      const auto fem = run_case(Method::fem, k, m, cfg.penalty, cfg.run);
      RowProvenance p;
      p.add(dg);
      p.add(fem);
      out.any_failed = out.any_failed || p.failed;
      const double exact = exact_h1_seminorm(build_hexagon_mesh(m), BesselHexagonProblem(k), cfg.run.quad);
      std::vector<std::string> row{fmt(k),
                                   fmt(m),
                                   fmt(1.0 / m),
                                   dg.ok() ? fmt(dg.dg_norm_of_uh) : "nan",
                                   dg.ok() ? fmt(dg.h1_semi_of_uh) : "nan",
                                   fem.ok() ? fmt(fem.h1_semi_of_uh) : "nan",
                                   fmt(exact)};
      p.append(row, cfg.penalty.id(), cfg.run.quad.degree);
      out.table.add_row(std::move(row));
    }
  return out;
}

ExperimentOutput run_convergence(const ExperimentConfig& cfg) {
  ExperimentOutput out{
      CsvTable(with_provenance({"k", "m", "h", "rel_h1_interp", "rel_h1_dg", "rel_l2_dg", "rel_h1_fem"}))};
  add_common_metadata(out.table, "convergence", cfg);
  for (double k : cfg.k)
    for (int m : meshes_for(cfg, k)) {
      const auto in = run_case(Method::interpolation, k, m, cfg.penalty, cfg.run);
      const auto dg = run_case(Method::dg, k, m, cfg.penalty, cfg.run);
      const auto fem = run_case(Method::fem, k, m, cfg.penalty, cfg.run);
      RowProvenance p;
      p.add(in);
      p.add(dg);
      p.add(fem);
      out.any_failed = out.any_failed || p.failed;
      std::vector<std::string> row{fmt(k),
                                   fmt(m),
                                   fmt(1.0 / m),
                                   in.ok() ? fmt(in.errors.rel_h1_semi()) : "nan",
                                   dg.ok() ? fmt(dg.errors.rel_h1_semi()) : "nan",
                                   dg.ok() ? fmt(dg.errors.rel_l2()) : "nan",
                                   fem.ok() ? fmt(fem.errors.rel_h1_semi()) : "nan"};
      p.append(row, cfg.penalty.id(), cfg.run.quad.degree);
      out.table.add_row(std::move(row));
    }
  return out;
}

ExperimentOutput run_critical_mesh_search(const ExperimentConfig& cfg) {
  ExperimentOutput out{CsvTable(
      {"k", "method", "h_crit", "m_crit", "error_at_crit", "h_reference", "ratio", "preset", "quad_degree",
       "status"})};
  add_common_metadata(out.table, "critical", cfg);
  out.table.add_metadata("criterion: smallest m with relative H1 error < 0.99 and non-increasing over the next 3 m");
  for (double k : cfg.k)
    for (Method method : {Method::interpolation, Method::dg, Method::fem}) {
      const auto c = critical_mesh_search(method, k, cfg.penalty, cfg.run, cfg.m_max);
      const double ref = critical_h_reference(method, k);
      out.table.add_row({fmt(k), to_string(method), c.resolved() ? fmt(c.h_crit()) : "nan", fmt(c.m_crit),
                         c.resolved() ? fmt(c.error_at_crit) : "nan", fmt(ref),
                         c.resolved() ? fmt(c.h_crit() / ref) : "nan",
                         method == Method::dg ? cfg.penalty.id() : "-", fmt(cfg.run.quad.degree),
                         c.resolved() ? "ok" : "unresolved"});
    }
  return out;
}

ExperimentOutput run_sensitivity(const ExperimentConfig& cfg) {
  ExperimentOutput out{CsvTable(with_provenance({"k", "m", "h", "gamma0", "gamma1", "beta1", "rel_h1_dg"}))};
  add_common_metadata(out.table, "sensitivity", cfg);
  const std::vector<std::optional<double>> gamma0s{0.01, 1.0, 100.0, std::nullopt};
  const std::vector<double> beta1s{0.0, 1.0, 100.0};
  const std::vector<double> gamma1s{0.0, 0.01, 0.1, 1.0};
  for (double k : cfg.k)
    for (int m : meshes_for(cfg, k))
      for (const auto& g0 : gamma0s)
        for (double b1 : beta1s)
          for (double g1 : gamma1s) {
            PenaltySpec ps;
            ps.preset = "custom";
            if (g0) ps.gamma0 = Complex{*g0};
            ps.gamma1 = g1;
            ps.beta1 = b1;
            ps.sigma = cfg.penalty.sigma;
            const auto r = run_case(Method::dg, k, m, ps, cfg.run);
            RowProvenance p;
            p.add(r);
            out.any_failed = out.any_failed || p.failed;
            std::vector<std::string> row{fmt(k), fmt(m), fmt(1.0 / m), g0 ? fmt(*g0) : "rule",
                                         fmt(g1), fmt(b1), r.ok() ? fmt(r.errors.rel_h1_semi()) : "nan"};
            p.append(row, ps.id(), cfg.run.quad.degree);
            out.table.add_row(std::move(row));
          }
  return out;
}

ExperimentOutput run_pollution_comparison(const ExperimentConfig& cfg) {
  ExperimentOutput out{CsvTable(with_provenance({"k", "m", "h", "kh", "rel_h1_dg"}))};
  add_common_metadata(out.table, "pollution", cfg);
  const std::vector<double> khs = cfg.kh ? std::vector<double>{*cfg.kh} : std::vector<double>{1.0, 0.5};
  for (const char* preset : {"A", "B"})
    for (double kh : khs)
      for (double k : cfg.k) {
        const int m = mesh_for_kh(k, kh);
        const auto r = run_case(Method::dg, k, m, PenaltySpec::named(preset), cfg.run);
        RowProvenance p;
        p.add(r);
        out.any_failed = out.any_failed || p.failed;
        std::vector<std::string> row{fmt(k), fmt(m), fmt(1.0 / m), fmt(kh),
                                     r.ok() ? fmt(r.errors.rel_h1_semi()) : "nan"};
        p.append(row, preset, cfg.run.quad.degree);
        out.table.add_row(std::move(row));
      }
  return out;
}

ExperimentOutput run_dof_table(const ExperimentConfig& cfg) {
  ExperimentOutput out{CsvTable({"k", "method", "m", "h", "dofs", "rel_h1", "target", "preset", "quad_degree",
                                 "status"})};
  add_common_metadata(out.table, "dof-table", cfg);
  const PenaltySpec& dg_penalty = cfg.penalty;
  out.table.add_metadata("dg penalty: " + dg_penalty.id());
  for (double k : cfg.k)
    for (Method method : {Method::interpolation, Method::dg, Method::fem}) {
      const auto d = first_passing_mesh(method, k, dg_penalty, cfg.run, cfg.m_max);
      out.table.add_row({fmt(k), to_string(method), fmt(d.m), d.m ? fmt(1.0 / d.m) : "nan", fmt(d.dofs),
                         d.m ? fmt(d.error) : "nan", "0.3", method == Method::dg ? dg_penalty.id() : "-",
                         fmt(cfg.run.quad.degree), d.m ? "ok" : "unresolved"});
    }
  return out;
}

}  // namespace helmdg
