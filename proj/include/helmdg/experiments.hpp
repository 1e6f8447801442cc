#pragma once

#include <optional>
#include <string>
#include <vector>

#include "helmdg/analysis.hpp"
#include "helmdg/csv.hpp"

namespace helmdg {

/// Largest DG system the harness builds without --force.
inline constexpr Index kMaxUnknowns = 200000;

/// Penalty choice of a run: a named preset or explicit gamma values
/// (multipliers are i*gamma). A missing gamma0 means the scaling rule
/// (k²h)^(2/3) |gamma1|^(1/3).
struct PenaltySpec {
  std::string preset = "A";  // "A", "B" or "custom"
  std::optional<Complex> gamma0;
  Complex gamma1{0.1};
  Complex beta1{1.0};
  double sigma = 1.0;

  static PenaltySpec named(const std::string& preset);
  PenaltyConfig make(double k) const;
  std::string id() const;
};

enum class Method { interpolation, dg, fem };
const char* to_string(Method m);

struct RunOptions {
  SolverMethod solver = SolverMethod::automatic;
  QuadratureSpec quad;
  Execution exec = Execution::serial;
  bool force = false;
};

/// One (method, k, m) case on the hexagon with the Bessel solution.
struct RunResult {
  Method method = Method::dg;
  double k = 0.0;
  int m = 0;
  double h = 0.0;
  Index unknowns = 0;
  std::string penalty_id;
  ErrorReport errors;
  SolveReport solve;
  double h1_semi_of_uh = 0.0;  // |u_h|_{1,h}
  double dg_norm_of_uh = 0.0;  // ||u_h||_{1,h}, DG runs only
  std::string status = "ok";   // ok | skipped:size | failed:<reason>
  SolutionField field;

  bool ok() const { return status == "ok"; }
  bool failed() const { return status.rfind("failed", 0) == 0; }
};

/// Number of unknowns of a method on hexagon m.
Index unknowns_for(Method method, int m);

/// Runs one case. Size-guard refusals and solver failures come back as a
/// status rather than an exception.
RunResult run_case(Method method, double k, int m, const PenaltySpec& penalty = {}, const RunOptions& opts = {},
                   bool keep_field = false);

/// Solves the DG system for an arbitrary problem on an arbitrary mesh.
struct DGSolve {
  SolutionField field;
  SolveReport report;
};
DGSolve solve_dg(const Mesh& mesh, const HelmholtzProblem& problem, const PenaltyConfig& penalty,
                 const RunOptions& opts = {});
DGSolve solve_fem(const Mesh& mesh, const HelmholtzProblem& problem, const RunOptions& opts = {});

/// Smallest m with relative H1 error < threshold whose errors do not increase
/// over the next `window` values of m.
struct CriticalResult {
  Method method;
  double k = 0.0;
  int m_crit = 0;  // 0 when unresolved
  double error_at_crit = 0.0;
  std::vector<double> errors;  // errors[m - 1] for each sampled m
  bool resolved() const { return m_crit > 0; }
  double h_crit() const { return m_crit > 0 ? 1.0 / m_crit : 0.0; }
};
CriticalResult critical_mesh_search(Method method, double k, const PenaltySpec& penalty, const RunOptions& opts,
                                    int m_max, double threshold = 0.99, int window = 3);

/// Reference laws for the critical mesh size.
double critical_h_reference(Method method, double k);

/// First m with relative H1 error <= target.
struct DofResult {
  Method method;
  double k = 0.0;
  int m = 0;  // 0 when not reached within the budget
  Index dofs = 0;
  double error = 0.0;
};
DofResult first_passing_mesh(Method method, double k, const PenaltySpec& penalty, const RunOptions& opts,
                             int m_max, double target = 0.30);

/// m for a given kh, rounded to the nearest integer >= 1.
int mesh_for_kh(double k, double kh);
/// m = round(k^{3/2}), i.e. k³h² = 1.
int mesh_for_k3h2(double k);

/// Experiment configuration shared by the sweeps.
struct ExperimentConfig {
  std::vector<double> k;
  std::vector<int> m;
  std::optional<double> kh;      // m = k / kh when set
  bool k3h2 = false;             // m = k^{3/2} when set
  PenaltySpec penalty;
  RunOptions run;
  bool deterministic = false;
  int m_max = 60;                // search budget for critical and dof-table
};

/// A finished sweep: the table plus whether any row failed.
struct ExperimentOutput {
  CsvTable table;
  bool any_failed = false;
};

ExperimentOutput run_stability_sweep(const ExperimentConfig& cfg);
ExperimentOutput run_convergence(const ExperimentConfig& cfg);
ExperimentOutput run_critical_mesh_search(const ExperimentConfig& cfg);
ExperimentOutput run_sensitivity(const ExperimentConfig& cfg);
ExperimentOutput run_pollution_comparison(const ExperimentConfig& cfg);
ExperimentOutput run_dof_table(const ExperimentConfig& cfg);

/// Mesh values m for wave number k from cfg (m list, kh or k3h2).
std::vector<int> meshes_for(const ExperimentConfig& cfg, double k);

}  // namespace helmdg
