#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "helmdg/types.hpp"

namespace helmdg {

struct Triplet {
  Index row;
  Index col;
  Complex value;
};

/// Builder form: an unordered list of (row, col, value); duplicates are summed
/// on compression in insertion order.
class TripletBuilder {
 public:
  explicit TripletBuilder(Index n) : n_(n) {}

  void add(Index row, Index col, Complex value) { entries_.push_back({row, col, value}); }
  void append(std::span<const Triplet> more) { entries_.insert(entries_.end(), more.begin(), more.end()); }
  void reserve(std::size_t n) { entries_.reserve(n); }

  Index size() const { return n_; }
  const std::vector<Triplet>& entries() const { return entries_; }

 private:
  Index n_;
  std::vector<Triplet> entries_;
};

/// Square complex matrix in compressed sparse row form. Column indices are
/// sorted within each row and unique.
class SparseComplexMatrix {
 public:
  SparseComplexMatrix() = default;
  explicit SparseComplexMatrix(const TripletBuilder& builder);
  static SparseComplexMatrix from_triplets(Index n, std::span<const Triplet> triplets);
  static SparseComplexMatrix identity(Index n);

  Index size() const { return n_; }
  Index nnz() const { return static_cast<Index>(values_.size()); }
  const std::vector<Index>& row_ptr() const { return row_ptr_; }
  const std::vector<Index>& col_idx() const { return col_idx_; }
  const std::vector<Complex>& values() const { return values_; }

  /// Stored value, or 0 if the entry is not stored.
  Complex entry(Index row, Index col) const;
  double max_abs() const;
  /// Rows whose stored values are all exactly zero (or that store nothing).
  std::vector<Index> zero_rows() const;

  ComplexVector multiply(std::span<const Complex> x, Execution exec = Execution::serial) const;
  SparseComplexMatrix transpose() const;
  /// B = P A P^T with B(perm_inv[i], perm_inv[j]) = A(i, j), where perm[new] = old.
  SparseComplexMatrix permuted(std::span<const Index> perm) const;
  std::vector<Triplet> to_triplets() const;

 private:
  Index n_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<Complex> values_;
};

/// Σ_i coef_i A_i over matrices of equal size.
SparseComplexMatrix linear_combination(std::span<const SparseComplexMatrix* const> mats,
                                       std::span<const Complex> coefs);

enum class SolverMethod { automatic, band, dense, gmres, sparse_lu };

const char* to_string(SolverMethod m);
SolverMethod parse_solver_method(const std::string& name);

struct SolveReport {
  SolverMethod method = SolverMethod::automatic;  // the method actually used
  double relative_residual = 0.0;  // ||Ax - b|| / ||b|| from an explicit product
  int iterations = 0;              // GMRES iterations; refinement steps for direct methods
  Index bandwidth = 0;             // half bandwidth after reordering (band LU)
  Index factor_entries = 0;        // stored entries of the factors
  double seconds = 0.0;
};

struct SolveOptions {
  double residual_tolerance = 1e-8;
  double pivot_tolerance = 1e-14;  // relative to max |A_ij|
  int gmres_restart = 100;
  int gmres_max_restarts = 20;
  double gmres_tolerance = 1e-10;
  /// Automatic selection: dense up to this size.
  Index dense_limit = 400;
  /// Automatic selection: band LU while n * bandwidth^2 stays below this.
  double band_work_limit = 4e7;
};

struct SolveResult {
  ComplexVector x;
  SolveReport report;
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual(best_residual) {}
  double best_residual;
};

/// Solves A x = b. Every returned solution has had its residual recomputed;
/// a residual above `residual_tolerance` raises NonConvergence.
SolveResult solve(const SparseComplexMatrix& a, std::span<const Complex> b,
                  SolverMethod method = SolverMethod::automatic, const SolveOptions& options = {});

/// Reverse Cuthill-McKee ordering of the symmetrized pattern; perm[new] = old.
std::vector<Index> rcm_order(const SparseComplexMatrix& a);

/// max |i - j| over stored entries of P A P^T (identity ordering if perm is empty).
Index bandwidth(const SparseComplexMatrix& a, std::span<const Index> perm = {});

double norm2(std::span<const Complex> v);
double relative_residual(const SparseComplexMatrix& a, std::span<const Complex> x, std::span<const Complex> b);

/// Coordinate text dump: `row col re im`, 0-based.
void write_matrix(std::ostream& out, const SparseComplexMatrix& a);

}  // namespace helmdg
