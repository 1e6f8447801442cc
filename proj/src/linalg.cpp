#include "helmdg/linalg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <ostream>
#include <queue>

#include <umfpack.h>

namespace helmdg {

// ---------------------------------------------------------------------------
// Storage

SparseComplexMatrix::SparseComplexMatrix(const TripletBuilder& builder)
    : SparseComplexMatrix(from_triplets(builder.size(), builder.entries())) {}

SparseComplexMatrix SparseComplexMatrix::from_triplets(Index n, std::span<const Triplet> triplets) {
  SparseComplexMatrix m;
  m.n_ = n;
  // Counting sort by row keeps insertion order within a row.
  std::vector<Index> count(n + 1, 0);
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw InvalidParameter("triplet index out of range");
    ++count[t.row + 1];
  }
  for (Index i = 0; i < n; ++i) count[i + 1] += count[i];
  std::vector<Index> order(triplets.size());
  {
    std::vector<Index> next(count.begin(), count.end() - 1);
    for (std::size_t k = 0; k < triplets.size(); ++k) order[next[triplets[k].row]++] = static_cast<Index>(k);
  }

  m.row_ptr_.assign(n + 1, 0);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::vector<Index> row;
  for (Index i = 0; i < n; ++i) {
    row.assign(order.begin() + count[i], order.begin() + count[i + 1]);
    std::stable_sort(row.begin(), row.end(),
                     [&](Index a, Index b) { return triplets[a].col < triplets[b].col; });
    for (std::size_t p = 0; p < row.size();) {
      const Index col = triplets[row[p]].col;
      Complex sum = 0.0;
      while (p < row.size() && triplets[row[p]].col == col) sum += triplets[row[p++]].value;
      m.col_idx_.push_back(col);
      m.values_.push_back(sum);
    }
    m.row_ptr_[i + 1] = static_cast<Index>(m.col_idx_.size());
  }
  return m;
}

SparseComplexMatrix SparseComplexMatrix::identity(Index n) {
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, t);
}

Complex SparseComplexMatrix::entry(Index row, Index col) const {
  const auto b = col_idx_.begin() + row_ptr_[row], e = col_idx_.begin() + row_ptr_[row + 1];
  const auto it = std::lower_bound(b, e, col);
  if (it == e || *it != col) return 0.0;
  return values_[it - col_idx_.begin()];
}

double SparseComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Index> SparseComplexMatrix::zero_rows() const {
  std::vector<Index> rows;
  for (Index i = 0; i < n_; ++i) {
    bool zero = true;
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1] && zero; ++p) zero = values_[p] == Complex{};
    if (zero) rows.push_back(i);
  }
  return rows;
}

ComplexVector SparseComplexMatrix::multiply(std::span<const Complex> x, Execution exec) const {
  if (static_cast<Index>(x.size()) != n_) throw InvalidParameter("multiply: size mismatch");
  ComplexVector y(n_);
  auto row = [&](Index i) {
    Complex s = 0.0;
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * x[col_idx_[p]];
    y[i] = s;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n_; ++i) row(i);
  } else {
    for (Index i = 0; i < n_; ++i) row(i);
  }
  return y;
}

std::vector<Triplet> SparseComplexMatrix::to_triplets() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (Index i = 0; i < n_; ++i)
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) t.push_back({i, col_idx_[p], values_[p]});
  return t;
}

SparseComplexMatrix SparseComplexMatrix::transpose() const {
  auto t = to_triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return from_triplets(n_, t);
}

SparseComplexMatrix SparseComplexMatrix::permuted(std::span<const Index> perm) const {
  if (static_cast<Index>(perm.size()) != n_) throw InvalidParameter("permutation has wrong size");
  std::vector<Index> inv(n_);
  for (Index i = 0; i < n_; ++i) inv[perm[i]] = i;
  auto t = to_triplets();
  for (auto& e : t) {
    e.row = inv[e.row];
    e.col = inv[e.col];
  }
  return from_triplets(n_, t);
}

SparseComplexMatrix linear_combination(std::span<const SparseComplexMatrix* const> mats,
                                       std::span<const Complex> coefs) {
  if (mats.empty() || mats.size() != coefs.size()) throw InvalidParameter("linear_combination: bad arguments");
  const Index n = mats.front()->size();
  std::vector<Triplet> all;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k]->size() != n) throw InvalidParameter("linear_combination: size mismatch");
    for (auto t : mats[k]->to_triplets()) {
      t.value *= coefs[k];
      all.push_back(t);
    }
  }
  return SparseComplexMatrix::from_triplets(n, all);
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double relative_residual(const SparseComplexMatrix& a, std::span<const Complex> x, std::span<const Complex> b) {
  const auto ax = a.multiply(x);
  double r = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) r += std::norm(ax[i] - b[i]);
  const double nb = norm2(b);
  return nb > 0.0 ? std::sqrt(r) / nb : std::sqrt(r);
}

const char* to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::automatic: return "auto";
    case SolverMethod::band: return "band";
    case SolverMethod::dense: return "dense";
    case SolverMethod::gmres: return "gmres";
    case SolverMethod::sparse_lu: return "sparse";
  }
  return "?";
}

SolverMethod parse_solver_method(const std::string& name) {
  if (name == "auto") return SolverMethod::automatic;
  if (name == "band") return SolverMethod::band;
  if (name == "dense") return SolverMethod::dense;
  if (name == "gmres") return SolverMethod::gmres;
  if (name == "sparse") return SolverMethod::sparse_lu;
  throw InvalidParameter("unknown solver '" + name + "'");
}

// ---------------------------------------------------------------------------
// Ordering

namespace {

std::vector<std::vector<Index>> symmetric_adjacency(const SparseComplexMatrix& a) {
  const Index n = a.size();
  std::vector<std::vector<Index>> adj(n);
  for (Index i = 0; i < n; ++i)
    for (Index p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) {
      const Index j = a.col_idx()[p];
      if (i == j) continue;
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  for (auto& l : adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return adj;
}

// BFS level structure from `root` restricted to unvisited nodes; returns the levels.
std::vector<std::vector<Index>> level_structure(const std::vector<std::vector<Index>>& adj, Index root,
                                                const std::vector<char>& done) {
  std::vector<std::vector<Index>> levels{{root}};
  std::vector<char> seen(adj.size(), 0);
  seen[root] = 1;
  while (true) {
    std::vector<Index> next;
    for (Index v : levels.back())
      for (Index w : adj[v])
        if (!seen[w] && !done[w]) {
          seen[w] = 1;
          next.push_back(w);
        }
    if (next.empty()) break;
    levels.push_back(std::move(next));
  }
  return levels;
}

Index pseudo_peripheral(const std::vector<std::vector<Index>>& adj, Index start, const std::vector<char>& done) {
  Index root = start;
  auto levels = level_structure(adj, root, done);
  for (int iter = 0; iter < 10; ++iter) {
    // Minimum-degree node of the last level.
    Index cand = levels.back().front();
    for (Index v : levels.back())
      if (adj[v].size() < adj[cand].size() || (adj[v].size() == adj[cand].size() && v < cand)) cand = v;
    auto cand_levels = level_structure(adj, cand, done);
    if (cand_levels.size() <= levels.size()) break;
    root = cand;
    levels = std::move(cand_levels);
  }
  return root;
}

}  // namespace

std::vector<Index> rcm_order(const SparseComplexMatrix& a) {
  const Index n = a.size();
  const auto adj = symmetric_adjacency(a);
  std::vector<Index> order;
  order.reserve(n);
  std::vector<char> done(n, 0);
  for (Index start = 0; start < n; ++start) {
    if (done[start]) continue;
    const Index root = pseudo_peripheral(adj, start, done);
    std::queue<Index> q;
    q.push(root);
    done[root] = 1;
    std::vector<Index> nbrs;
    while (!q.empty()) {
      const Index v = q.front();
      q.pop();
      order.push_back(v);
      nbrs.clear();
      for (Index w : adj[v])
        if (!done[w]) nbrs.push_back(w);
      std::stable_sort(nbrs.begin(), nbrs.end(),
                       [&](Index x, Index y) { return adj[x].size() < adj[y].size(); });
      for (Index w : nbrs) {
        done[w] = 1;
        q.push(w);
      }
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

Index bandwidth(const SparseComplexMatrix& a, std::span<const Index> perm) {
  const Index n = a.size();
  std::vector<Index> inv(n);
  if (perm.empty()) {
    std::iota(inv.begin(), inv.end(), Index{0});
  } else {
    for (Index i = 0; i < n; ++i) inv[perm[i]] = i;
  }
  Index bw = 0;
  for (Index i = 0; i < n; ++i)
    for (Index p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p)
      bw = std::max(bw, std::abs(inv[i] - inv[a.col_idx()[p]]));
  return bw;
}

// ---------------------------------------------------------------------------
// Factorizations

namespace {

class Factorization {
 public:
  virtual ~Factorization() = default;
  virtual ComplexVector solve(std::span<const Complex> b) const = 0;
  virtual Index stored_entries() const = 0;
};

class DenseLU final : public Factorization {
 public:
  DenseLU(const SparseComplexMatrix& a, double pivot_tol) : n_(a.size()), lu_(n_ * n_), piv_(n_) {
    for (Index i = 0; i < n_; ++i)
      for (Index p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) lu_[i * n_ + a.col_idx()[p]] = a.values()[p];
    const double tol = pivot_tol * a.max_abs();
    for (Index j = 0; j < n_; ++j) {
      Index p = j;
      for (Index r = j + 1; r < n_; ++r)
        if (std::abs(lu_[r * n_ + j]) > std::abs(lu_[p * n_ + j])) p = r;
      if (!(std::abs(lu_[p * n_ + j]) > tol)) throw SingularSystem("dense LU: zero pivot");
      piv_[j] = p;
      if (p != j) std::swap_ranges(lu_.begin() + j * n_, lu_.begin() + (j + 1) * n_, lu_.begin() + p * n_);
      const Complex d = lu_[j * n_ + j];
      for (Index r = j + 1; r < n_; ++r) {
        Complex& l = lu_[r * n_ + j];
        if (l == Complex{}) continue;
        l /= d;
        const Complex* urow = &lu_[j * n_];
        Complex* row = &lu_[r * n_];
        for (Index c = j + 1; c < n_; ++c) row[c] -= l * urow[c];
      }
    }
  }

  ComplexVector solve(std::span<const Complex> b) const override {
    ComplexVector x(b.begin(), b.end());
    // Whole rows were swapped during factorization, so L belongs to PA: permute first.
    for (Index j = 0; j < n_; ++j) std::swap(x[j], x[piv_[j]]);
    for (Index j = 0; j < n_; ++j)
      for (Index r = j + 1; r < n_; ++r) x[r] -= lu_[r * n_ + j] * x[j];
    for (Index j = n_ - 1; j >= 0; --j) {
      Complex s = x[j];
      for (Index c = j + 1; c < n_; ++c) s -= lu_[j * n_ + c] * x[c];
      x[j] = s / lu_[j * n_ + j];
    }
    return x;
  }

  Index stored_entries() const override { return n_ * n_; }

 private:
  Index n_;
  std::vector<Complex> lu_;
  std::vector<Index> piv_;
};

// LU with partial pivoting in banded column-major storage: A(r, c) lives at
// ab[(kv + r - c) + c * ld], kv = kl + ku, ld = 2 kl + ku + 1. Row swaps grow
// the upper bandwidth to at most kl + ku, which the storage already holds.
class BandLU final : public Factorization {
 public:
  BandLU(const SparseComplexMatrix& a, std::vector<Index> perm, double pivot_tol)
      : n_(a.size()), perm_(std::move(perm)) {
    const auto b = a.permuted(perm_);
    kl_ = ku_ = 0;
    for (Index i = 0; i < n_; ++i)
      for (Index p = b.row_ptr()[i]; p < b.row_ptr()[i + 1]; ++p) {
        const Index j = b.col_idx()[p];
        kl_ = std::max(kl_, i - j);
        ku_ = std::max(ku_, j - i);
      }
    kv_ = kl_ + ku_;
    ld_ = 2 * kl_ + ku_ + 1;
    ab_.assign(static_cast<std::size_t>(ld_) * n_, Complex{});
    for (Index i = 0; i < n_; ++i)
      for (Index p = b.row_ptr()[i]; p < b.row_ptr()[i + 1]; ++p) at(i, b.col_idx()[p]) = b.values()[p];
    piv_.resize(n_);

    const double tol = pivot_tol * a.max_abs();
    Index ju = 0;
    for (Index j = 0; j < n_; ++j) {
      const Index km = std::min(kl_, n_ - 1 - j);
      Index p = j;
      for (Index r = j + 1; r <= j + km; ++r)
        if (std::abs(at(r, j)) > std::abs(at(p, j))) p = r;
      if (!(std::abs(at(p, j)) > tol)) throw SingularSystem("band LU: zero pivot");
      piv_[j] = p;
      ju = std::max(ju, std::min(j + ku_ + (p - j), n_ - 1));
      if (p != j)
        for (Index c = j; c <= ju; ++c) std::swap(at(p, c), at(j, c));
      const Complex d = at(j, j);
      Complex* colj = &at(j, j);
      for (Index r = 1; r <= km; ++r) colj[r] /= d;
      for (Index c = j + 1; c <= ju; ++c) {
        const Complex t = at(j, c);
        if (t == Complex{}) continue;
        Complex* colc = &at(j, c);
        for (Index r = 1; r <= km; ++r) colc[r] -= colj[r] * t;
      }
    }
  }

  ComplexVector solve(std::span<const Complex> rhs) const override {
    ComplexVector x(n_);
    for (Index i = 0; i < n_; ++i) x[i] = rhs[perm_[i]];
    for (Index j = 0; j < n_; ++j) {
      std::swap(x[j], x[piv_[j]]);
      const Index km = std::min(kl_, n_ - 1 - j);
      const Complex* colj = &at(j, j);
      for (Index r = 1; r <= km; ++r) x[j + r] -= colj[r] * x[j];
    }
    for (Index j = n_ - 1; j >= 0; --j) {
      x[j] /= at(j, j);
      const Index top = std::max<Index>(0, j - kv_);
      for (Index r = top; r < j; ++r) x[r] -= at(r, j) * x[j];
    }
    ComplexVector out(n_);
    for (Index i = 0; i < n_; ++i) out[perm_[i]] = x[i];
    return out;
  }

  Index stored_entries() const override { return static_cast<Index>(ab_.size()); }
  Index half_bandwidth() const { return std::max(kl_, ku_); }

 private:
  Complex& at(Index r, Index c) { return ab_[(kv_ + r - c) + c * ld_]; }
  const Complex& at(Index r, Index c) const { return ab_[(kv_ + r - c) + c * ld_]; }

  Index n_, kl_ = 0, ku_ = 0, kv_ = 0, ld_ = 1;
  std::vector<Index> perm_;
  std::vector<Complex> ab_;
  std::vector<Index> piv_;
};

// UMFPACK sees our CSR arrays as the CSC form of A^T and solves with the
// non-conjugate transpose.
class SparseLU final : public Factorization {
 public:
  explicit SparseLU(const SparseComplexMatrix& a) : a_(a), ap_(a.row_ptr().begin(), a.row_ptr().end()),
                                                    ai_(a.col_idx().begin(), a.col_idx().end()) {
    umfpack_zl_defaults(control_);
    const auto n = static_cast<SuiteSparse_long>(a.size());
    const double* ax = reinterpret_cast<const double*>(a.values().data());
    void* symbolic = nullptr;
    double info[UMFPACK_INFO];
    int status = umfpack_zl_symbolic(n, n, ap_.data(), ai_.data(), ax, nullptr, &symbolic, control_, info);
    if (status != UMFPACK_OK) throw SingularSystem("sparse LU: symbolic analysis failed");
    status = umfpack_zl_numeric(ap_.data(), ai_.data(), ax, nullptr, symbolic, &numeric_, control_, info);
    umfpack_zl_free_symbolic(&symbolic);
    if (status == UMFPACK_WARNING_singular_matrix) {
      umfpack_zl_free_numeric(&numeric_);
      throw SingularSystem("sparse LU: singular matrix");
    }
    if (status != UMFPACK_OK) throw SingularSystem("sparse LU: numeric factorization failed");
    entries_ = static_cast<Index>(info[UMFPACK_LNZ] + info[UMFPACK_UNZ]);
  }
  ~SparseLU() override { umfpack_zl_free_numeric(&numeric_); }
  SparseLU(const SparseLU&) = delete;
  SparseLU& operator=(const SparseLU&) = delete;

  ComplexVector solve(std::span<const Complex> b) const override {
    ComplexVector x(b.size());
    double info[UMFPACK_INFO];
    const int status = umfpack_zl_solve(UMFPACK_Aat, ap_.data(), ai_.data(),
                                        reinterpret_cast<const double*>(a_.values().data()), nullptr,
                                        reinterpret_cast<double*>(x.data()), nullptr,
                                        reinterpret_cast<const double*>(b.data()), nullptr, numeric_,
                                        control_, info);
    if (status != UMFPACK_OK) throw SingularSystem("sparse LU: solve failed");
    return x;
  }

  Index stored_entries() const override { return entries_; }

 private:
  const SparseComplexMatrix& a_;
  std::vector<SuiteSparse_long> ap_, ai_;
  double control_[UMFPACK_CONTROL];
  void* numeric_ = nullptr;
  Index entries_ = 0;
};

// Zero-fill incomplete LU on the CSR pattern (unit lower L, U with diagonal).
class Ilu0 {
 public:
  explicit Ilu0(const SparseComplexMatrix& a)
      : n_(a.size()), rp_(a.row_ptr()), ci_(a.col_idx()), v_(a.values()), diag_(n_, -1) {
    for (Index i = 0; i < n_; ++i)
      for (Index p = rp_[i]; p < rp_[i + 1]; ++p)
        if (ci_[p] == i) diag_[i] = p;
    std::vector<Index> pos(n_, -1);
    for (Index i = 0; i < n_; ++i) {
      if (diag_[i] < 0) throw SingularSystem("ILU(0): missing diagonal entry");
      for (Index p = rp_[i]; p < rp_[i + 1]; ++p) pos[ci_[p]] = p;
      for (Index p = rp_[i]; p < rp_[i + 1] && ci_[p] < i; ++p) {
        const Index k = ci_[p];
        if (v_[diag_[k]] == Complex{}) throw SingularSystem("ILU(0): zero pivot");
        v_[p] /= v_[diag_[k]];
        for (Index q = diag_[k] + 1; q < rp_[k + 1]; ++q)
          if (pos[ci_[q]] >= 0) v_[pos[ci_[q]]] -= v_[p] * v_[q];
      }
      for (Index p = rp_[i]; p < rp_[i + 1]; ++p) pos[ci_[p]] = -1;
      if (v_[diag_[i]] == Complex{}) throw SingularSystem("ILU(0): zero pivot");
    }
  }

  void apply(std::span<const Complex> r, std::span<Complex> z) const {
    for (Index i = 0; i < n_; ++i) {
      Complex s = r[i];
      for (Index p = rp_[i]; p < diag_[i]; ++p) s -= v_[p] * z[ci_[p]];
      z[i] = s;
    }
    for (Index i = n_ - 1; i >= 0; --i) {
      Complex s = z[i];
      for (Index p = diag_[i] + 1; p < rp_[i + 1]; ++p) s -= v_[p] * z[ci_[p]];
      z[i] = s / v_[diag_[i]];
    }
  }

 private:
  Index n_;
  const std::vector<Index>& rp_;
  const std::vector<Index>& ci_;
  std::vector<Complex> v_;
  std::vector<Index> diag_;
};

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Right-preconditioned restarted GMRES with modified Gram-Schmidt.
ComplexVector gmres_ilu(const SparseComplexMatrix& a, std::span<const Complex> b, const SolveOptions& opt,
                        int& iterations) {
  const Index n = a.size();
  const Ilu0 ilu(a);
  const int m = std::max(1, opt.gmres_restart);
  const double bnorm = norm2(b);
  ComplexVector x(n, Complex{});
  iterations = 0;
  if (bnorm == 0.0) return x;

  double best = 1.0;
  ComplexVector best_x = x;
  std::vector<ComplexVector> v(m + 1, ComplexVector(n));
  std::vector<Complex> h((m + 1) * m), cs(m), sn(m), g(m + 1);
  ComplexVector z(n), w(n);
  for (int cycle = 0; cycle < opt.gmres_max_restarts; ++cycle) {
    auto ax = a.multiply(x);
    for (Index i = 0; i < n; ++i) v[0][i] = b[i] - ax[i];
    const double beta = norm2(v[0]);
    if (beta / bnorm <= opt.gmres_tolerance) return x;
    for (auto& e : v[0]) e /= beta;
    std::fill(g.begin(), g.end(), Complex{});
    g[0] = beta;
    int j = 0;
    for (; j < m; ++j) {
      ++iterations;
      ilu.apply(v[j], z);
      w = a.multiply(z);
      for (int i = 0; i <= j; ++i) {
        const Complex hij = dotc(v[i], w);
        h[i * m + j] = hij;
        for (Index r = 0; r < n; ++r) w[r] -= hij * v[i][r];
      }
      const double hn = norm2(w);
      h[(j + 1) * m + j] = hn;
      if (hn > 0.0)
        for (Index r = 0; r < n; ++r) v[j + 1][r] = w[r] / hn;
      for (int i = 0; i < j; ++i) {
        const Complex t = std::conj(cs[i]) * h[i * m + j] + std::conj(sn[i]) * h[(i + 1) * m + j];
        h[(i + 1) * m + j] = -sn[i] * h[i * m + j] + cs[i] * h[(i + 1) * m + j];
        h[i * m + j] = t;
      }
      const Complex hjj = h[j * m + j];
      const double denom = std::sqrt(std::norm(hjj) + hn * hn);
      cs[j] = denom > 0.0 ? hjj / denom : Complex{1.0};
      sn[j] = denom > 0.0 ? Complex{hn / denom} : Complex{};
      h[j * m + j] = std::conj(cs[j]) * hjj + std::conj(sn[j]) * hn;
      h[(j + 1) * m + j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = std::conj(cs[j]) * g[j];
      if (std::abs(g[j + 1]) / bnorm <= opt.gmres_tolerance || hn == 0.0) {
        ++j;
        break;
      }
    }
    // Back substitution for the Krylov coefficients, then x += M^{-1} V y.
    std::vector<Complex> y(j);
    for (int i = j - 1; i >= 0; --i) {
      Complex s = g[i];
      for (int c = i + 1; c < j; ++c) s -= h[i * m + c] * y[c];
      y[i] = s / h[i * m + i];
    }
    ComplexVector update(n, Complex{});
    for (int i = 0; i < j; ++i)
      for (Index r = 0; r < n; ++r) update[r] += y[i] * v[i][r];
    ilu.apply(update, z);
    for (Index r = 0; r < n; ++r) x[r] += z[r];
    const double rel = relative_residual(a, x, b);
    if (rel < best) {
      best = rel;
      best_x = x;
    }
    if (rel <= opt.gmres_tolerance) return x;
  }
  if (best <= opt.residual_tolerance) return best_x;
  throw NonConvergence("GMRES did not converge", best);
}

}  // namespace

SolveResult solve(const SparseComplexMatrix& a, std::span<const Complex> b, SolverMethod method,
                  const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Index n = a.size();
  if (static_cast<Index>(b.size()) != n) throw InvalidParameter("solve: rhs size mismatch");
  if (!a.zero_rows().empty()) throw SingularSystem("matrix has an all-zero row");

  SolveResult result;
  std::vector<Index> perm;
  if (method == SolverMethod::automatic) {
    if (n <= options.dense_limit) {
      method = SolverMethod::dense;
    } else {
      perm = rcm_order(a);
      const auto bw = static_cast<double>(bandwidth(a, perm));
      method = static_cast<double>(n) * bw * bw <= options.band_work_limit ? SolverMethod::band
                                                                           : SolverMethod::sparse_lu;
    }
  }
  result.report.method = method;

  if (method == SolverMethod::gmres) {
    result.x = gmres_ilu(a, b, options, result.report.iterations);
  } else {
    std::unique_ptr<Factorization> f;
    switch (method) {
      case SolverMethod::dense: f = std::make_unique<DenseLU>(a, options.pivot_tolerance); break;
      case SolverMethod::band: {
        if (perm.empty()) perm = rcm_order(a);
        auto band = std::make_unique<BandLU>(a, std::move(perm), options.pivot_tolerance);
        result.report.bandwidth = band->half_bandwidth();
        f = std::move(band);
        break;
      }
      case SolverMethod::sparse_lu: f = std::make_unique<SparseLU>(a); break;
      default: throw InvalidParameter("unsupported solver");
    }
    result.report.factor_entries = f->stored_entries();
    result.x = f->solve(b);
    // A few steps of iterative refinement with the same factors.
    for (int step = 0; step < 3; ++step) {
      if (relative_residual(a, result.x, b) <= 1e-13) break;
      auto ax = a.multiply(result.x);
      ComplexVector r(n);
      for (Index i = 0; i < n; ++i) r[i] = b[i] - ax[i];
      const auto d = f->solve(r);
      for (Index i = 0; i < n; ++i) result.x[i] += d[i];
      ++result.report.iterations;
    }
  }

  result.report.relative_residual = relative_residual(a, result.x, b);
  result.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!(result.report.relative_residual <= options.residual_tolerance))
    throw NonConvergence(std::string(to_string(method)) + " solve residual above tolerance",
                         result.report.relative_residual);
  return result;
}

void write_matrix(std::ostream& out, const SparseComplexMatrix& a) {
  out.precision(17);
  for (Index i = 0; i < a.size(); ++i)
    for (Index p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p)
      out << i << ' ' << a.col_idx()[p] << ' ' << a.values()[p].real() << ' ' << a.values()[p].imag() << '\n';
}

}  // namespace helmdg
