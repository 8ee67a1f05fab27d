#include "galmod/dvr_lattice.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace galmod {

VMatrix::VMatrix(int p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols),
      e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Series::zero(p)) {}

VMatrix VMatrix::identity(int p, int n) {
  VMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Series::constant(p, 1);
  return m;
}

std::vector<Series> VMatrix::column(int c) const {
  std::vector<Series> out;
  out.reserve(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

void VMatrix::set_column(int c, const std::vector<Series>& v) {
  for (int r = 0; r < rows_; ++r) at(r, c) = v[static_cast<std::size_t>(r)];
}

void VMatrix::swap_rows(int r1, int r2) {
  if (r1 == r2) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
}

void VMatrix::swap_cols(int c1, int c2) {
  if (c1 == c2) return;
  for (int r = 0; r < rows_; ++r) std::swap(at(r, c1), at(r, c2));
}

VMatrix VMatrix::transpose() const {
  VMatrix t(p_, cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

std::vector<Series> VMatrix::apply(const std::vector<Series>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("apply: size mismatch");
  std::vector<Series> y(static_cast<std::size_t>(rows_), Series::zero(p_));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (at(r, c).is_exact_zero() || x[c].is_exact_zero()) continue;
      y[r] += at(r, c) * x[c];
    }
  }
  return y;
}

VMatrix operator*(const VMatrix& a, const VMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: size mismatch");
  VMatrix m(a.p_, a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (int k = 0; k < a.cols_; ++k) {
      const Series& ark = a.at(r, k);
      if (ark.is_exact_zero()) continue;
      for (int c = 0; c < b.cols_; ++c) {
        if (b.at(k, c).is_exact_zero()) continue;
        m.at(r, c) += ark * b.at(k, c);
      }
    }
  }
  return m;
}

int VMatrix::precision_floor() const {
  int f = Series::kExact;
  for (const auto& s : e_) f = std::min(f, s.prec());
  return f;
}

namespace kernels {

namespace {

int eliminate_row(VMatrix& a, int i, int piv, int col, const Series& pivot_inv, Series* q_out) {
  const Series& aic = a.at(i, col);
  if (aic.is_exact_zero()) {
    if (q_out) *q_out = Series::zero(a.p());
    return Series::kExact;
  }
  const Series q = aic * pivot_inv;
  const Series rem = aic - q * a.at(piv, col);
  if (rem.is_certified_nonzero()) {
    throw std::logic_error("elimination remainder is not zero to precision");
  }
  const int bound = rem.prec();
  a.at(i, col) = Series::zero(a.p());
  for (int c = col + 1; c < a.cols(); ++c) {
    const Series& pc = a.at(piv, c);
    if (pc.is_exact_zero()) continue;
    a.at(i, c) -= q * pc;
  }
  if (q_out) *q_out = q;
  return bound;
}

}  // namespace

int eliminate_serial(VMatrix& a, int piv, int col, const Series& pivot_inv, int row_begin,
                     std::vector<Series>* qs) {
  if (qs) qs->assign(static_cast<std::size_t>(a.rows()), Series::zero(a.p()));
  int floor = Series::kExact;
  for (int i = row_begin; i < a.rows(); ++i) {
    if (i == piv) continue;
    floor = std::min(floor, eliminate_row(a, i, piv, col, pivot_inv, qs ? &(*qs)[i] : nullptr));
  }
  return floor;
}

int eliminate_parallel(VMatrix& a, int piv, int col, const Series& pivot_inv, int row_begin,
                       std::vector<Series>* qs) {
  if (qs) qs->assign(static_cast<std::size_t>(a.rows()), Series::zero(a.p()));
  int floor = Series::kExact;
  const int rows = a.rows();
#pragma omp parallel for schedule(dynamic, 4) reduction(min : floor)
  for (int i = row_begin; i < rows; ++i) {
    if (i == piv) continue;
    const int b = eliminate_row(a, i, piv, col, pivot_inv, qs ? &(*qs)[i] : nullptr);
    floor = std::min(floor, b);
  }
  return floor;
}

}  // namespace kernels

namespace {

#ifdef _OPENMP
std::atomic<bool> g_parallel{true};
#else
std::atomic<bool> g_parallel{false};
#endif

int run_elimination(VMatrix& a, int piv, int col, const Series& pivot_inv, int row_begin,
                    std::vector<Series>* qs = nullptr) {
  if (g_parallel.load(std::memory_order_relaxed)) {
    return kernels::eliminate_parallel(a, piv, col, pivot_inv, row_begin, qs);
  }
  return kernels::eliminate_serial(a, piv, col, pivot_inv, row_begin, qs);
}

struct Pivot {
  int row = -1;
  int col = -1;
  int val = Series::kInfinite;
};

/// Minimal certified valuation in the block rows [r0, r1) x cols [c0, c1).
/// Throws when an uncertified entry could be smaller.
Pivot find_pivot(const VMatrix& a, int r0, int r1, int c0, int c1, bool* all_exact_zero) {
  Pivot best;
  int min_uncert = Series::kInfinite;
  bool zero = true;
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) {
      const Series& s = a.at(r, c);
      if (s.is_exact_zero()) continue;
      zero = false;
      if (!s.is_certified_nonzero()) {
        min_uncert = std::min(min_uncert, s.prec());
        continue;
      }
      if (s.val() < best.val) best = {r, c, s.val()};
    }
  }
  if (all_exact_zero) *all_exact_zero = zero;
  if (zero) return best;
  if (best.row < 0 || min_uncert < best.val) {
    throw PrecisionExhausted("pivot valuation cannot be certified below t^" +
                             std::to_string(min_uncert));
  }
  return best;
}

std::int64_t unit_part_prec(int work_prec, int v) { return static_cast<std::int64_t>(work_prec) - v; }

}  // namespace

void set_parallel_elimination(bool on) { g_parallel.store(on); }
bool parallel_elimination() { return g_parallel.load(); }

Series inverse_rel(const Series& s, int rel) {
  const int v = s.val();
  return s.inverse(static_cast<int>(unit_part_prec(rel, v)));
}

int det_valuation(const VMatrix& m, int work_prec) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  VMatrix a = m;
  const int n = a.rows();
  long long total = 0;
  for (int k = 0; k < n; ++k) {
    bool zero = false;
    const Pivot pv = find_pivot(a, k, n, k, n, &zero);
    if (zero) return Series::kInfinite;
    a.swap_rows(k, pv.row);
    a.swap_cols(k, pv.col);
    total += pv.val;
    const Series pinv = inverse_rel(a.at(k, k), work_prec);
    const int bound = run_elimination(a, k, k, pinv, k + 1);
    if (bound < pv.val) throw PrecisionExhausted("determinant elimination lost certification");
  }
  return static_cast<int>(total);
}

Series determinant(const VMatrix& m, int work_prec) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  VMatrix a = m;
  const int n = a.rows();
  Series det = Series::constant(m.p(), 1);
  for (int k = 0; k < n; ++k) {
    bool zero = false;
    const Pivot pv = find_pivot(a, k, n, k, n, &zero);
    if (zero) return Series::zero(m.p());
    if (pv.row != k) det = -det;
    if (pv.col != k) det = -det;
    a.swap_rows(k, pv.row);
    a.swap_cols(k, pv.col);
    det = det * a.at(k, k);
    const Series pinv = inverse_rel(a.at(k, k), work_prec);
    run_elimination(a, k, k, pinv, k + 1);
  }
  return det;
}

namespace {

/// Gauss-Jordan on [A | B] with partial valuation pivoting; returns A^-1 B.
VMatrix gauss_jordan(const VMatrix& m, const VMatrix& rhs, int work_prec) {
  const int n = m.rows();
  if (m.cols() != n || rhs.rows() != n) throw std::invalid_argument("gauss_jordan: shape");
  const int w = rhs.cols();
  VMatrix a(m.p(), n, n + w);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a.at(r, c) = m.at(r, c);
    for (int c = 0; c < w; ++c) a.at(r, n + c) = rhs.at(r, c);
  }
  for (int k = 0; k < n; ++k) {
    bool zero = false;
    const Pivot pv = find_pivot(a, k, n, k, k + 1, &zero);
    if (zero) throw std::domain_error("singular matrix");
    a.swap_rows(k, pv.row);
    const Series pinv = inverse_rel(a.at(k, k), work_prec);
    run_elimination(a, k, k, pinv, 0);
    for (int c = k; c < n + w; ++c) {
      if (!a.at(k, c).is_exact_zero()) a.at(k, c) = a.at(k, c) * pinv;
    }
  }
  VMatrix out(m.p(), n, w);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < w; ++c) out.at(r, c) = a.at(r, n + c);
  }
  return out;
}

}  // namespace

VMatrix inverse(const VMatrix& m, int work_prec) {
  return gauss_jordan(m, VMatrix::identity(m.p(), m.rows()), work_prec);
}

std::vector<Series> solve(const VMatrix& m, const std::vector<Series>& b, int work_prec) {
  VMatrix rhs(m.p(), m.rows(), 1);
  rhs.set_column(0, b);
  return gauss_jordan(m, rhs, work_prec).column(0);
}

SmithForm smith(const VMatrix& m, int work_prec, bool track_u) {
  const int rows = m.rows();
  const int cols = m.cols();
  const int p = m.p();
  VMatrix a = m;
  SmithForm out;
  out.has_u = track_u;
  VMatrix C = VMatrix::identity(p, cols);     // column operations, = V^-1
  VMatrix Cinv = VMatrix::identity(p, cols);  // = V
  VMatrix U = track_u ? VMatrix::identity(p, rows) : VMatrix();
  const int steps = std::min(rows, cols);
  int rank = 0;
  for (int k = 0; k < steps; ++k) {
    bool zero = false;
    const Pivot pv = find_pivot(a, k, rows, k, cols, &zero);
    if (zero) break;
    a.swap_rows(k, pv.row);
    if (track_u) U.swap_cols(k, pv.row);
    a.swap_cols(k, pv.col);
    C.swap_cols(k, pv.col);
    Cinv.swap_rows(k, pv.col);

    const Series pinv = inverse_rel(a.at(k, k), work_prec);
    std::vector<Series> qs;
    const int bound = run_elimination(a, k, k, pinv, k + 1, track_u ? &qs : nullptr);
    if (bound < pv.val) throw PrecisionExhausted("Smith elimination lost certification");
    if (track_u) {
      // U <- U * E^-1 with E = I - q e_i e_k^T: column k += q * column i.
      for (int i = k + 1; i < rows; ++i) {
        if (qs[i].is_exact_zero()) continue;
        for (int r = 0; r < rows; ++r) {
          if (!U.at(r, i).is_exact_zero()) U.at(r, k) += qs[i] * U.at(r, i);
        }
      }
    }
    // Column elimination touches only row k since column k is now clear.
    for (int j = k + 1; j < cols; ++j) {
      if (a.at(k, j).is_exact_zero()) continue;
      const Series q = a.at(k, j) * pinv;
      a.at(k, j) = Series::zero(p);
      for (int r = 0; r < cols; ++r) {
        if (!C.at(r, k).is_exact_zero()) C.at(r, j) -= q * C.at(r, k);
      }
      for (int c = 0; c < cols; ++c) {
        if (!Cinv.at(j, c).is_exact_zero()) Cinv.at(k, c) += q * Cinv.at(j, c);
      }
    }
    // Normalize the pivot to t^v: row k /= unit, so U column k *= unit.
    const Series unit = a.at(k, k).shifted(-pv.val);
    a.at(k, k) = Series::monomial(p, 1, pv.val);
    if (track_u) {
      for (int r = 0; r < rows; ++r) {
        if (!U.at(r, k).is_exact_zero()) U.at(r, k) = U.at(r, k) * unit;
      }
    }
    out.divisors.push_back(pv.val);
    ++rank;
  }
  out.rank = rank;
  out.S = VMatrix(p, rows, cols);
  for (int k = 0; k < rank; ++k) out.S.at(k, k) = a.at(k, k);
  out.V = std::move(Cinv);
  out.Vinv = std::move(C);
  if (track_u) out.U = std::move(U);
  return out;
}

Lattice lattice_from_basis(const VMatrix& cols, int work_prec) {
  const SmithForm sf = smith(cols, work_prec);
  if (sf.rank != cols.cols() || cols.rows() != cols.cols()) {
    throw std::invalid_argument("lattice basis must be square of full rank");
  }
  Lattice l;
  l.basis = cols;
  l.divisors = sf.divisors;
  std::sort(l.divisors.begin(), l.divisors.end());
  return l;
}

Lattice solve_congruence_lattice(const VMatrix& t, const std::vector<int>& e, int work_prec) {
  if (static_cast<int>(e.size()) != t.rows()) {
    throw std::invalid_argument("constraint exponent vector has the wrong length");
  }
  VMatrix scaled = t;
  for (int r = 0; r < t.rows(); ++r) {
    for (int c = 0; c < t.cols(); ++c) {
      if (!scaled.at(r, c).is_exact_zero()) scaled.at(r, c) = scaled.at(r, c).shifted(-e[r]);
    }
  }
  const SmithForm sf = smith(scaled, work_prec);
  if (sf.rank != t.cols()) throw std::domain_error("constraint map is not of full column rank");
  Lattice l;
  l.basis = sf.Vinv;
  for (int c = 0; c < t.cols(); ++c) {
    const int d = sf.divisors[c];
    for (int r = 0; r < t.cols(); ++r) {
      if (!l.basis.at(r, c).is_exact_zero()) l.basis.at(r, c) = l.basis.at(r, c).shifted(-d);
    }
    l.divisors.push_back(-d);
  }
  std::sort(l.divisors.begin(), l.divisors.end());
  return l;
}

Lattice hermite_form(const Lattice& l, int work_prec) {
  VMatrix b = l.basis;
  const int n = b.rows();
  const int p = b.p();
  if (b.cols() != n) throw std::invalid_argument("hermite_form needs a square basis");
  std::vector<int> piv(static_cast<std::size_t>(n));
  auto axpy = [&](int dst, const Series& q, int src, int from) {
    for (int r = from; r < n; ++r) {
      if (!b.at(r, src).is_exact_zero()) b.at(r, dst) -= q * b.at(r, src);
    }
  };
  for (int r = 0; r < n; ++r) {
    int best = -1;
    int best_val = Series::kInfinite;
    int bound = Series::kInfinite;
    for (int c = r; c < n; ++c) {
      const Series& x = b.at(r, c);
      if (x.is_exact_zero()) continue;
      if (!x.is_certified_nonzero()) {
        bound = std::min(bound, x.prec());
        continue;
      }
      if (x.val() < best_val) {
        best_val = x.val();
        best = c;
      }
    }
    if (best < 0) throw std::domain_error("hermite_form: singular basis");
    if (bound <= best_val) throw PrecisionExhausted("hermite pivot not certified");
    b.swap_cols(r, best);
    const Series scale = inverse_rel(b.at(r, r), work_prec).shifted(best_val);
    for (int k = r; k < n; ++k) {
      if (!b.at(k, r).is_exact_zero()) b.at(k, r) = b.at(k, r) * scale;
    }
    b.at(r, r) = Series::monomial(p, 1, best_val);
    piv[r] = best_val;
    for (int c = r + 1; c < n; ++c) {
      const Series& x = b.at(r, c);
      if (x.is_exact_zero()) continue;
      const Series q = x.shifted(-best_val);
      axpy(c, q, r, r + 1);
      b.at(r, c) = Series::zero(p);
    }
  }
  for (int c = 0; c < n; ++c) {
    for (int r = c + 1; r < n; ++r) {
      const Series x = b.at(r, c);
      if (x.is_exact_zero()) continue;
      if (x.prec() < piv[r]) throw PrecisionExhausted("hermite reduction not certified");
      const Series low = x.truncated(piv[r]).as_exact();
      const Series q = (x - low).shifted(-piv[r]);
      if (!q.is_exact_zero()) axpy(c, q, r, r + 1);
      b.at(r, c) = low;
    }
  }
  Lattice out;
  out.basis = std::move(b);
  out.divisors = l.divisors;
  return out;
}

bool lattice_contains(const Lattice& l, const std::vector<Series>& c, int work_prec) {
  const std::vector<Series> y = solve(l.basis, c, work_prec);
  for (const auto& yi : y) {
    if (yi.is_exact_zero()) continue;
    if (yi.is_certified_nonzero()) {
      if (yi.val() < 0) return false;
      continue;
    }
    if (yi.prec() < 0) throw PrecisionExhausted("lattice membership not certified");
  }
  return true;
}

bool lattice_subset(const Lattice& a, const Lattice& b, int work_prec) {
  for (int c = 0; c < a.basis.cols(); ++c) {
    if (!lattice_contains(b, a.basis.column(c), work_prec)) return false;
  }
  return true;
}

bool lattices_equal(const Lattice& a, const Lattice& b, int work_prec) {
  return a.divisors == b.divisors && lattice_subset(a, b, work_prec) &&
         lattice_subset(b, a, work_prec);
}

}  // namespace galmod
