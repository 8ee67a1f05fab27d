#pragma once

#include <vector>

#include "galmod/series.hpp"

namespace galmod {

/// Dense matrix of series over F_p((t)), row-major.
class VMatrix {
 public:
  VMatrix() = default;
  /// rows x cols filled with exact zeros.
  VMatrix(int p, int rows, int cols);

  static VMatrix identity(int p, int n);

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Series& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Series& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<Series> column(int c) const;
  void set_column(int c, const std::vector<Series>& v);
  void swap_rows(int r1, int r2);
  void swap_cols(int c1, int c2);
  VMatrix transpose() const;
  std::vector<Series> apply(const std::vector<Series>& x) const;
  friend VMatrix operator*(const VMatrix& a, const VMatrix& b);

  /// Smallest coefficient precision over all entries (kExact when exact).
  int precision_floor() const;

 private:
  int p_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Series> e_;
};

/// Row update kernels shared by every elimination below. The parallel kernel
/// splits the independent target rows across OpenMP threads; the serial one
/// is the reference implementation.
namespace kernels {
/// For every row i in [row_begin, rows) other than piv with a nonzero entry
/// in column col: q_i = a(i,col) * pivot_inv and row_i -= q_i * row_piv on
/// columns >= col. The eliminated entry becomes the exact zero; the returned
/// value is the smallest certified bound on the discarded remainders. When
/// qs is given it receives q_i (exact zero for untouched rows).
int eliminate_serial(VMatrix& a, int piv, int col, const Series& pivot_inv, int row_begin,
                     std::vector<Series>* qs = nullptr);
int eliminate_parallel(VMatrix& a, int piv, int col, const Series& pivot_inv, int row_begin,
                       std::vector<Series>* qs = nullptr);
}  // namespace kernels

/// Selects the elimination kernel used by the routines below (default: the
/// parallel kernel when built with OpenMP).
void set_parallel_elimination(bool on);
bool parallel_elimination();

/// Inverse of a series carrying relative precision rel (t-adic digits).
Series inverse_rel(const Series& s, int rel);

/// Valuation of the determinant of a square matrix (kInfinite if the matrix
/// is exact and singular). Valuation pivoting.
int det_valuation(const VMatrix& m, int work_prec);
Series determinant(const VMatrix& m, int work_prec);

/// Inverse of a square matrix; throws std::domain_error when singular.
VMatrix inverse(const VMatrix& m, int work_prec);

/// Solves m * x = b for square invertible m.
std::vector<Series> solve(const VMatrix& m, const std::vector<Series>& b, int work_prec);

struct SmithForm {
  VMatrix U;  ///< rows x rows, filled only when requested
  VMatrix S;  ///< rows x cols, diagonal t^d_i
  VMatrix V;  ///< cols x cols
  VMatrix Vinv;
  std::vector<int> divisors;  ///< d_i for the first rank diagonal entries
  int rank = 0;
  bool has_u = false;
};

/// M = U * S * V with U, V invertible over F_p[[t]]. Pivot rule: minimal
/// certified valuation, ties broken by lowest (row, col). Throws
/// PrecisionExhausted when a pivot cannot be certified.
SmithForm smith(const VMatrix& m, int work_prec, bool track_u = false);

/// Free F_p[[t]]-submodule of k^n given by basis columns.
struct Lattice {
  VMatrix basis;
  /// Elementary divisors relative to F_p[[t]]^n, ascending.
  std::vector<int> divisors;
  int rank() const { return basis.cols(); }
};

/// Lattice spanned by the columns of a square invertible matrix.
Lattice lattice_from_basis(const VMatrix& cols, int work_prec);

/// { c : v(row_s(T c)) >= e_s for all s } for T of full column rank.
Lattice solve_congruence_lattice(const VMatrix& t, const std::vector<int>& e, int work_prec);

/// Canonical basis of l: lower triangular, pivot of column r equal to t^a_r,
/// entries below a pivot row reduced to exponents < a_r. Entries are exact.
Lattice hermite_form(const Lattice& l, int work_prec);

bool lattice_contains(const Lattice& l, const std::vector<Series>& c, int work_prec);
/// a is contained in b.
bool lattice_subset(const Lattice& a, const Lattice& b, int work_prec);
/// Equal divisors and mutual containment.
bool lattices_equal(const Lattice& a, const Lattice& b, int work_prec);

}  // namespace galmod
