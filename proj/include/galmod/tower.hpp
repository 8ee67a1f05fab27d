#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galmod/dvr_lattice.hpp"
#include "galmod/series.hpp"

namespace galmod {

inline constexpr int kDefaultPrec = 64;

/// sigma1^a sigma2^b.
struct GroupElem {
  int a = 0;
  int b = 0;
  bool operator==(const GroupElem&) const = default;
  bool is_identity() const { return a == 0 && b == 0; }
  std::string name() const;
};

namespace detail {

/// Multiplication data of K as a k-algebra on the monomials x1^i x2'^j.
struct KRing {
  int p = 2;
  int levels = 2;  ///< 1 for a single Artin-Schreier step, 2 for K1 K2
  int n = 4;
  int d1 = 2;      ///< x1 exponent range
  int d2 = 2;      ///< x2' exponent range (1 when levels == 1)
  int h1 = 1;
  int what = 0;    ///< v_K(x2') = -what
  int e1 = 2;      ///< v_K(x1) = -e1 * h1
  /// f_red = sum_a fred[a] x1^a (levels == 2).
  std::vector<Series> fred;
  std::vector<int> mono_val;  ///< v_K(x1^i x2'^j) at index i + d1 * j
  std::vector<int> class_idx;  ///< residue class mod n -> monomial index

  int index(int i, int j) const { return i + d1 * j; }
  /// Formal valuation of x1^i x2'^j for any exponents.
  int formal_val(int i, int j) const { return -e1 * h1 * i - what * j; }
  /// t-adic precision of a coordinate whose monomial has valuation v.
  static int coord_prec(int big_n, int v, int n);
};

}  // namespace detail

/// Element of K stored on the monomial basis with a K-adic absolute
/// precision: every term of valuation >= prec() is unknown. Coordinates are
/// kept truncated to exactly that information.
class KElem {
 public:
  using Ring = std::shared_ptr<const detail::KRing>;

  KElem() = default;
  static KElem zero(const Ring& r);
  static KElem big_o(const Ring& r, int prec);
  static KElem one(const Ring& r);
  static KElem from_k(const Ring& r, const Series& c);
  static KElem monomial(const Ring& r, int i, int j, const Series& c);
  /// Builds from coordinates; the precision is derived from them and capped
  /// by prec.
  static KElem from_coords(const Ring& r, std::vector<Series> coords, int prec = Series::kExact);

  const Ring& ring() const { return r_; }
  int p() const { return r_->p; }
  int n() const { return r_->n; }
  int prec() const { return prec_; }
  bool is_exact() const { return prec_ == Series::kExact; }
  const Series& coord(int idx) const { return c_[static_cast<std::size_t>(idx)]; }
  const std::vector<Series>& coords() const { return c_; }

  bool is_exact_zero() const;
  bool is_zero_to_precision() const;
  /// v_K by the monomial minimum (terms of distinct monomials never cancel).
  /// kInfinite for the exact zero; PrecisionExhausted when uncertified.
  int val() const;
  int val_lower_bound() const;
  /// F_p coefficient of the unique monomial term of valuation m.
  int level_coeff(int m) const;
  /// Only the constant monomial may carry a nonzero coordinate.
  bool in_k() const;

  KElem truncated(int prec) const;
  KElem as_exact() const;

  KElem operator-() const;
  KElem& operator+=(const KElem& o);
  KElem& operator-=(const KElem& o);
  friend KElem operator+(KElem a, const KElem& b) { return a += b; }
  friend KElem operator-(KElem a, const KElem& b) { return a -= b; }
  friend KElem operator*(const KElem& a, const KElem& b);
  /// Multiplication by an element of k.
  KElem scaled(const Series& c) const;
  KElem scaled(long long c) const;
  /// Multiplication by t^k.
  KElem shifted(int k) const;

  /// Equality of all terms below the smaller precision.
  bool agrees_with(const KElem& o) const;
  std::string to_string() const;

 private:
  KElem(Ring r, std::vector<Series> c, int prec);
  void normalize(int cap);

  Ring r_;
  std::vector<Series> c_;
  int prec_ = Series::kExact;
};

/// Linear combination sum_i coeff_i * basis_i with basis elements that are
/// exact; each coefficient only contributes below the given K-precision.
KElem combine_exact(const KElem::Ring& r, const std::vector<Series>& coeffs,
                    const std::vector<const KElem*>& basis, int prec);

/// Result of Artin-Schreier reduction in K1: f_red = f - sum (g^p - g).
struct AsReduction {
  std::vector<Series> f_red;  ///< coordinates on x1^a, a < p
  /// g_m = c * x1^a * t^b as (c, a, b).
  struct Term {
    int c;
    int a;
    int b;
  };
  std::vector<Term> corrections;
};

/// Strips leading terms of p-divisible negative valuation from f in
/// K1 = k(x1), x1^p - x1 = t^-h1.
AsReduction as_reduce(int p, int h1, const std::vector<Series>& f);
/// v_{K1} of an element of K1 given by x1-coordinates.
int k1_valuation(int p, int h1, const std::vector<Series>& f);

struct TowerParams {
  int p = 3;
  int h1 = 1;
  int h2 = 2;
  int prec = kDefaultPrec;
  int levels = 2;
  int lift_e = 1;      ///< recorded tame lift degree (bookkeeping)
  int subfield_m = 1;  ///< k0 = F_p((t^m)) used by relative questions
  int pi_shift1 = 0;   ///< alternative extended-Euclid choices
  int pi_shift2 = 0;
};

/// K = K1 K2 over k = F_p((t)) (or the single step K1/k when levels == 1).
/// Immutable after build; all caches are filled eagerly.
class FieldTower {
 public:
  static FieldTower build(int p, int h1, int h2, int prec = kDefaultPrec);
  /// Degree p extension x^p - x = t^-h.
  static FieldTower build_step(int p, int h, int prec = kDefaultPrec);
  static FieldTower build(const TowerParams& params);

  const TowerParams& params() const;
  const KElem::Ring& ring() const;
  int p() const;
  int n() const;
  int levels() const;
  int h1() const;
  int h2() const;
  int what() const;
  int prec() const;
  int subfield_m() const;
  int lift_e() const;
  /// K-adic relative precision targeted by inexact computations.
  int kprec() const;
  int depth() const;
  int different() const;
  /// Exponents (a, b) of pi1 = x1^a t^b and (a2, b2) of pi = x2'^a2 pi1^b2.
  std::vector<int> uniformizer_exponents() const;

  // Group.
  int group_order() const { return n(); }
  GroupElem group_elem(int idx) const;
  int group_index(GroupElem g) const;
  int group_mul(int g, int h) const;
  int group_inv(int g) const;

  // Elements.
  KElem zero() const;
  KElem one() const;
  KElem from_k(const Series& c) const;
  KElem x1() const;
  KElem x2() const;
  Series t_pow(int e) const;
  const KElem& pi() const;
  const KElem& pi1() const;
  /// pi^m; cached on a window covering [-(d + 2n), 2n].
  KElem pi_pow(int m) const;
  int pi_window_lo() const;
  int pi_window_hi() const;
  const AsReduction& reduction() const;
  /// G = sum g_m with x2' = x2 - G.
  const KElem& correction_sum() const;

  // Galois action.
  KElem galois(int g, const KElem& x) const;
  KElem galois(GroupElem g, const KElem& x) const { return galois(group_index(g), x); }
  /// g(pi^m), cached on the pi window.
  KElem galois_pi(int g, int m) const;
  /// Image of the monomial idx under g (exact).
  const KElem& galois_monomial(int g, int idx) const;
  /// Matrix of g on the monomial basis (columns = images).
  VMatrix galois_matrix(int g) const;

  // Field operations.
  KElem inverse(const KElem& x) const;
  Series trace(const KElem& x) const;
  Series norm(const KElem& x) const;
  VMatrix mult_matrix(const KElem& x) const;
  Series norm_det(const KElem& x) const;
  int valuation(const KElem& x) const { return x.val(); }
  int valuation_norm(const KElem& x) const;
  int valuation_pi_basis(const KElem& x) const;
  /// Coordinates a_u with x = sum_{u<n} a_u pi^u.
  std::vector<Series> to_pi_coords(const KElem& x) const;
  KElem from_pi_coords(const std::vector<Series>& a) const;

  /// r(y / pi^m) for v(y) >= m.
  int residue_ratio(const KElem& y, int m) const;
  /// Residue through r(Tr(x pi^-d)) / r(c_pi).
  int residue(const KElem& x) const;
  /// Residue read from the constant term.
  int residue_direct(const KElem& x) const;
  const Series& c_pi() const;
  /// r(t / pi^n).
  int tau() const;

  // Trace form.
  const VMatrix& gram() const;
  const VMatrix& gram_inv() const;
  /// Trace dual of pi^v.
  const KElem& dual_pi(int v) const;
  /// g(dual_pi(v)).
  const KElem& galois_dual(int g, int v) const;
  const Series& monomial_trace(int idx) const;

  // Rebasing.
  /// Base change by t = s^e (p does not divide e).
  FieldTower tame_rebase(int e) const;
  /// Same field, with k0 = F_p((t^m)) designated.
  FieldTower insep_rebase(int m) const;
  FieldTower with_prec(int prec) const;
  /// Rebuilt with the shifted extended-Euclid uniformizer choice.
  FieldTower with_alt_uniformizer(int s1, int s2) const;
  /// Image of an element of base in this tower, when this tower is
  /// base.tame_rebase(e).
  KElem embed(const FieldTower& base, const KElem& x) const;
  bool in_subfield(const Series& c) const;

  nlohmann::json serialize() const;

 private:
  struct Impl;
  explicit FieldTower(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// True iff every known nonzero exponent of c is divisible by m.
bool in_subfield(const Series& c, int m);

}  // namespace galmod
