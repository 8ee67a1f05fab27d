#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galmod/cyclic_poly.hpp"
#include "galmod/group_algebra.hpp"
#include "galmod/tower.hpp"
#include "galmod/verdict.hpp"

namespace galmod {

/// Element of K (x)_k K on the basis pi^u (x) pi^v, 0 <= u, v < n.
class TensorElem {
 public:
  /// The zero element.
  explicit TensorElem(const FieldTower& t);

  static TensorElem one(const FieldTower& t);
  /// c * pi^u (x) pi^v.
  static TensorElem basis(const FieldTower& t, int u, int v, const Series& c);
  static TensorElem pure(const FieldTower& t, const KElem& x, const KElem& y);

  const FieldTower& tower() const { return t_; }
  int n() const { return n_; }
  const Series& at(int u, int v) const { return c_[static_cast<std::size_t>(u * n_ + v)]; }
  Series& at(int u, int v) { return c_[static_cast<std::size_t>(u * n_ + v)]; }

  bool is_exact_zero() const;
  bool is_zero_to_precision() const;

  TensorElem swap() const;
  TensorElem operator-() const;
  TensorElem& operator+=(const TensorElem& o);
  TensorElem& operator-=(const TensorElem& o);
  friend TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }
  friend TensorElem operator-(TensorElem a, const TensorElem& b) { return a -= b; }
  friend TensorElem operator*(const TensorElem& a, const TensorElem& b);
  TensorElem scaled(const Series& c) const;

  bool agrees_with(const TensorElem& o) const;
  std::string to_string() const;

 private:
  FieldTower t_;
  int n_;
  std::vector<Series> c_;
};

/// phi(x (x) y) = x sum_g g(y) g.
AlgebraElem phi(const TensorElem& a);
/// sum_v f(dual_v) (x) pi^v.
TensorElem phi_inv(const AlgebraElem& f);

/// Largest i with a in X_i.
int xdeg(const TensorElem& a);
/// r_X(a) at level i: sum_l r(z_l / pi^(i-l)) X^l where a = sum_l pi^l (x) z_l.
CyclicPoly rX(const TensorElem& a, int i);

/// Class of (a, b) under (a, b) ~ (a + nc, b - nc), stored as (a mod n, a + b).
struct ClassPoint {
  int r = 0;
  int s = 0;
  static ClassPoint of(int a, int b, int n);
  bool operator==(const ClassPoint&) const = default;
  auto operator<=>(const ClassPoint&) const = default;
};

/// [c1] <= [c2]: some representative of c2 dominates c1 in both coordinates.
bool class_leq(const ClassPoint& c1, const ClassPoint& c2, int n);
/// Minimal class points of the nonzero entries, sorted.
std::vector<ClassPoint> gamma(const TensorElem& a);
bool is_diagonal(const TensorElem& a);

/// a in m^a (x) m^b, entrywise.
bool ideal_member(const TensorElem& t, int a, int b);
/// The same through the antichain: [(a, b)] <= every point of gamma.
bool ideal_member_gamma(const TensorElem& t, int a, int b);
/// f in C(i, j) = phi(m^j (x) m^(-i-d-n+1)).
bool cij_member(const AlgebraElem& f, int i, int j);
/// The same with the second exponent i-d-n+1.
bool cij_member_literal(const AlgebraElem& f, int i, int j);

struct TliftOptions {
  int samples = 20;
  std::uint64_t seed = 1;
};

/// Graded independence and diagonality of {f_ij} after base change t = s^e.
VerdictReport verify_tlift(const FieldTower& base, int e, const TliftOptions& opt = {});

}  // namespace galmod
