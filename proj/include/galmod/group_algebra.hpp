#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galmod/tower.hpp"

namespace galmod {

/// Element of K[G]: one K-coefficient per group element (index a + p b).
class AlgebraElem {
 public:
  /// The zero element.
  explicit AlgebraElem(const FieldTower& t);

  static AlgebraElem identity(const FieldTower& t);
  static AlgebraElem group(const FieldTower& t, int g, const Series& c);
  static AlgebraElem group(const FieldTower& t, int g);
  /// Sum of all group elements (the trace).
  static AlgebraElem trace_elem(const FieldTower& t);
  /// Element of k[G] from its coordinates c_g.
  static AlgebraElem from_group_coords(const FieldTower& t, const std::vector<Series>& c);

  const FieldTower& tower() const { return t_; }
  int size() const { return static_cast<int>(c_.size()); }
  const KElem& coeff(int g) const { return c_[static_cast<std::size_t>(g)]; }
  void set(int g, KElem c) { c_[static_cast<std::size_t>(g)] = std::move(c); }

  bool is_exact_zero() const;
  bool is_zero_to_precision() const;
  /// Every coefficient lies in k.
  bool in_k() const;
  /// Coefficients in k0 = F_p((t^m)).
  bool in_subfield(int m) const;
  /// Coordinates c_g of an element of k[G]; throws if a coefficient is not in k.
  std::vector<Series> group_coords() const;

  /// Claimed subfield for the coefficients; validated on set.
  const std::optional<int>& subfield_mark() const { return mark_; }
  void set_subfield_mark(int m);

  AlgebraElem operator-() const;
  AlgebraElem& operator+=(const AlgebraElem& o);
  AlgebraElem& operator-=(const AlgebraElem& o);
  friend AlgebraElem operator+(AlgebraElem a, const AlgebraElem& b) { return a += b; }
  friend AlgebraElem operator-(AlgebraElem a, const AlgebraElem& b) { return a -= b; }
  /// Product in K[G]: (a g)(b h) = a g(b) gh.
  friend AlgebraElem operator*(const AlgebraElem& f, const AlgebraElem& h);
  AlgebraElem pow(int e) const;
  AlgebraElem scaled(const Series& c) const;
  /// Left multiplication x * f.
  AlgebraElem scaled(const KElem& x) const;

  /// Sum of c_g g(x).
  KElem act(const KElem& x) const;
  /// act(pi^m) through the cached conjugates of pi^m.
  KElem act_pi(int m) const;

  std::string to_string() const;

 private:
  FieldTower t_;
  std::vector<KElem> c_;
  std::optional<int> mark_;
};

/// Coefficientwise product sum a_g b_g g.
AlgebraElem star(const AlgebraElem& f, const AlgebraElem& h);

/// Laurent polynomial text with integer coefficients, e.g. "(t^-1 + 2*t^3)".
std::string series_expr(const Series& s);

}  // namespace galmod
