#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace galmod {

/// Element of R = F_p[X]/(X^n - 1); coefficient of X^j at index j.
class CyclicPoly {
 public:
  CyclicPoly() = default;
  CyclicPoly(int p, int n);
  CyclicPoly(int p, int n, const std::vector<int>& coeffs);

  static CyclicPoly one(int p, int n);
  /// c * X^j, j taken modulo n.
  static CyclicPoly monomial(int p, int n, long long c, long long j);
  /// X^h - 1.
  static CyclicPoly xpow_minus_one(int p, int n, long long h);

  int p() const { return p_; }
  int n() const { return n_; }
  int operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
  void set(int j, long long c);
  bool is_zero() const;
  /// Value at X = 1 (well defined since X^n - 1 vanishes there).
  int at_one() const;

  CyclicPoly& operator+=(const CyclicPoly& o);
  CyclicPoly& operator-=(const CyclicPoly& o);
  friend CyclicPoly operator+(CyclicPoly a, const CyclicPoly& b) { return a += b; }
  friend CyclicPoly operator-(CyclicPoly a, const CyclicPoly& b) { return a -= b; }
  friend CyclicPoly operator*(const CyclicPoly& a, const CyclicPoly& b);
  CyclicPoly scaled(long long c) const;
  CyclicPoly pow(int e) const;
  /// X -> X^e.
  CyclicPoly substitute_power(long long e) const;

  bool operator==(const CyclicPoly& o) const = default;

  std::string to_string() const;

 private:
  int p_ = 2;
  int n_ = 1;
  std::vector<std::uint8_t> c_{0};
};

/// Largest m <= n with (X-1)^m dividing r in R; n exactly when r = 0.
/// Uses (X-1)^(n-b) | r  <=>  (X-1)^b * r = 0, valid because X^n - 1 = (X-1)^n
/// when n is a power of p.
int xm1_val(const CyclicPoly& r);

/// c != 0 with r1 = c * r2, if any. Two zeros give c = 1.
std::optional<int> proportional(const CyclicPoly& r1, const CyclicPoly& r2);

/// Rank over F_p of a list of vectors (rows of length n) and, when the rank
/// is deficient, one nonzero dependency (coefficients per input row).
struct RankResult {
  int rank = 0;
  std::vector<int> dependency;
};
RankResult fp_rank(const std::vector<std::vector<int>>& rows, int p);

}  // namespace galmod
