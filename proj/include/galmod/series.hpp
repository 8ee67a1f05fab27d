#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galmod {

/// Raised when a quantity cannot be certified at the working precision.
/// Callers may rebuild with a larger precision and retry.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace fp {

bool is_prime(int p);

inline int reduce(long long v, int p) {
  v %= p;
  return static_cast<int>(v < 0 ? v + p : v);
}

/// Multiplicative inverse in F_p; throws std::domain_error on zero.
int inv(int a, int p);

int pow(int a, long long e, int p);

}  // namespace fp

/// Truncated Laurent series over F_p (p < 256) with an absolute precision:
/// every exponent >= prec() is unknown. A precision of kExact marks an exact
/// Laurent polynomial.
///
/// Storage is normalized: when nonzero, the coefficient at lead_exp() is
/// nonzero and there are no trailing zero coefficients. An empty coefficient
/// list with finite precision is O(t^prec), a zero that is not certified.
class Series {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();
  /// Valuation reported for the exact zero.
  static constexpr int kInfinite = std::numeric_limits<int>::max();

  Series() = default;

  static Series zero(int p);
  static Series big_o(int p, int prec);
  static Series constant(int p, long long c);
  static Series monomial(int p, long long c, int exp);
  /// Coefficients c[k] at exponent lead + k.
  static Series from_coeffs(int p, int lead, const std::vector<int>& coeffs,
                            int prec = kExact);
  static Series from_terms(int p, const std::vector<std::pair<int, long long>>& terms,
                           int prec = kExact);

  int p() const { return p_; }
  int prec() const { return prec_; }
  bool is_exact() const { return prec_ == kExact; }
  bool is_exact_zero() const { return coeffs_.empty() && is_exact(); }
  bool is_certified_nonzero() const { return !coeffs_.empty(); }
  /// No coefficient below prec() is nonzero (includes the exact zero).
  bool is_zero_to_precision() const { return coeffs_.empty(); }

  /// Leading exponent. kInfinite for the exact zero; throws
  /// PrecisionExhausted when no nonzero coefficient is known.
  int val() const;
  /// Certified lower bound on the valuation: lead_exp, or prec when nothing
  /// nonzero is known (kInfinite for the exact zero).
  int val_lower_bound() const;
  int lead_exp() const { return lead_; }
  int leading_coeff() const;
  /// Coefficient at exponent e; throws PrecisionExhausted when e >= prec().
  int coeff(int e) const;
  /// Highest exponent carrying a stored nonzero coefficient.
  int last_exp() const { return lead_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::uint8_t>& raw() const { return coeffs_; }

  Series truncated(int prec) const;
  /// The same coefficients, declared exact. Used when a truncated operand is
  /// known to be consumed by an operation that re-truncates its result.
  Series as_exact() const;

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);

  /// Product of the stored coefficients of a and b (operand precisions are
  /// ignored), keeping only exponents below limit; the result carries
  /// precision limit. limit = kExact gives the full exact product.
  static Series mul_truncated(const Series& a, const Series& b, int limit);

  Series scaled(long long c) const;
  /// Multiplication by t^k (exact).
  Series shifted(int k) const;
  /// Inverse. For an exact non-monomial input the result carries absolute
  /// precision prec_hint; for truncated input precision follows the input.
  Series inverse(int prec_hint) const;

  /// Substitution t -> t^e (e >= 1).
  Series inflate(int e) const;
  /// True iff every known nonzero exponent is divisible by m.
  bool in_subfield(int m) const;
  /// Writes x = sum_{r<m} t^r y_r(t^m) and returns the y_r, each as a series
  /// in u = t^m.
  std::vector<Series> split_mod(int m) const;

  /// Equality of all coefficients below the smaller precision.
  bool agrees_with(const Series& o) const;
  /// Structural equality (same coefficients and same precision).
  bool operator==(const Series& o) const;
  bool operator!=(const Series& o) const { return !(*this == o); }

  /// Textual form, e.g. "t^-2 + 2*t^0 + t^5 (mod t^64)".
  std::string to_string() const;

 private:
  Series(int p, int lead, std::vector<std::uint8_t> coeffs, int prec);
  void normalize();

  int p_ = 2;
  int lead_ = 0;
  std::vector<std::uint8_t> coeffs_;
  int prec_ = kExact;
};

/// prec + delta, keeping kExact fixed.
inline int prec_add(int prec, int delta) {
  if (prec == Series::kExact) return Series::kExact;
  return prec + delta;
}

}  // namespace galmod
