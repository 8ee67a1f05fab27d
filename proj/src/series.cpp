#include "galmod/series.hpp"

#include <algorithm>
#include <sstream>

namespace galmod {

namespace fp {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

int pow(int a, long long e, int p) {
  long long base = reduce(a, p);
  long long r = 1 % p;
  if (e < 0) {
    base = inv(static_cast<int>(base), p);
    e = -e;
  }
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

int inv(int a, int p) {
  a = reduce(a, p);
  if (a == 0) throw std::domain_error("inverse of zero in F_p");
  return pow(a, p - 2, p);
}

}  // namespace fp

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

void check_same_field(const Series& a, const Series& b) {
  if (a.p() != b.p()) throw std::invalid_argument("series over different primes");
}

}  // namespace

Series::Series(int p, int lead, std::vector<std::uint8_t> coeffs, int prec)
    : p_(p), lead_(lead), coeffs_(std::move(coeffs)), prec_(prec) {
  normalize();
}

void Series::normalize() {
  if (prec_ != kExact) {
    const long long keep = static_cast<long long>(prec_) - lead_;
    if (keep <= 0) {
      coeffs_.clear();
    } else if (static_cast<long long>(coeffs_.size()) > keep) {
      coeffs_.resize(static_cast<std::size_t>(keep));
    }
  }
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    lead_ = 0;
    return;
  }
  if (first > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    lead_ += static_cast<int>(first);
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Series Series::zero(int p) { return Series(p, 0, {}, kExact); }

Series Series::big_o(int p, int prec) { return Series(p, 0, {}, prec); }

Series Series::constant(int p, long long c) { return monomial(p, c, 0); }

Series Series::monomial(int p, long long c, int exp) {
  return Series(p, exp, {static_cast<std::uint8_t>(fp::reduce(c, p))}, kExact);
}

Series Series::from_coeffs(int p, int lead, const std::vector<int>& coeffs, int prec) {
  std::vector<std::uint8_t> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    c[i] = static_cast<std::uint8_t>(fp::reduce(coeffs[i], p));
  }
  return Series(p, lead, std::move(c), prec);
}

Series Series::from_terms(int p, const std::vector<std::pair<int, long long>>& terms,
                          int prec) {
  Series out = big_o(p, prec);
  if (prec == kExact) out = zero(p);
  for (const auto& [e, c] : terms) {
    if (e >= prec) continue;
    out += monomial(p, c, e);
  }
  return out.truncated(prec);
}

int Series::val() const {
  if (!coeffs_.empty()) return lead_;
  if (is_exact()) return kInfinite;
  throw PrecisionExhausted("valuation not certified below t^" + std::to_string(prec_));
}

int Series::val_lower_bound() const {
  if (!coeffs_.empty()) return lead_;
  return prec_;
}

int Series::leading_coeff() const {
  if (coeffs_.empty()) {
    throw PrecisionExhausted("leading coefficient of a zero series");
  }
  return coeffs_.front();
}

int Series::coeff(int e) const {
  if (e >= prec_) {
    throw PrecisionExhausted("coefficient at t^" + std::to_string(e) +
                             " beyond precision t^" + std::to_string(prec_));
  }
  if (coeffs_.empty() || e < lead_ || e > last_exp()) return 0;
  return coeffs_[static_cast<std::size_t>(e - lead_)];
}

Series Series::truncated(int prec) const {
  if (prec >= prec_) return *this;
  return Series(p_, lead_, coeffs_, prec);
}

Series Series::as_exact() const { return Series(p_, lead_, coeffs_, kExact); }

Series Series::operator-() const {
  std::vector<std::uint8_t> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<std::uint8_t>(coeffs_[i] == 0 ? 0 : p_ - coeffs_[i]);
  }
  return Series(p_, lead_, std::move(c), prec_);
}

Series& Series::operator+=(const Series& o) {
  check_same_field(*this, o);
  const int prec = std::min(prec_, o.prec_);
  if (o.coeffs_.empty()) {
    if (prec < prec_) *this = truncated(prec);
    return *this;
  }
  if (coeffs_.empty()) {
    *this = o.truncated(prec);
    return *this;
  }
  const int lo = std::min(lead_, o.lead_);
  const int hi = std::max(last_exp(), o.last_exp());
  std::vector<std::uint8_t> c(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[lead_ - lo + i] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
    auto& slot = c[o.lead_ - lo + i];
    slot = static_cast<std::uint8_t>((slot + o.coeffs_[i]) % p_);
  }
  *this = Series(p_, lo, std::move(c), prec);
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series operator*(const Series& a, const Series& b) {
  check_same_field(a, b);
  const int p = a.p_;
  if (a.is_exact_zero() || b.is_exact_zero()) return Series::zero(p);
  int prec;
  if (a.is_exact() && b.is_exact()) {
    prec = Series::kExact;
  } else if (a.is_exact()) {
    prec = b.prec_ + a.lead_;
  } else if (b.is_exact()) {
    prec = a.prec_ + b.lead_;
  } else {
    prec = std::min(a.prec_ + b.val_lower_bound(), b.prec_ + a.val_lower_bound());
  }
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Series::big_o(p, prec);
  const int lead = a.lead_ + b.lead_;
  long long len = static_cast<long long>(a.coeffs_.size() + b.coeffs_.size()) - 1;
  if (prec != Series::kExact) len = std::min<long long>(len, static_cast<long long>(prec) - lead);
  if (len <= 0) return Series::big_o(p, prec);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(len), 0);
  const std::size_t na = a.coeffs_.size();
  const std::size_t nb = b.coeffs_.size();
  const std::size_t ulen = static_cast<std::size_t>(len);
  for (std::size_t i = 0; i < na && i < ulen; ++i) {
    const std::uint64_t ai = a.coeffs_[i];
    if (ai == 0) continue;
    const std::size_t jmax = std::min(nb, ulen - i);
    const std::uint8_t* bj = b.coeffs_.data();
    std::uint64_t* out = acc.data() + i;
    for (std::size_t j = 0; j < jmax; ++j) out[j] += ai * bj[j];
  }
  std::vector<std::uint8_t> c(ulen);
  for (std::size_t k = 0; k < ulen; ++k) c[k] = static_cast<std::uint8_t>(acc[k] % p);
  return Series(p, lead, std::move(c), prec);
}

Series Series::mul_truncated(const Series& a, const Series& b, int limit) {
  check_same_field(a, b);
  const int p = a.p_;
  if (a.coeffs_.empty() || b.coeffs_.empty()) {
    return limit == kExact ? zero(p) : big_o(p, limit);
  }
  const int lead = a.lead_ + b.lead_;
  long long len = static_cast<long long>(a.coeffs_.size() + b.coeffs_.size()) - 1;
  if (limit != kExact) len = std::min<long long>(len, static_cast<long long>(limit) - lead);
  if (len <= 0) return big_o(p, limit);
  const std::size_t ulen = static_cast<std::size_t>(len);
  std::vector<std::uint64_t> acc(ulen, 0);
  const std::size_t na = a.coeffs_.size();
  const std::size_t nb = b.coeffs_.size();
  for (std::size_t i = 0; i < na && i < ulen; ++i) {
    const std::uint64_t ai = a.coeffs_[i];
    if (ai == 0) continue;
    const std::size_t jmax = std::min(nb, ulen - i);
    const std::uint8_t* bj = b.coeffs_.data();
    std::uint64_t* out = acc.data() + i;
    for (std::size_t j = 0; j < jmax; ++j) out[j] += ai * bj[j];
  }
  std::vector<std::uint8_t> c(ulen);
  for (std::size_t k = 0; k < ulen; ++k) c[k] = static_cast<std::uint8_t>(acc[k] % p);
  return Series(p, lead, std::move(c), limit);
}

Series Series::scaled(long long c) const {
  const int cc = fp::reduce(c, p_);
  if (cc == 0) return zero(p_);
  std::vector<std::uint8_t> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(coeffs_[i] * cc % p_);
  }
  return Series(p_, lead_, std::move(out), prec_);
}

Series Series::shifted(int k) const {
  return Series(p_, coeffs_.empty() ? 0 : lead_ + k, coeffs_, prec_add(prec_, k));
}

Series Series::inverse(int prec_hint) const {
  if (is_exact_zero()) throw std::domain_error("inverse of the exact zero");
  if (coeffs_.empty()) {
    throw PrecisionExhausted("inverse of a series with uncertified valuation");
  }
  const int v = lead_;
  const int c0inv = fp::inv(coeffs_.front(), p_);
  if (is_exact() && coeffs_.size() == 1) {
    return Series(p_, -v, {static_cast<std::uint8_t>(c0inv)}, kExact);
  }
  const int result_prec = is_exact() ? prec_hint : prec_ - 2 * v;
  const long long rel = static_cast<long long>(result_prec) + v;
  if (rel <= 0) return big_o(p_, result_prec);
  const std::size_t len = static_cast<std::size_t>(rel);
  std::vector<std::uint8_t> w(len, 0);
  w[0] = static_cast<std::uint8_t>(c0inv);
  const std::size_t nb = coeffs_.size();
  for (std::size_t k = 1; k < len; ++k) {
    std::uint64_t acc = 0;
    const std::size_t imax = std::min(k, nb - 1);
    for (std::size_t i = 1; i <= imax; ++i) acc += static_cast<std::uint64_t>(coeffs_[i]) * w[k - i];
    const int s = static_cast<int>(acc % p_);
    w[k] = static_cast<std::uint8_t>(fp::reduce(-static_cast<long long>(s) * c0inv, p_));
  }
  return Series(p_, -v, std::move(w), result_prec);
}

Series Series::inflate(int e) const {
  if (e < 1) throw std::invalid_argument("inflate: exponent must be positive");
  if (coeffs_.empty()) return Series(p_, 0, {}, prec_ == kExact ? kExact : prec_ * e);
  std::vector<std::uint8_t> c((coeffs_.size() - 1) * static_cast<std::size_t>(e) + 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * static_cast<std::size_t>(e)] = coeffs_[i];
  return Series(p_, lead_ * e, std::move(c), prec_ == kExact ? kExact : prec_ * e);
}

bool Series::in_subfield(int m) const {
  if (m < 1) throw std::invalid_argument("in_subfield: m must be positive");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0 && (lead_ + static_cast<int>(i)) % m != 0) return false;
  }
  return true;
}

std::vector<Series> Series::split_mod(int m) const {
  if (m < 1) throw std::invalid_argument("split_mod: m must be positive");
  std::vector<Series> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    const int prec = is_exact() ? kExact : ceil_div(prec_ - r, m);
    std::vector<std::pair<int, long long>> terms;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const int e = lead_ + static_cast<int>(i);
      if (coeffs_[i] != 0 && ((e % m) + m) % m == r) terms.emplace_back(floor_div(e, m), coeffs_[i]);
    }
    out.push_back(from_terms(p_, terms, prec));
  }
  return out;
}

bool Series::agrees_with(const Series& o) const {
  check_same_field(*this, o);
  const int prec = std::min(prec_, o.prec_);
  Series d = (*this - o).truncated(prec);
  return d.coeffs_.empty();
}

bool Series::operator==(const Series& o) const {
  return p_ == o.p_ && prec_ == o.prec_ && coeffs_ == o.coeffs_ &&
         (coeffs_.empty() || lead_ == o.lead_);
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (coeffs_[i] != 1) os << static_cast<int>(coeffs_[i]) << '*';
    os << "t^" << lead_ + static_cast<int>(i);
  }
  if (first) os << '0';
  if (!is_exact()) os << " (mod t^" << prec_ << ')';
  return os.str();
}

}  // namespace galmod
