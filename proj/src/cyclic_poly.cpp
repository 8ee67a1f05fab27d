#include "galmod/cyclic_poly.hpp"

#include <sstream>
#include <stdexcept>

#include "galmod/series.hpp"

namespace galmod {

namespace {

int mod_index(long long j, int n) {
  long long r = j % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

void check_compatible(const CyclicPoly& a, const CyclicPoly& b) {
  if (a.p() != b.p() || a.n() != b.n()) {
    throw std::invalid_argument("cyclic polynomials from different rings");
  }
}

}  // namespace

CyclicPoly::CyclicPoly(int p, int n) : p_(p), n_(n), c_(static_cast<std::size_t>(n), 0) {
  if (n < 1) throw std::invalid_argument("cyclic modulus must be positive");
}

CyclicPoly::CyclicPoly(int p, int n, const std::vector<int>& coeffs) : CyclicPoly(p, n) {
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const int idx = mod_index(static_cast<long long>(j), n);
    c_[idx] = static_cast<std::uint8_t>((c_[idx] + fp::reduce(coeffs[j], p)) % p);
  }
}

CyclicPoly CyclicPoly::one(int p, int n) { return monomial(p, n, 1, 0); }

CyclicPoly CyclicPoly::monomial(int p, int n, long long c, long long j) {
  CyclicPoly r(p, n);
  r.set(mod_index(j, n), c);
  return r;
}

CyclicPoly CyclicPoly::xpow_minus_one(int p, int n, long long h) {
  return monomial(p, n, 1, h) - one(p, n);
}

void CyclicPoly::set(int j, long long c) {
  c_[static_cast<std::size_t>(mod_index(j, n_))] = static_cast<std::uint8_t>(fp::reduce(c, p_));
}

bool CyclicPoly::is_zero() const {
  for (auto v : c_) {
    if (v != 0) return false;
  }
  return true;
}

int CyclicPoly::at_one() const {
  long long s = 0;
  for (auto v : c_) s += v;
  return fp::reduce(s, p_);
}

CyclicPoly& CyclicPoly::operator+=(const CyclicPoly& o) {
  check_compatible(*this, o);
  for (int j = 0; j < n_; ++j) c_[j] = static_cast<std::uint8_t>((c_[j] + o.c_[j]) % p_);
  return *this;
}

CyclicPoly& CyclicPoly::operator-=(const CyclicPoly& o) {
  check_compatible(*this, o);
  for (int j = 0; j < n_; ++j) c_[j] = static_cast<std::uint8_t>((c_[j] + p_ - o.c_[j]) % p_);
  return *this;
}

CyclicPoly operator*(const CyclicPoly& a, const CyclicPoly& b) {
  check_compatible(a, b);
  const int n = a.n_;
  std::vector<long long> acc(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      acc[static_cast<std::size_t>((i + j) % n)] += static_cast<long long>(a.c_[i]) * b.c_[j];
    }
  }
  CyclicPoly r(a.p_, n);
  for (int k = 0; k < n; ++k) r.c_[k] = static_cast<std::uint8_t>(acc[k] % a.p_);
  return r;
}

CyclicPoly CyclicPoly::scaled(long long c) const {
  CyclicPoly r(p_, n_);
  const int cc = fp::reduce(c, p_);
  for (int j = 0; j < n_; ++j) r.c_[j] = static_cast<std::uint8_t>(c_[j] * cc % p_);
  return r;
}

CyclicPoly CyclicPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power in R");
  CyclicPoly r = one(p_, n_);
  CyclicPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

CyclicPoly CyclicPoly::substitute_power(long long e) const {
  CyclicPoly r(p_, n_);
  for (int j = 0; j < n_; ++j) {
    if (c_[j] == 0) continue;
    const int idx = mod_index(static_cast<long long>(j) * e, n_);
    r.c_[idx] = static_cast<std::uint8_t>((r.c_[idx] + c_[j]) % p_);
  }
  return r;
}

std::string CyclicPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < n_; ++j) {
    if (c_[j] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (j == 0) {
      os << static_cast<int>(c_[j]);
      continue;
    }
    if (c_[j] != 1) os << static_cast<int>(c_[j]) << '*';
    os << "X^" << j;
  }
  if (first) os << '0';
  return os.str();
}

int xm1_val(const CyclicPoly& r) {
  const int n = r.n();
  const CyclicPoly xm1 = CyclicPoly::xpow_minus_one(r.p(), n, 1);
  CyclicPoly cur = r;
  for (int b = 0; b <= n; ++b) {
    if (cur.is_zero()) return n - b;
    cur = cur * xm1;
  }
  throw std::logic_error("xm1_val: modulus is not a power of the characteristic");
}

std::optional<int> proportional(const CyclicPoly& r1, const CyclicPoly& r2) {
  check_compatible(r1, r2);
  const bool z1 = r1.is_zero();
  const bool z2 = r2.is_zero();
  if (z1 && z2) return 1;
  if (z1 || z2) return std::nullopt;
  const int p = r1.p();
  int c = 0;
  for (int j = 0; j < r1.n(); ++j) {
    if (r2[j] != 0) {
      c = r1[j] * fp::inv(r2[j], p) % p;
      break;
    }
  }
  if (c == 0) return std::nullopt;
  if (r2.scaled(c) == r1) return c;
  return std::nullopt;
}

RankResult fp_rank(const std::vector<std::vector<int>>& rows, int p) {
  const std::size_t m = rows.size();
  RankResult out;
  if (m == 0) return out;
  const std::size_t width = rows.front().size();
  // Augment each row with an identity block to recover a dependency.
  std::vector<std::vector<int>> a(m, std::vector<int>(width + m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < width; ++j) a[i][j] = fp::reduce(rows[i][j], p);
    a[i][width + i] = 1;
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    const int inv = fp::inv(a[rank][col], p);
    for (auto& v : a[rank]) v = v * inv % p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const int f = a[i][col];
      for (std::size_t j = 0; j < width + m; ++j) a[i][j] = fp::reduce(a[i][j] - f * a[rank][j], p);
    }
    ++rank;
  }
  out.rank = static_cast<int>(rank);
  if (rank < m) {
    out.dependency.assign(a[rank].begin() + static_cast<std::ptrdiff_t>(width), a[rank].end());
  }
  return out;
}

}  // namespace galmod
