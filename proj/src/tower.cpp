#include "galmod/tower.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace galmod {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

int mod(long long a, int n) { return static_cast<int>(((a % n) + n) % n); }

int clamp_prec(long long v) {
  if (v >= Series::kExact) return Series::kExact;
  if (v < INT_MIN / 4) return INT_MIN / 4;
  return static_cast<int>(v);
}

constexpr long long kNoVal = LLONG_MAX;

/// Smallest n * v_t(c_idx) + v(m_idx) over certified coordinates.
long long certified_min(const KElem& x) {
  const auto& r = *x.ring();
  long long best = kNoVal;
  for (int idx = 0; idx < r.n; ++idx) {
    const Series& c = x.coord(idx);
    if (!c.is_certified_nonzero()) continue;
    best = std::min(best, static_cast<long long>(r.n) * c.lead_exp() + r.mono_val[idx]);
  }
  return best;
}

}  // namespace

std::string GroupElem::name() const {
  if (is_identity()) return "e";
  std::string out;
  if (a != 0) out += a == 1 ? "s1" : "s1^" + std::to_string(a);
  if (b != 0) {
    if (!out.empty()) out += "*";
    out += b == 1 ? "s2" : "s2^" + std::to_string(b);
  }
  return out;
}

namespace detail {

int KRing::coord_prec(int big_n, int v, int n) {
  if (big_n == Series::kExact) return Series::kExact;
  return clamp_prec(ceil_div(static_cast<long long>(big_n) - v, n));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// KElem

KElem::KElem(Ring r, std::vector<Series> c, int prec) : r_(std::move(r)), c_(std::move(c)) {
  normalize(prec);
}

void KElem::normalize(int cap) {
  const int n = r_->n;
  long long big_n = cap;
  for (int idx = 0; idx < n; ++idx) {
    const Series& c = c_[static_cast<std::size_t>(idx)];
    if (c.is_exact()) continue;
    big_n = std::min(big_n, static_cast<long long>(n) * c.prec() + r_->mono_val[idx]);
  }
  prec_ = clamp_prec(big_n);
  if (prec_ == Series::kExact) return;
  for (int idx = 0; idx < n; ++idx) {
    auto& c = c_[static_cast<std::size_t>(idx)];
    c = c.truncated(detail::KRing::coord_prec(prec_, r_->mono_val[idx], n));
  }
}

KElem KElem::zero(const Ring& r) {
  return KElem(r, std::vector<Series>(static_cast<std::size_t>(r->n), Series::zero(r->p)),
               Series::kExact);
}

KElem KElem::big_o(const Ring& r, int prec) {
  return KElem(r, std::vector<Series>(static_cast<std::size_t>(r->n), Series::zero(r->p)), prec);
}

KElem KElem::one(const Ring& r) { return from_k(r, Series::constant(r->p, 1)); }

KElem KElem::from_k(const Ring& r, const Series& c) {
  std::vector<Series> coords(static_cast<std::size_t>(r->n), Series::zero(r->p));
  coords[0] = c;
  return KElem(r, std::move(coords), Series::kExact);
}

KElem KElem::monomial(const Ring& r, int i, int j, const Series& c) {
  if (i < 0 || i >= r->d1 || j < 0 || j >= r->d2) throw std::out_of_range("monomial exponent");
  std::vector<Series> coords(static_cast<std::size_t>(r->n), Series::zero(r->p));
  coords[static_cast<std::size_t>(r->index(i, j))] = c;
  return KElem(r, std::move(coords), Series::kExact);
}

KElem KElem::from_coords(const Ring& r, std::vector<Series> coords, int prec) {
  if (static_cast<int>(coords.size()) != r->n) throw std::invalid_argument("coordinate count");
  return KElem(r, std::move(coords), prec);
}

bool KElem::is_exact_zero() const {
  if (!is_exact()) return false;
  return std::all_of(c_.begin(), c_.end(), [](const Series& s) { return s.is_exact_zero(); });
}

bool KElem::is_zero_to_precision() const {
  return std::all_of(c_.begin(), c_.end(), [](const Series& s) { return s.is_zero_to_precision(); });
}

int KElem::val() const {
  const long long best = certified_min(*this);
  if (best != kNoVal) return static_cast<int>(best);
  if (is_exact()) return Series::kInfinite;
  throw PrecisionExhausted("K-valuation not certified below pi^" + std::to_string(prec_));
}

int KElem::val_lower_bound() const {
  const long long best = certified_min(*this);
  if (best != kNoVal) return static_cast<int>(best);
  return is_exact() ? Series::kInfinite : prec_;
}

int KElem::level_coeff(int m) const {
  if (m >= prec_) {
    throw PrecisionExhausted("level " + std::to_string(m) + " beyond precision pi^" +
                             std::to_string(prec_));
  }
  const int n = r_->n;
  const int idx = r_->class_idx[static_cast<std::size_t>(mod(m, n))];
  const long long e = (static_cast<long long>(m) - r_->mono_val[idx]) / n;
  return c_[static_cast<std::size_t>(idx)].coeff(static_cast<int>(e));
}

bool KElem::in_k() const {
  for (int idx = 1; idx < r_->n; ++idx) {
    if (!c_[static_cast<std::size_t>(idx)].is_zero_to_precision()) return false;
  }
  return true;
}

KElem KElem::truncated(int prec) const {
  if (prec >= prec_) return *this;
  return KElem(r_, c_, prec);
}

KElem KElem::as_exact() const {
  std::vector<Series> c;
  c.reserve(c_.size());
  for (const auto& s : c_) c.push_back(s.as_exact());
  return KElem(r_, std::move(c), Series::kExact);
}

KElem KElem::operator-() const {
  std::vector<Series> c;
  c.reserve(c_.size());
  for (const auto& s : c_) c.push_back(-s);
  return KElem(r_, std::move(c), prec_);
}

KElem& KElem::operator+=(const KElem& o) {
  if (r_ != o.r_) throw std::invalid_argument("elements of different towers");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  normalize(std::min(prec_, o.prec_));
  return *this;
}

KElem& KElem::operator-=(const KElem& o) { return *this += -o; }

KElem operator*(const KElem& a, const KElem& b) {
  if (a.r_ != b.r_) throw std::invalid_argument("elements of different towers");
  const auto& r = *a.r_;
  if (a.is_exact_zero() || b.is_exact_zero()) return KElem::zero(a.r_);
  long long big_n;
  if (a.is_exact() && b.is_exact()) {
    big_n = Series::kExact;
  } else if (a.is_exact()) {
    big_n = static_cast<long long>(b.prec_) + a.val();
  } else if (b.is_exact()) {
    big_n = static_cast<long long>(a.prec_) + b.val();
  } else {
    big_n = std::min(static_cast<long long>(a.prec_) + b.val_lower_bound(),
                     static_cast<long long>(b.prec_) + a.val_lower_bound());
  }
  const int cap = clamp_prec(big_n);
  const int p = r.p;
  const int di = r.levels == 2 ? 3 * p - 2 : 2 * p - 1;
  const int dj = r.levels == 2 ? 2 * p - 1 : 1;
  auto limit = [&](int i, int j) { return detail::KRing::coord_prec(cap, r.formal_val(i, j), r.n); };
  std::vector<Series> c(static_cast<std::size_t>(di * dj));
  auto at = [&](int i, int j) -> Series& { return c[static_cast<std::size_t>(i + di * j)]; };
  for (int j = 0; j < dj; ++j) {
    for (int i = 0; i < di; ++i) {
      const int l = limit(i, j);
      at(i, j) = l == Series::kExact ? Series::zero(p) : Series::big_o(p, l);
    }
  }
  for (int ja = 0; ja < r.d2; ++ja) {
    for (int ia = 0; ia < r.d1; ++ia) {
      const Series& ca = a.c_[static_cast<std::size_t>(r.index(ia, ja))];
      if (ca.is_zero_to_precision()) continue;
      for (int jb = 0; jb < r.d2; ++jb) {
        for (int ib = 0; ib < r.d1; ++ib) {
          const Series& cb = b.c_[static_cast<std::size_t>(r.index(ib, jb))];
          if (cb.is_zero_to_precision()) continue;
          const int i = ia + ib;
          const int j = ja + jb;
          at(i, j) += Series::mul_truncated(ca, cb, limit(i, j));
        }
      }
    }
  }
  // x2'^p = x2' + f_red.
  for (int j = dj - 1; j >= p; --j) {
    for (int i = 0; i < di; ++i) {
      const Series s = at(i, j);
      if (s.is_zero_to_precision()) continue;
      at(i, j - p + 1) += s.truncated(limit(i, j - p + 1));
      for (int k = 0; k < p; ++k) {
        const Series& f = r.fred[static_cast<std::size_t>(k)];
        if (f.is_exact_zero()) continue;
        at(i + k, j - p) += Series::mul_truncated(s, f, limit(i + k, j - p));
      }
    }
  }
  // x1^p = x1 + t^-h1.
  const int jmax = std::min(dj, r.d2);
  for (int i = di - 1; i >= p; --i) {
    for (int j = 0; j < jmax; ++j) {
      const Series s = at(i, j);
      if (s.is_zero_to_precision()) continue;
      at(i - p + 1, j) += s.truncated(limit(i - p + 1, j));
      at(i - p, j) += s.shifted(-r.h1).truncated(limit(i - p, j));
    }
  }
  std::vector<Series> out(static_cast<std::size_t>(r.n));
  for (int j = 0; j < r.d2; ++j) {
    for (int i = 0; i < r.d1; ++i) out[static_cast<std::size_t>(r.index(i, j))] = std::move(at(i, j));
  }
  return KElem(a.r_, std::move(out), cap);
}

KElem KElem::scaled(const Series& c) const {
  if (c.is_exact_zero()) return zero(r_);
  std::vector<Series> out;
  out.reserve(c_.size());
  for (const auto& s : c_) out.push_back(s * c);
  return KElem(r_, std::move(out), Series::kExact);
}

KElem KElem::scaled(long long c) const {
  if (fp::reduce(c, r_->p) == 0) return zero(r_);
  std::vector<Series> out;
  out.reserve(c_.size());
  for (const auto& s : c_) out.push_back(s.scaled(c));
  return KElem(r_, std::move(out), prec_);
}

KElem KElem::shifted(int k) const {
  std::vector<Series> out;
  out.reserve(c_.size());
  for (const auto& s : c_) out.push_back(s.shifted(k));
  return KElem(r_, std::move(out), clamp_prec(prec_ == Series::kExact
                                                  ? Series::kExact
                                                  : static_cast<long long>(prec_) + static_cast<long long>(r_->n) * k));
}

bool KElem::agrees_with(const KElem& o) const { return (*this - o).is_zero_to_precision(); }

std::string KElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < r_->d2; ++j) {
    for (int i = 0; i < r_->d1; ++i) {
      const Series& s = c_[static_cast<std::size_t>(r_->index(i, j))];
      if (s.is_zero_to_precision()) continue;
      if (!first) os << " + ";
      first = false;
      os << '(' << s.as_exact().to_string() << ')';
      if (i > 0) os << "*x1^" << i;
      if (j > 0) os << "*x2^" << j;
    }
  }
  if (first) os << '0';
  if (!is_exact()) os << " + O(pi^" << prec_ << ')';
  return os.str();
}

KElem combine_exact(const KElem::Ring& r, const std::vector<Series>& coeffs,
                    const std::vector<const KElem*>& basis, int prec) {
  if (coeffs.size() != basis.size()) throw std::invalid_argument("combine_exact: size mismatch");
  const int n = r->n;
  long long big_n = prec;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_exact() || basis[i]->is_exact_zero()) continue;
    big_n = std::min(big_n, static_cast<long long>(n) * coeffs[i].prec() + basis[i]->val());
  }
  const int cap = clamp_prec(big_n);
  std::vector<Series> out(static_cast<std::size_t>(n));
  std::vector<int> lim(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    lim[k] = detail::KRing::coord_prec(cap, r->mono_val[k], n);
    out[k] = lim[k] == Series::kExact ? Series::zero(r->p) : Series::big_o(r->p, lim[k]);
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero_to_precision()) continue;
    for (int k = 0; k < n; ++k) {
      const Series& b = basis[i]->coord(k);
      if (b.is_zero_to_precision()) continue;
      out[k] += Series::mul_truncated(coeffs[i], b, lim[k]);
    }
  }
  return KElem::from_coords(r, std::move(out), cap);
}

// ---------------------------------------------------------------------------
// Artin-Schreier reduction in K1

int k1_valuation(int p, int h1, const std::vector<Series>& f) {
  long long best = kNoVal;
  bool exact = true;
  long long floor_v = kNoVal;
  for (int a = 0; a < static_cast<int>(f.size()); ++a) {
    const Series& c = f[a];
    if (!c.is_exact()) {
      exact = false;
      floor_v = std::min(floor_v, static_cast<long long>(p) * c.prec() - static_cast<long long>(h1) * a);
    }
    if (!c.is_certified_nonzero()) continue;
    best = std::min(best, static_cast<long long>(p) * c.lead_exp() - static_cast<long long>(h1) * a);
  }
  if (best != kNoVal && (exact || best < floor_v)) return static_cast<int>(best);
  if (best == kNoVal && exact) return Series::kInfinite;
  throw PrecisionExhausted("K1-valuation not certified");
}

AsReduction as_reduce(int p, int h1, const std::vector<Series>& f) {
  if (static_cast<int>(f.size()) != p) throw std::invalid_argument("as_reduce: expects p coordinates");
  if (h1 % p == 0) throw std::invalid_argument("as_reduce: p divides h1");
  AsReduction out;
  out.f_red = f;
  const int h1inv = fp::inv(h1 % p, p);
  for (int guard = 0; guard < 100000; ++guard) {
    const int v = k1_valuation(p, h1, out.f_red);
    if (v == Series::kInfinite || v >= 0 || v % p != 0) return out;
    // The leading term sits on x1^0 since p | v.
    const int e = v / p;
    const int c = out.f_red[0].coeff(e);
    const int ap = fp::reduce(-static_cast<long long>(e) * h1inv, p);
    const int bp = static_cast<int>((e + static_cast<long long>(h1) * ap) / p);
    // g^p - g with g^p = c (x1 + t^-h1)^ap t^(p bp).
    std::vector<long long> binom(static_cast<std::size_t>(ap + 1), 1);
    for (int k = 1; k <= ap; ++k) binom[k] = binom[k - 1] * (ap - k + 1) % p * fp::inv(k, p) % p;
    for (int k = 0; k <= ap; ++k) {
      const int texp = p * bp - h1 * (ap - k);
      out.f_red[k] -= Series::monomial(p, c * binom[k], texp);
    }
    out.f_red[ap] += Series::monomial(p, c, bp);
    out.corrections.push_back({c, ap, bp});
  }
  throw std::logic_error("Artin-Schreier reduction did not terminate");
}

bool in_subfield(const Series& c, int m) { return c.in_subfield(m); }

// ---------------------------------------------------------------------------
// FieldTower

struct FieldTower::Impl {
  TowerParams params;
  KElem::Ring ring;
  AsReduction red;
  int what = 0;
  int different = 0;
  int depth = 0;
  std::vector<int> exps;
  std::vector<int> jumps;
  KElem x1, x2, x1inv, corr, pi1, pi, pi_inv;
  std::vector<std::vector<KElem>> img;  // [g][idx]
  std::vector<Series> mono_tr;
  int lo = 0, hi = 0;
  std::vector<KElem> pipow;               // [m - lo]
  std::vector<std::vector<KElem>> gpi;    // [g][m - lo]
  std::vector<int> lc_pi;                 // level coefficient of pi^u at u
  int tau = 1;
  Series c_pi;
  std::vector<std::vector<Series>> beta;  // [idx][u]
  VMatrix gram, gram_inv;
  std::vector<KElem> dual;
  std::vector<std::vector<KElem>> gdual;  // [g][v]

  int n() const { return ring->n; }
  int p() const { return ring->p; }
  GroupElem elem(int g) const { return {g % ring->p, g / ring->p}; }

  KElem galois(int g, const KElem& x) const {
    if (g == 0) return x;
    std::vector<const KElem*> basis;
    basis.reserve(static_cast<std::size_t>(n()));
    for (int idx = 0; idx < n(); ++idx) basis.push_back(&img[g][idx]);
    return combine_exact(ring, x.coords(), basis, x.prec());
  }

  Series trace(const KElem& x) const {
    const int limit = x.is_exact() ? Series::kExact
                                   : clamp_prec(floor_div(static_cast<long long>(x.prec()) + different, n()));
    Series out = limit == Series::kExact ? Series::zero(p()) : Series::big_o(p(), limit);
    for (int idx = 0; idx < n(); ++idx) {
      const Series& c = x.coord(idx);
      if (c.is_zero_to_precision() || mono_tr[idx].is_exact_zero()) continue;
      out += Series::mul_truncated(c, mono_tr[idx], limit);
    }
    return out;
  }

  KElem inverse(const KElem& x) const {
    if (x.is_exact_zero()) throw std::domain_error("inverse of zero");
    KElem y = KElem::one(ring);
    for (int g = 1; g < n(); ++g) y = y * galois(g, x);
    const KElem nx = y * x;
    if (!nx.in_k()) throw std::logic_error("norm is not in the base field");
    const Series& nk = nx.coord(0);
    const Series ninv = nk.is_exact() ? inverse_rel(nk, params.prec) : nk.inverse(0);
    return y.scaled(ninv);
  }

  KElem pi_pow(int m) const {
    if (m >= lo && m <= hi) return pipow[static_cast<std::size_t>(m - lo)];
    if (m > hi) return pi_pow(hi) * pi_pow(m - hi);
    return pi_pow(lo) * pi_pow(m - lo);
  }

  int level_ratio(const KElem& y, int m) const {
    const int u = mod(m, n());
    const long long e = (static_cast<long long>(m) - u) / n();
    const int c = y.level_coeff(m);
    if (c == 0) return 0;
    const int te = fp::pow(tau, e, p());
    return static_cast<int>(static_cast<long long>(c) * te % p() * fp::inv(lc_pi[u], p()) % p());
  }

  std::vector<Series> peel(const KElem& start) const {
    if (start.is_exact()) throw std::logic_error("peeling needs a truncated element");
    std::vector<Series> a(static_cast<std::size_t>(n()), Series::zero(p()));
    KElem y = start;
    const int cap = y.prec();
    for (int u = 0; u < n(); ++u) {
      a[u] = cap == Series::kExact ? Series::zero(p())
                                   : Series::big_o(p(), clamp_prec(ceil_div(static_cast<long long>(cap) - u, n())));
    }
    while (!y.is_zero_to_precision()) {
      const int v = y.val();
      const int u = mod(v, n());
      const int e = static_cast<int>((static_cast<long long>(v) - u) / n());
      const int c = static_cast<int>(static_cast<long long>(y.level_coeff(v)) * fp::inv(lc_pi[u], p()) % p());
      a[u] += Series::monomial(p(), c, e).truncated(a[u].prec());
      y -= pipow[static_cast<std::size_t>(u - lo)].shifted(e).scaled(c);
    }
    return a;
  }
};

namespace {

KElem kpow(const KElem& x, int e) {
  KElem out = KElem::one(x.ring());
  KElem b = x;
  while (e > 0) {
    if (e & 1) out = out * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return out;
}

/// Integer power allowing negative exponents through an exact inverse.
KElem kpow_signed(const KElem& x, const KElem& xinv, int e) {
  return e >= 0 ? kpow(x, e) : kpow(xinv, -e);
}

void validate(const TowerParams& tp) {
  if (tp.p < 2 || tp.p > 251 || !fp::is_prime(tp.p)) throw std::invalid_argument("p must be a prime below 256");
  if (tp.h1 <= 0) throw std::invalid_argument("h1 must be positive");
  if (tp.h1 % tp.p == 0) throw std::invalid_argument("p divides h1");
  if (tp.levels == 2) {
    if (tp.h2 <= tp.h1) throw std::invalid_argument("jumps must satisfy h1 < h2");
    if (tp.h2 % tp.p == 0) throw std::invalid_argument("p divides h2");
  } else if (tp.levels != 1) {
    throw std::invalid_argument("levels must be 1 or 2");
  }
  if (tp.prec < 8) throw std::invalid_argument("precision must be at least 8");
  if (tp.pi_shift1 < 0 || tp.pi_shift2 < 0) throw std::invalid_argument("uniformizer shifts must be >= 0");
  if (tp.subfield_m < 1) throw std::invalid_argument("subfield degree must be positive");
  for (int m = tp.subfield_m; m > 1; m /= tp.p) {
    if (m % tp.p != 0) throw std::invalid_argument("subfield degree must be a power of p");
  }
}

}  // namespace

FieldTower FieldTower::build(int p, int h1, int h2, int prec) {
  TowerParams tp;
  tp.p = p;
  tp.h1 = h1;
  tp.h2 = h2;
  tp.prec = prec;
  return build(tp);
}

FieldTower FieldTower::build_step(int p, int h, int prec) {
  TowerParams tp;
  tp.p = p;
  tp.h1 = h;
  tp.h2 = 0;
  tp.prec = prec;
  tp.levels = 1;
  return build(tp);
}

FieldTower FieldTower::build(const TowerParams& tp) {
  validate(tp);
  auto impl = std::make_shared<Impl>();
  impl->params = tp;
  const int p = tp.p;
  auto ring = std::make_shared<detail::KRing>();
  ring->p = p;
  ring->levels = tp.levels;
  ring->d1 = p;
  ring->d2 = tp.levels == 2 ? p : 1;
  ring->n = ring->d1 * ring->d2;
  ring->h1 = tp.h1;
  ring->e1 = ring->n / p;
  if (tp.levels == 2) {
    std::vector<Series> f(static_cast<std::size_t>(p), Series::zero(p));
    f[0] = Series::monomial(p, 1, -tp.h2);
    impl->red = as_reduce(p, tp.h1, f);
    const int v = k1_valuation(p, tp.h1, impl->red.f_red);
    if (v == Series::kInfinite || v >= 0) throw std::logic_error("reduced Artin-Schreier datum is integral");
    impl->what = -v;
    if (impl->what != p * tp.h2 - (p - 1) * tp.h1) {
      throw std::logic_error("unexpected reduced jump " + std::to_string(impl->what));
    }
    ring->what = impl->what;
    ring->fred = impl->red.f_red;
  } else {
    ring->fred.assign(static_cast<std::size_t>(p), Series::zero(p));
  }
  const int n = ring->n;
  ring->mono_val.resize(static_cast<std::size_t>(n));
  ring->class_idx.assign(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < ring->d2; ++j) {
    for (int i = 0; i < ring->d1; ++i) {
      const int idx = ring->index(i, j);
      ring->mono_val[idx] = ring->formal_val(i, j);
      int& slot = ring->class_idx[static_cast<std::size_t>(mod(ring->mono_val[idx], n))];
      if (slot >= 0) throw std::logic_error("monomial valuations collide modulo n");
      slot = idx;
    }
  }
  impl->ring = ring;
  Impl& I = *impl;
  const Series one = Series::constant(p, 1);

  I.x1 = KElem::monomial(ring, 1, 0, one);
  I.x1inv = (kpow(I.x1, p - 1) - KElem::one(ring)).shifted(tp.h1);
  I.x2 = tp.levels == 2 ? KElem::monomial(ring, 0, 1, one) : KElem::zero(ring);

  auto correction_at = [&](const KElem& base) {
    KElem g = KElem::zero(ring);
    for (const auto& term : I.red.corrections) {
      g += kpow(base, term.a).scaled(Series::monomial(p, term.c, term.b));
    }
    return g;
  };
  I.corr = correction_at(I.x1);

  // Galois images of the monomials.
  I.img.assign(static_cast<std::size_t>(n), {});
  for (int g = 0; g < n; ++g) {
    const GroupElem ge = I.elem(g);
    const KElem X1 = I.x1 + KElem::from_k(ring, Series::constant(p, ge.a));
    KElem X2 = KElem::zero(ring);
    if (tp.levels == 2) {
      X2 = I.x2 + KElem::from_k(ring, Series::constant(p, ge.b)) + I.corr - correction_at(X1);
    }
    auto& row = I.img[g];
    row.resize(static_cast<std::size_t>(n));
    KElem pj = KElem::one(ring);
    for (int j = 0; j < ring->d2; ++j) {
      KElem pij = pj;
      for (int i = 0; i < ring->d1; ++i) {
        row[ring->index(i, j)] = pij;
        pij = pij * X1;
      }
      pj = pj * X2;
    }
  }

  // Uniformizers.
  const int h1inv = fp::inv(tp.h1 % p, p);
  const int a = fp::reduce(-static_cast<long long>(h1inv), p) + p * tp.pi_shift1;
  const int b = (1 + tp.h1 * a) / p;
  I.pi1 = kpow(I.x1, a).shifted(b);
  const KElem pi1inv = kpow(I.x1inv, a).shifted(-b);
  if (tp.levels == 2) {
    const int winv = fp::inv(I.what % p, p);
    const int a2 = fp::reduce(-static_cast<long long>(winv), p) + p * tp.pi_shift2;
    const int b2 = (1 + I.what * a2) / p;
    I.pi = kpow(I.x2, a2) * kpow_signed(I.pi1, pi1inv, b2);
    I.exps = {a, b, a2, b2};
  } else {
    I.pi = I.pi1;
    I.exps = {a, b};
  }
  if (I.pi.val() != 1) throw std::logic_error("uniformizer does not have valuation 1");

  // Jumps, different and depth.
  I.jumps.assign(static_cast<std::size_t>(n), 0);
  I.different = 0;
  for (int g = 1; g < n; ++g) {
    const KElem diff = I.galois(g, I.pi) - I.pi;
    I.jumps[g] = diff.val() - 1;
    I.different += I.jumps[g] + 1;
  }
  I.depth = I.different - n + 1;

  I.mono_tr.resize(static_cast<std::size_t>(n));
  for (int idx = 0; idx < n; ++idx) {
    Series s = Series::zero(p);
    for (int g = 0; g < n; ++g) s += I.img[g][idx].coord(0);
    I.mono_tr[idx] = s;
  }

  I.pi_inv = I.inverse(I.pi);
  I.lo = -(I.depth + 2 * n);
  I.hi = 2 * n;
  I.pipow.resize(static_cast<std::size_t>(I.hi - I.lo + 1));
  I.pipow[static_cast<std::size_t>(-I.lo)] = KElem::one(ring);
  for (int m = 1; m <= I.hi; ++m) {
    I.pipow[static_cast<std::size_t>(m - I.lo)] = I.pipow[static_cast<std::size_t>(m - 1 - I.lo)] * I.pi;
  }
  for (int m = -1; m >= I.lo; --m) {
    I.pipow[static_cast<std::size_t>(m - I.lo)] = I.pipow[static_cast<std::size_t>(m + 1 - I.lo)] * I.pi_inv;
  }
  I.lc_pi.resize(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) I.lc_pi[u] = I.pipow[static_cast<std::size_t>(u - I.lo)].level_coeff(u);
  I.tau = fp::inv(I.pipow[static_cast<std::size_t>(n - I.lo)].level_coeff(n), p);

  I.c_pi = I.trace(I.pipow[static_cast<std::size_t>(-I.depth - I.lo)]);
  if (I.c_pi.val() != 0) throw std::logic_error("Tr(pi^-d) is not a unit");

  I.gpi.assign(static_cast<std::size_t>(n), {});
  for (int g = 0; g < n; ++g) {
    auto& row = I.gpi[g];
    row.reserve(I.pipow.size());
    for (const auto& x : I.pipow) row.push_back(I.galois(g, x));
  }

  const long long kprec = static_cast<long long>(n) * tp.prec;
  I.beta.resize(static_cast<std::size_t>(n));
  for (int idx = 0; idx < n; ++idx) {
    const KElem m = KElem::monomial(ring, idx % ring->d1, idx / ring->d1, one);
    I.beta[idx] = I.peel(m.truncated(clamp_prec(ring->mono_val[idx] + 2 * kprec)));
  }

  I.gram = VMatrix(p, n, n);
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) I.gram.at(v, w) = I.trace(I.pipow[static_cast<std::size_t>(v + w - I.lo)]);
  }
  I.gram_inv = galmod::inverse(I.gram, tp.prec);
  std::vector<const KElem*> pis;
  for (int u = 0; u < n; ++u) pis.push_back(&I.pipow[static_cast<std::size_t>(u - I.lo)]);
  I.dual.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) I.dual.push_back(combine_exact(ring, I.gram_inv.column(v), pis, Series::kExact));
  I.gdual.assign(static_cast<std::size_t>(n), {});
  for (int g = 0; g < n; ++g) {
    for (int v = 0; v < n; ++v) I.gdual[g].push_back(I.galois(g, I.dual[v]));
  }
  return FieldTower(std::move(impl));
}

const TowerParams& FieldTower::params() const { return impl_->params; }
const KElem::Ring& FieldTower::ring() const { return impl_->ring; }
int FieldTower::p() const { return impl_->p(); }
int FieldTower::n() const { return impl_->n(); }
int FieldTower::levels() const { return impl_->params.levels; }
int FieldTower::h1() const { return impl_->params.h1; }
int FieldTower::h2() const { return impl_->params.h2; }
int FieldTower::what() const { return impl_->what; }
int FieldTower::prec() const { return impl_->params.prec; }
int FieldTower::subfield_m() const { return impl_->params.subfield_m; }
int FieldTower::lift_e() const { return impl_->params.lift_e; }
int FieldTower::kprec() const { return impl_->n() * impl_->params.prec; }
int FieldTower::depth() const { return impl_->depth; }
int FieldTower::different() const { return impl_->different; }
std::vector<int> FieldTower::uniformizer_exponents() const { return impl_->exps; }

GroupElem FieldTower::group_elem(int idx) const {
  if (idx < 0 || idx >= n()) throw std::out_of_range("group element index");
  return impl_->elem(idx);
}

int FieldTower::group_index(GroupElem g) const {
  const int p = this->p();
  const int a = mod(g.a, p);
  const int b = mod(g.b, p);
  if (levels() == 1 && b != 0) throw std::invalid_argument("s2 is not defined for a single step");
  return a + p * b;
}

int FieldTower::group_mul(int g, int h) const {
  const int p = this->p();
  return (g % p + h % p) % p + p * ((g / p + h / p) % p);
}

int FieldTower::group_inv(int g) const {
  const int p = this->p();
  return (p - g % p) % p + p * ((p - g / p) % p);
}

KElem FieldTower::zero() const { return KElem::zero(ring()); }
KElem FieldTower::one() const { return KElem::one(ring()); }
KElem FieldTower::from_k(const Series& c) const { return KElem::from_k(ring(), c); }
KElem FieldTower::x1() const { return impl_->x1; }
KElem FieldTower::x2() const { return impl_->x2; }
Series FieldTower::t_pow(int e) const { return Series::monomial(p(), 1, e); }
const KElem& FieldTower::pi() const { return impl_->pi; }
const KElem& FieldTower::pi1() const { return impl_->pi1; }
KElem FieldTower::pi_pow(int m) const { return impl_->pi_pow(m); }
int FieldTower::pi_window_lo() const { return impl_->lo; }
int FieldTower::pi_window_hi() const { return impl_->hi; }
const AsReduction& FieldTower::reduction() const { return impl_->red; }
const KElem& FieldTower::correction_sum() const { return impl_->corr; }

KElem FieldTower::galois(int g, const KElem& x) const { return impl_->galois(g, x); }

KElem FieldTower::galois_pi(int g, int m) const {
  const Impl& I = *impl_;
  if (m >= I.lo && m <= I.hi) return I.gpi[g][static_cast<std::size_t>(m - I.lo)];
  return I.galois(g, I.pi_pow(m));
}

const KElem& FieldTower::galois_monomial(int g, int idx) const { return impl_->img[g][idx]; }

VMatrix FieldTower::galois_matrix(int g) const {
  VMatrix m(p(), n(), n());
  for (int idx = 0; idx < n(); ++idx) m.set_column(idx, impl_->img[g][idx].coords());
  return m;
}

KElem FieldTower::inverse(const KElem& x) const { return impl_->inverse(x); }
Series FieldTower::trace(const KElem& x) const { return impl_->trace(x); }

Series FieldTower::norm(const KElem& x) const {
  KElem y = x;
  for (int g = 1; g < n(); ++g) y = y * galois(g, x);
  if (!y.in_k()) throw std::logic_error("norm is not in the base field");
  return y.coord(0);
}

VMatrix FieldTower::mult_matrix(const KElem& x) const {
  VMatrix m(p(), n(), n());
  const auto& r = *ring();
  for (int idx = 0; idx < n(); ++idx) {
    const KElem col = x * KElem::monomial(ring(), idx % r.d1, idx / r.d1, Series::constant(p(), 1));
    m.set_column(idx, col.coords());
  }
  return m;
}

Series FieldTower::norm_det(const KElem& x) const { return determinant(mult_matrix(x), prec()); }

int FieldTower::valuation_norm(const KElem& x) const {
  if (x.is_exact_zero()) return Series::kInfinite;
  return det_valuation(mult_matrix(x), prec());
}

int FieldTower::valuation_pi_basis(const KElem& x) const {
  if (x.is_exact_zero()) return Series::kInfinite;
  const auto a = to_pi_coords(x);
  long long best = kNoVal;
  for (int u = 0; u < n(); ++u) {
    if (!a[u].is_certified_nonzero()) continue;
    best = std::min(best, static_cast<long long>(n()) * a[u].lead_exp() + u);
  }
  if (best == kNoVal) throw PrecisionExhausted("pi-basis valuation not certified");
  return static_cast<int>(best);
}

std::vector<Series> FieldTower::to_pi_coords(const KElem& x) const {
  const Impl& I = *impl_;
  std::vector<Series> a(static_cast<std::size_t>(n()), Series::zero(p()));
  for (int idx = 0; idx < n(); ++idx) {
    const Series& c = x.coord(idx);
    if (c.is_exact_zero()) continue;
    for (int u = 0; u < n(); ++u) {
      const Series& b = I.beta[idx][u];
      if (b.is_exact_zero()) continue;
      a[u] += c * b;
    }
  }
  return a;
}

KElem FieldTower::from_pi_coords(const std::vector<Series>& a) const {
  const Impl& I = *impl_;
  std::vector<const KElem*> pis;
  for (int u = 0; u < n(); ++u) pis.push_back(&I.pipow[static_cast<std::size_t>(u - I.lo)]);
  return combine_exact(ring(), a, pis, Series::kExact);
}

int FieldTower::residue_ratio(const KElem& y, int m) const {
  if (y.val_lower_bound() < m) throw std::domain_error("residue ratio needs v(y) >= m");
  return impl_->level_ratio(y, m);
}

int FieldTower::residue(const KElem& x) const {
  if (x.val_lower_bound() < 0) throw std::domain_error("residue of a non-integral element");
  const Series tr = trace(x * pi_pow(-depth()));
  return static_cast<int>(static_cast<long long>(tr.coeff(0)) * fp::inv(impl_->c_pi.coeff(0), p()) % p());
}

int FieldTower::residue_direct(const KElem& x) const {
  if (x.val_lower_bound() < 0) throw std::domain_error("residue of a non-integral element");
  return x.coord(0).coeff(0);
}

const Series& FieldTower::c_pi() const { return impl_->c_pi; }
int FieldTower::tau() const { return impl_->tau; }
const VMatrix& FieldTower::gram() const { return impl_->gram; }
const VMatrix& FieldTower::gram_inv() const { return impl_->gram_inv; }
const KElem& FieldTower::dual_pi(int v) const { return impl_->dual[v]; }
const KElem& FieldTower::galois_dual(int g, int v) const { return impl_->gdual[g][v]; }
const Series& FieldTower::monomial_trace(int idx) const { return impl_->mono_tr[idx]; }

FieldTower FieldTower::tame_rebase(int e) const {
  if (e < 1 || e % p() == 0) throw std::invalid_argument("tame degree must be positive and prime to p");
  TowerParams tp = params();
  tp.h1 *= e;
  if (tp.levels == 2) tp.h2 *= e;
  tp.lift_e *= e;
  return build(tp);
}

FieldTower FieldTower::insep_rebase(int m) const {
  TowerParams tp = params();
  tp.subfield_m = m;
  return build(tp);
}

FieldTower FieldTower::with_prec(int prec) const {
  TowerParams tp = params();
  tp.prec = prec;
  return build(tp);
}

FieldTower FieldTower::with_alt_uniformizer(int s1, int s2) const {
  TowerParams tp = params();
  tp.pi_shift1 = s1;
  tp.pi_shift2 = s2;
  return build(tp);
}

KElem FieldTower::embed(const FieldTower& base, const KElem& x) const {
  if (lift_e() % base.lift_e() != 0) throw std::invalid_argument("embed: not a tame lift of the base");
  const int e = lift_e() / base.lift_e();
  if (base.p() != p() || base.levels() != levels() || base.h1() * e != h1() ||
      (levels() == 2 && base.h2() * e != h2())) {
    throw std::invalid_argument("embed: not a tame lift of the base");
  }
  std::vector<Series> c;
  c.reserve(static_cast<std::size_t>(n()));
  for (const auto& s : x.coords()) c.push_back(s.inflate(e));
  return KElem::from_coords(ring(), std::move(c));
}

bool FieldTower::in_subfield(const Series& c) const { return c.in_subfield(subfield_m()); }

nlohmann::json FieldTower::serialize() const {
  const Impl& I = *impl_;
  nlohmann::json j;
  j["p"] = p();
  j["h1"] = h1();
  if (levels() == 2) j["h2"] = h2();
  j["prec"] = prec();
  j["levels"] = levels();
  j["n"] = n();
  j["lift_e"] = lift_e();
  j["subfield_m"] = subfield_m();
  j["pi1"] = {I.exps[0], I.exps[1]};
  if (levels() == 2) {
    j["pi"] = {I.exps[2], I.exps[3]};
    j["what"] = I.what;
    nlohmann::json fr = nlohmann::json::array();
    for (const auto& s : I.red.f_red) fr.push_back(s.to_string());
    j["f_red"] = fr;
    nlohmann::json corr = nlohmann::json::array();
    for (const auto& t : I.red.corrections) corr.push_back({{"c", t.c}, {"a", t.a}, {"b", t.b}});
    j["corrections"] = corr;
  }
  j["different"] = I.different;
  j["depth"] = I.depth;
  j["c_pi"] = I.c_pi.to_string();
  return j;
}

}  // namespace galmod
