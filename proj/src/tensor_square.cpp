#include "galmod/tensor_square.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "galmod/assoc_modules.hpp"
#include "galmod/sampling.hpp"

namespace galmod {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

int mod(long long a, long long m) { return static_cast<int>(((a % m) + m) % m); }

int fp_pow_signed(int a, long long e, int p) {
  return e >= 0 ? fp::pow(a, e, p) : fp::pow(fp::inv(a, p), -e, p);
}

/// pi-coordinates of pi^w for n <= w <= 2n - 2.
std::vector<std::vector<Series>> high_powers(const FieldTower& t) {
  std::vector<std::vector<Series>> out;
  for (int w = t.n(); w <= 2 * t.n() - 2; ++w) out.push_back(t.to_pi_coords(t.pi_pow(w)));
  return out;
}

}  // namespace

TensorElem::TensorElem(const FieldTower& t)
    : t_(t), n_(t.n()), c_(static_cast<std::size_t>(t.n() * t.n()), Series::zero(t.p())) {}

TensorElem TensorElem::one(const FieldTower& t) { return basis(t, 0, 0, Series::constant(t.p(), 1)); }

TensorElem TensorElem::basis(const FieldTower& t, int u, int v, const Series& c) {
  TensorElem a(t);
  a.at(u, v) = c;
  return a;
}

TensorElem TensorElem::pure(const FieldTower& t, const KElem& x, const KElem& y) {
  const auto a = t.to_pi_coords(x);
  const auto b = t.to_pi_coords(y);
  TensorElem out(t);
  for (int u = 0; u < t.n(); ++u) {
    if (a[u].is_exact_zero()) continue;
    for (int v = 0; v < t.n(); ++v) out.at(u, v) = a[u] * b[v];
  }
  return out;
}

bool TensorElem::is_exact_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Series& s) { return s.is_exact_zero(); });
}

bool TensorElem::is_zero_to_precision() const {
  return std::all_of(c_.begin(), c_.end(), [](const Series& s) { return s.is_zero_to_precision(); });
}

TensorElem TensorElem::swap() const {
  TensorElem out(t_);
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) out.at(v, u) = at(u, v);
  }
  return out;
}

TensorElem TensorElem::operator-() const {
  TensorElem out = *this;
  for (auto& s : out.c_) s = -s;
  return out;
}

TensorElem& TensorElem::operator+=(const TensorElem& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TensorElem& TensorElem::operator-=(const TensorElem& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TensorElem operator*(const TensorElem& a, const TensorElem& b) {
  const FieldTower& t = a.tower();
  const int n = a.n();
  const int w = 2 * n - 1;
  std::vector<Series> m(static_cast<std::size_t>(w * w), Series::zero(t.p()));
  for (int u1 = 0; u1 < n; ++u1) {
    for (int v1 = 0; v1 < n; ++v1) {
      const Series& x = a.at(u1, v1);
      if (x.is_exact_zero()) continue;
      for (int u2 = 0; u2 < n; ++u2) {
        for (int v2 = 0; v2 < n; ++v2) {
          const Series& y = b.at(u2, v2);
          if (y.is_exact_zero()) continue;
          m[static_cast<std::size_t>((u1 + u2) * w + v1 + v2)] += x * y;
        }
      }
    }
  }
  const auto hp = high_powers(t);
  // pi^r (x) . for r >= n, then . (x) pi^c for c >= n.
  for (int r = w - 1; r >= n; --r) {
    for (int c = 0; c < w; ++c) {
      Series& s = m[static_cast<std::size_t>(r * w + c)];
      if (s.is_exact_zero()) continue;
      for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(k * w + c)] += s * hp[r - n][k];
      s = Series::zero(t.p());
    }
  }
  for (int c = w - 1; c >= n; --c) {
    for (int r = 0; r < n; ++r) {
      Series& s = m[static_cast<std::size_t>(r * w + c)];
      if (s.is_exact_zero()) continue;
      for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(r * w + k)] += s * hp[c - n][k];
      s = Series::zero(t.p());
    }
  }
  TensorElem out(t);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) out.at(u, v) = m[static_cast<std::size_t>(u * w + v)];
  }
  return out;
}

TensorElem TensorElem::scaled(const Series& c) const {
  TensorElem out = *this;
  for (auto& s : out.c_) s = s * c;
  return out;
}

bool TensorElem::agrees_with(const TensorElem& o) const {
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!c_[k].agrees_with(o.c_[k])) return false;
  }
  return true;
}

std::string TensorElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      const Series& s = at(u, v);
      if (s.is_exact_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << series_expr(s) << "*pi^" << u << "(x)pi^" << v;
    }
  }
  return first ? "0" : os.str();
}

AlgebraElem phi(const TensorElem& a) {
  const FieldTower& t = a.tower();
  const int n = t.n();
  std::vector<KElem> left;
  for (int v = 0; v < n; ++v) {
    std::vector<Series> col;
    for (int u = 0; u < n; ++u) col.push_back(a.at(u, v));
    left.push_back(t.from_pi_coords(col));
  }
  AlgebraElem f(t);
  for (int g = 0; g < n; ++g) {
    KElem c = t.zero();
    for (int v = 0; v < n; ++v) {
      if (left[v].is_exact_zero()) continue;
      c += left[v] * t.galois_pi(g, v);
    }
    f.set(g, std::move(c));
  }
  return f;
}

TensorElem phi_inv(const AlgebraElem& f) {
  const FieldTower& t = f.tower();
  const int n = t.n();
  TensorElem out(t);
  for (int v = 0; v < n; ++v) {
    KElem y = t.zero();
    for (int g = 0; g < n; ++g) {
      const KElem& a = f.coeff(g);
      if (a.is_exact_zero()) continue;
      const KElem& dual = t.galois_dual(g, v);
      y += a.is_exact() && a.in_k() ? dual.scaled(a.coord(0)) : a * dual;
    }
    const auto col = t.to_pi_coords(y);
    for (int u = 0; u < n; ++u) out.at(u, v) = col[u];
  }
  return out;
}

int xdeg(const TensorElem& a) {
  const int n = a.n();
  long long best = Series::kInfinite;
  long long pending = Series::kInfinite;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const Series& c = a.at(u, v);
      if (c.is_exact_zero()) continue;
      if (c.is_zero_to_precision()) {
        pending = std::min(pending, static_cast<long long>(n) * c.prec() + u + v);
        continue;
      }
      best = std::min(best, static_cast<long long>(n) * c.val() + u + v);
    }
  }
  if (best == Series::kInfinite && pending == Series::kInfinite) throw std::domain_error("xdeg of zero");
  if (pending < best) throw PrecisionExhausted("xdeg not certified at this precision");
  return static_cast<int>(best);
}

CyclicPoly rX(const TensorElem& a, int i) {
  const FieldTower& t = a.tower();
  const int n = a.n();
  const int p = t.p();
  CyclicPoly out(p, n);
  for (int u = 0; u < n; ++u) {
    long long acc = 0;
    for (int v = 0; v < n; ++v) {
      const Series& c = a.at(u, v);
      if (c.is_exact_zero()) continue;
      if (c.is_certified_nonzero() && static_cast<long long>(n) * c.val() + u + v < i) {
        throw std::domain_error("rX: element not in X_" + std::to_string(i));
      }
      const long long rest = static_cast<long long>(i) - u - v;
      if (mod(rest, n) != 0) continue;
      const long long e = rest / n;
      acc += static_cast<long long>(c.coeff(static_cast<int>(e))) * fp_pow_signed(t.tau(), e, p);
    }
    out.set(u, acc);
  }
  return out;
}

ClassPoint ClassPoint::of(int a, int b, int n) { return {mod(a, n), a + b}; }

bool class_leq(const ClassPoint& c1, const ClassPoint& c2, int n) { return mod(c2.r - c1.r, n) <= c2.s - c1.s; }

std::vector<ClassPoint> gamma(const TensorElem& a) {
  const int n = a.n();
  std::vector<ClassPoint> pts;
  std::vector<ClassPoint> bounds;  // lower bounds of uncertified entries
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const Series& c = a.at(u, v);
      if (c.is_exact_zero()) continue;
      if (c.is_zero_to_precision()) {
        bounds.push_back(ClassPoint::of(u + n * c.prec(), v, n));
      } else {
        pts.push_back(ClassPoint::of(u + n * c.val(), v, n));
      }
    }
  }
  if (pts.empty() && bounds.empty()) throw std::domain_error("gamma of zero");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<ClassPoint> out;
  for (const auto& q : pts) {
    bool minimal = true;
    for (const auto& o : pts) {
      if (!(o == q) && class_leq(o, q, n)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(q);
  }
  for (const auto& b : bounds) {
    const bool covered = std::any_of(out.begin(), out.end(), [&](const ClassPoint& q) { return class_leq(q, b, n); });
    if (!covered) throw PrecisionExhausted("gamma not certified at this precision");
  }
  return out;
}

bool is_diagonal(const TensorElem& a) {
  const auto g = gamma(a);
  return std::all_of(g.begin(), g.end(), [&](const ClassPoint& q) { return q.s == g.front().s; });
}

bool ideal_member(const TensorElem& t, int a, int b) {
  const int n = t.n();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const Series& c = t.at(u, v);
      if (c.is_exact_zero()) continue;
      const long long need = ceil_div(static_cast<long long>(a) - u, n) + ceil_div(static_cast<long long>(b) - v, n);
      if (c.val_lower_bound() >= need) continue;
      if (c.is_certified_nonzero()) return false;
      throw PrecisionExhausted("ideal membership not certified at this precision");
    }
  }
  return true;
}

bool ideal_member_gamma(const TensorElem& t, int a, int b) {
  const ClassPoint c = ClassPoint::of(a, b, t.n());
  const auto g = gamma(t);
  return std::all_of(g.begin(), g.end(), [&](const ClassPoint& q) { return class_leq(c, q, t.n()); });
}

bool cij_member(const AlgebraElem& f, int i, int j) {
  const FieldTower& t = f.tower();
  return ideal_member(phi_inv(f), j, -i - t.depth() - t.n() + 1);
}

bool cij_member_literal(const AlgebraElem& f, int i, int j) {
  const FieldTower& t = f.tower();
  return ideal_member(phi_inv(f), j, i - t.depth() - t.n() + 1);
}

VerdictReport verify_tlift(const FieldTower& base, int e, const TliftOptions& opt) {
  if (e < 1 || e % base.p() == 0) throw std::invalid_argument("lift degree must be positive and prime to p");
  VerdictReport rep;
  rep.suite = "tlift";
  rep.seed = opt.seed;
  const FieldTower lift = base.tame_rebase(e);
  const int n = lift.n();
  const int p = lift.p();
  const GradedSet b0 = fij_set(base);
  const GradedSet b = fij_set(lift);
  const GradedAnalysis g0 = analyze_graded(b0);
  const GradedAnalysis g = analyze_graded(b);
  for (std::size_t k = 0; k < b.elements.size(); ++k) {
    rep.add("degree of " + b.labels[k] + " scales by e", g.degrees[k] == e * g0.degrees[k],
            std::to_string(g0.degrees[k]) + " -> " + std::to_string(g.degrees[k]));
  }
  rep.merge(graded_independent(b), "graded ");

  const bool asserted = e >= n - 1;
  if (!asserted) rep.note("e < n - 1: diagonality is observational only");
  Rng rng(opt.seed);
  for (const auto& [cls, members] : g.classes) {
    int diagonal = 0;
    int consistent = 0;
    for (int s = 0; s < opt.samples; ++s) {
      AlgebraElem comb(lift);
      bool any = false;
      while (!any) {
        comb = AlgebraElem(lift);
        for (int k : members) {
          const Series c = random_poly(rng, p, 0, 2);
          if (c.is_exact_zero()) continue;
          any = true;
          comb += b.elements[static_cast<std::size_t>(k)].scaled(c);
        }
      }
      const TensorElem a = phi_inv(comb);
      if (!is_diagonal(a)) continue;
      ++diagonal;
      // For diagonal a, gamma is read off the nonzero coefficients of rX.
      const int i = xdeg(a);
      const CyclicPoly r = rX(a, i);
      std::vector<ClassPoint> from_r;
      for (int l = 0; l < n; ++l) {
        if (r[l] != 0) from_r.push_back(ClassPoint::of(l, i - l, n));
      }
      std::sort(from_r.begin(), from_r.end());
      if (from_r == gamma(a)) ++consistent;
    }
    const std::string name = "class " + std::to_string(cls) + " mod " + std::to_string(n);
    const std::string detail = std::to_string(diagonal) + "/" + std::to_string(opt.samples) + " diagonal";
    if (asserted) {
      rep.add(name + " diagonal", diagonal == opt.samples, detail);
    } else {
      rep.report(name + " diagonal", diagonal == opt.samples, detail);
    }
    rep.add(name + " gamma read from rX", consistent == diagonal,
            std::to_string(consistent) + "/" + std::to_string(diagonal));
  }
  return rep;
}

}  // namespace galmod
