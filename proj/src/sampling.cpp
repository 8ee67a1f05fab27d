#include "galmod/sampling.hpp"

#include <stdexcept>

namespace galmod {

int Rng::uniform(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(static_cast<long long>(hi) - lo) + 1;
  return lo + static_cast<int>(eng_() % range);
}

Series random_poly(Rng& rng, int p, int lo, int hi, int step) {
  std::vector<std::pair<int, long long>> terms;
  int first = lo;
  while (first % step != 0) ++first;
  for (int e = first; e <= hi; e += step) terms.emplace_back(e, rng.fp(p));
  return Series::from_terms(p, terms);
}

Series random_nonzero_poly(Rng& rng, int p, int lo, int hi, int step) {
  for (;;) {
    Series s = random_poly(rng, p, lo, hi, step);
    if (!s.is_exact_zero()) return s;
  }
}

KElem random_kelem(Rng& rng, const FieldTower& t, int lo, int hi) {
  std::vector<Series> c;
  for (int idx = 0; idx < t.n(); ++idx) c.push_back(random_poly(rng, t.p(), lo, hi));
  return KElem::from_coords(t.ring(), std::move(c));
}

KElem random_unit(Rng& rng, const FieldTower& t) {
  // r(x) != 0 and v(x) = 0: a nonzero constant plus a random element of m.
  KElem x = t.from_k(Series::constant(t.p(), rng.fp_nonzero(t.p())));
  for (int u = 1; u < t.n(); ++u) {
    x += t.pi_pow(u).scaled(random_poly(rng, t.p(), 0, 2));
  }
  return x + t.pi_pow(t.n()).scaled(random_poly(rng, t.p(), 0, 2));
}

AlgebraElem random_kg(Rng& rng, const FieldTower& t, int lo, int hi) {
  std::vector<Series> c;
  for (int g = 0; g < t.n(); ++g) c.push_back(random_poly(rng, t.p(), lo, hi));
  return AlgebraElem::from_group_coords(t, c);
}

AlgebraElem random_KG(Rng& rng, const FieldTower& t, int lo, int hi) {
  AlgebraElem f(t);
  for (int g = 0; g < t.n(); ++g) f.set(g, random_kelem(rng, t, lo, hi));
  return f;
}

TensorElem random_tensor(Rng& rng, const FieldTower& t, int lo, int hi) {
  TensorElem a(t);
  for (int u = 0; u < t.n(); ++u) {
    for (int v = 0; v < t.n(); ++v) a.at(u, v) = random_poly(rng, t.p(), lo, hi);
  }
  return a;
}

TensorElem random_x0_tensor(Rng& rng, const FieldTower& t, int span) {
  const int n = t.n();
  TensorElem a(t);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const int lo = -((u + v) / n);
      a.at(u, v) = random_poly(rng, t.p(), lo, lo + span);
    }
  }
  return a;
}

AlgebraElem random_lattice_point(Rng& rng, const FieldTower& t, const Lattice& l, int span, bool perturb,
                                 int shift) {
  const int n = t.n();
  std::vector<Series> c(static_cast<std::size_t>(n), Series::zero(t.p()));
  for (int k = 0; k < l.basis.cols(); ++k) {
    const Series y = random_poly(rng, t.p(), 0, span);
    if (y.is_exact_zero()) continue;
    for (int r = 0; r < n; ++r) c[r] += y * l.basis.at(r, k);
  }
  if (perturb) {
    const int g = rng.uniform(0, n - 1);
    c[g] += Series::monomial(t.p(), rng.fp_nonzero(t.p()), shift);
  }
  return AlgebraElem::from_group_coords(t, c);
}

}  // namespace galmod
