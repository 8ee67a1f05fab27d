#include "galmod/group_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace galmod {

AlgebraElem::AlgebraElem(const FieldTower& t)
    : t_(t), c_(static_cast<std::size_t>(t.n()), t.zero()) {}

AlgebraElem AlgebraElem::identity(const FieldTower& t) { return group(t, 0); }

AlgebraElem AlgebraElem::group(const FieldTower& t, int g, const Series& c) {
  AlgebraElem f(t);
  f.c_[static_cast<std::size_t>(g)] = t.from_k(c);
  return f;
}

AlgebraElem AlgebraElem::group(const FieldTower& t, int g) {
  return group(t, g, Series::constant(t.p(), 1));
}

AlgebraElem AlgebraElem::trace_elem(const FieldTower& t) {
  AlgebraElem f(t);
  for (int g = 0; g < t.n(); ++g) f.c_[static_cast<std::size_t>(g)] = t.one();
  return f;
}

AlgebraElem AlgebraElem::from_group_coords(const FieldTower& t, const std::vector<Series>& c) {
  if (static_cast<int>(c.size()) != t.n()) throw std::invalid_argument("group coordinate count");
  AlgebraElem f(t);
  for (int g = 0; g < t.n(); ++g) f.c_[static_cast<std::size_t>(g)] = t.from_k(c[g]);
  return f;
}

bool AlgebraElem::is_exact_zero() const {
  for (const auto& c : c_) {
    if (!c.is_exact_zero()) return false;
  }
  return true;
}

bool AlgebraElem::is_zero_to_precision() const {
  for (const auto& c : c_) {
    if (!c.is_zero_to_precision()) return false;
  }
  return true;
}

bool AlgebraElem::in_k() const {
  for (const auto& c : c_) {
    if (!c.in_k()) return false;
  }
  return true;
}

bool AlgebraElem::in_subfield(int m) const {
  for (const auto& c : c_) {
    if (!c.in_k() || !c.coord(0).in_subfield(m)) return false;
  }
  return true;
}

std::vector<Series> AlgebraElem::group_coords() const {
  std::vector<Series> out;
  out.reserve(c_.size());
  for (const auto& c : c_) {
    if (!c.in_k()) throw std::domain_error("coefficient outside the base field");
    out.push_back(c.coord(0));
  }
  return out;
}

void AlgebraElem::set_subfield_mark(int m) {
  if (!in_subfield(m)) throw std::invalid_argument("coefficients are not in F_p((t^" + std::to_string(m) + "))");
  mark_ = m;
}

AlgebraElem AlgebraElem::operator-() const {
  AlgebraElem f = *this;
  for (auto& c : f.c_) c = -c;
  return f;
}

AlgebraElem& AlgebraElem::operator+=(const AlgebraElem& o) {
  for (std::size_t g = 0; g < c_.size(); ++g) c_[g] += o.c_[g];
  if (mark_ != o.mark_) mark_.reset();
  return *this;
}

AlgebraElem& AlgebraElem::operator-=(const AlgebraElem& o) { return *this += -o; }

AlgebraElem operator*(const AlgebraElem& f, const AlgebraElem& h) {
  const FieldTower& t = f.t_;
  AlgebraElem out(t);
  for (int g = 0; g < t.n(); ++g) {
    const KElem& a = f.c_[static_cast<std::size_t>(g)];
    if (a.is_exact_zero()) continue;
    for (int k = 0; k < t.n(); ++k) {
      const KElem& b = h.c_[static_cast<std::size_t>(k)];
      if (b.is_exact_zero()) continue;
      const KElem gb = b.in_k() ? b : t.galois(g, b);
      const int gk = t.group_mul(g, k);
      if (a.is_exact() && a.in_k()) {
        out.c_[static_cast<std::size_t>(gk)] += gb.scaled(a.coord(0));
      } else {
        out.c_[static_cast<std::size_t>(gk)] += a * gb;
      }
    }
  }
  if (f.mark_ && f.mark_ == h.mark_) out.mark_ = f.mark_;
  return out;
}

AlgebraElem AlgebraElem::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power in K[G]");
  AlgebraElem out = identity(t_);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

AlgebraElem AlgebraElem::scaled(const Series& c) const {
  AlgebraElem f = *this;
  for (auto& x : f.c_) x = x.scaled(c);
  if (mark_ && !c.in_subfield(*mark_)) f.mark_.reset();
  return f;
}

AlgebraElem AlgebraElem::scaled(const KElem& x) const {
  AlgebraElem f = *this;
  for (auto& c : f.c_) c = x * c;
  f.mark_.reset();
  return f;
}

KElem AlgebraElem::act(const KElem& x) const {
  KElem out = t_.zero();
  for (int g = 0; g < t_.n(); ++g) {
    const KElem& a = c_[static_cast<std::size_t>(g)];
    if (a.is_exact_zero()) continue;
    const KElem gx = t_.galois(g, x);
    out += a.is_exact() && a.in_k() ? gx.scaled(a.coord(0)) : a * gx;
  }
  return out;
}

KElem AlgebraElem::act_pi(int m) const {
  KElem out = t_.zero();
  for (int g = 0; g < t_.n(); ++g) {
    const KElem& a = c_[static_cast<std::size_t>(g)];
    if (a.is_exact_zero()) continue;
    const KElem gx = t_.galois_pi(g, m);
    out += a.is_exact() && a.in_k() ? gx.scaled(a.coord(0)) : a * gx;
  }
  return out;
}

AlgebraElem star(const AlgebraElem& f, const AlgebraElem& h) {
  const FieldTower& t = f.tower();
  AlgebraElem out(t);
  for (int g = 0; g < t.n(); ++g) {
    const KElem& a = f.coeff(g);
    const KElem& b = h.coeff(g);
    if (a.is_exact_zero() || b.is_exact_zero()) continue;
    out.set(g, a * b);
  }
  return out;
}

std::string series_expr(const Series& s) {
  std::ostringstream os;
  int terms = 0;
  for (std::size_t i = 0; i < s.raw().size(); ++i) {
    const int c = s.raw()[i];
    if (c == 0) continue;
    if (terms++) os << " + ";
    if (c != 1) os << c << '*';
    os << "t^" << s.lead_exp() + static_cast<int>(i);
  }
  if (terms == 0) os << '0';
  if (!s.is_exact()) os << " + O(t^" << s.prec() << ')';
  if (terms > 1 || !s.is_exact()) return "(" + os.str() + ")";
  return os.str();
}

std::string AlgebraElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int g = 0; g < t_.n(); ++g) {
    const KElem& a = c_[static_cast<std::size_t>(g)];
    if (a.is_zero_to_precision()) continue;
    if (!first) os << " + ";
    first = false;
    const std::string gname = t_.group_elem(g).name();
    if (a.in_k()) {
      const Series& s = a.coord(0);
      if (s == Series::constant(t_.p(), 1)) {
        os << gname;
      } else {
        os << series_expr(s) << '*' << gname;
      }
    } else {
      os << '[' << a.to_string() << "]*" << gname;
    }
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace galmod
