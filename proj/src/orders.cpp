#include "galmod/orders.hpp"

#include <stdexcept>

namespace galmod {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(long long a, long long b) { return static_cast<int>(-floor_div(-a, b)); }

/// Rows (s, idx): coordinate idx of g(pi^(base + s)), target valuation
/// target(s).
template <typename Target>
ConstraintSystem evaluation_constraints(const FieldTower& t, int base, Target target, int m) {
  const int n = t.n();
  const auto& mono = t.ring()->mono_val;
  ConstraintSystem cs;
  cs.subfield_m = 1;
  cs.map = VMatrix(t.p(), n * n, n);
  cs.exponents.resize(static_cast<std::size_t>(n * n));
  for (int s = 0; s < n; ++s) {
    for (int g = 0; g < n; ++g) {
      const KElem y = t.galois_pi(g, base + s);
      for (int idx = 0; idx < n; ++idx) cs.map.at(s * n + idx, g) = y.coord(idx);
    }
    for (int idx = 0; idx < n; ++idx) {
      cs.exponents[static_cast<std::size_t>(s * n + idx)] = ceil_div(static_cast<long long>(target(s)) - mono[idx], n);
    }
  }
  if (m == 1) return cs;
  // Unknowns c_g(u) with u = t^m: split each row by exponent class mod m.
  ConstraintSystem rel;
  rel.subfield_m = m;
  const int rows = cs.map.rows();
  rel.map = VMatrix(t.p(), rows * m, n);
  rel.exponents.resize(static_cast<std::size_t>(rows * m));
  for (int r = 0; r < rows; ++r) {
    for (int g = 0; g < n; ++g) {
      const auto parts = cs.map.at(r, g).split_mod(m);
      for (int rho = 0; rho < m; ++rho) rel.map.at(r * m + rho, g) = parts[rho];
    }
    for (int rho = 0; rho < m; ++rho) {
      rel.exponents[static_cast<std::size_t>(r * m + rho)] = ceil_div(cs.exponents[r] - rho, m);
    }
  }
  return rel;
}

}  // namespace

ConstraintSystem module_constraints(const FieldTower& t, int l, int subfield_m) {
  return evaluation_constraints(t, 0, [l](int s) { return s + l; }, subfield_m);
}

ConstraintSystem order_constraints(const FieldTower& t, int i, int j, int subfield_m) {
  return evaluation_constraints(t, i, [j](int) { return j; }, subfield_m);
}

Lattice solve_constraints(const FieldTower& t, const ConstraintSystem& cs) {
  return solve_congruence_lattice(cs.map, cs.exponents, t.prec());
}

Lattice assoc_module_lattice(const FieldTower& t, int l, int subfield_m) {
  return solve_constraints(t, module_constraints(t, l, subfield_m));
}

Lattice assoc_order_lattice(const FieldTower& t, int i, int j, int subfield_m) {
  return solve_constraints(t, order_constraints(t, i, j, subfield_m));
}

std::vector<Series> lattice_coords(const AlgebraElem& f, int subfield_m) {
  std::vector<Series> c = f.group_coords();
  if (subfield_m == 1) return c;
  for (auto& s : c) {
    if (!s.in_subfield(subfield_m)) throw std::domain_error("coefficient outside the subfield");
    s = s.split_mod(subfield_m)[0];
  }
  return c;
}

AlgebraElem from_lattice_coords(const FieldTower& t, const std::vector<Series>& c, int subfield_m) {
  if (subfield_m == 1) return AlgebraElem::from_group_coords(t, c);
  std::vector<Series> full;
  full.reserve(c.size());
  for (const auto& s : c) full.push_back(s.inflate(subfield_m));
  AlgebraElem f = AlgebraElem::from_group_coords(t, full);
  f.set_subfield_mark(subfield_m);
  return f;
}

Lattice span_lattice(const FieldTower& t, const std::vector<AlgebraElem>& gens, int subfield_m) {
  VMatrix b(t.p(), t.n(), static_cast<int>(gens.size()));
  for (int c = 0; c < static_cast<int>(gens.size()); ++c) b.set_column(c, lattice_coords(gens[c], subfield_m));
  return lattice_from_basis(b, t.prec());
}

bool lattice_has(const FieldTower& t, const Lattice& l, const AlgebraElem& f, int subfield_m) {
  return lattice_contains(l, lattice_coords(f, subfield_m), t.prec());
}

namespace {

bool eval_at_least(const KElem& y, int target) {
  if (y.val_lower_bound() >= target) return true;
  return y.val() >= target;  // throws when the valuation is not certified
}

}  // namespace

bool in_module_direct(const AlgebraElem& f, int l) {
  for (int s = 0; s < f.tower().n(); ++s) {
    if (!eval_at_least(f.act_pi(s), s + l)) return false;
  }
  return true;
}

bool in_order_direct(const AlgebraElem& f, int i, int j) {
  for (int s = 0; s < f.tower().n(); ++s) {
    if (!eval_at_least(f.act_pi(i + s), j)) return false;
  }
  return true;
}

nlohmann::json lattice_json(const FieldTower& t, const Lattice& lat, int subfield_m) {
  const Lattice l = hermite_form(lat, t.prec());
  nlohmann::json j;
  j["divisors"] = l.divisors;
  nlohmann::json b = nlohmann::json::array();
  for (int c = 0; c < l.basis.cols(); ++c) {
    b.push_back(from_lattice_coords(t, l.basis.column(c), subfield_m).to_string());
  }
  j["basis"] = b;
  if (subfield_m > 1) j["subfield"] = subfield_m;
  return j;
}

}  // namespace galmod
