#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "galmod/dvr_lattice.hpp"
#include "galmod/group_algebra.hpp"
#include "galmod/tower.hpp"

namespace galmod {

/// Valuation constraints on the coordinates c_g of f = sum c_g g: row r of
/// map applied to c must have valuation >= exponents[r]. With subfield_m > 1
/// the unknowns and the rows are series in u = t^m.
struct ConstraintSystem {
  VMatrix map;
  std::vector<int> exponents;
  int subfield_m = 1;
};

/// f(pi^s) in m^(s + l) for 0 <= s < n, i.e. membership in A_l.
ConstraintSystem module_constraints(const FieldTower& t, int l, int subfield_m = 1);
/// f(pi^(i + s)) in m^j for 0 <= s < n, i.e. membership in A(i, j).
ConstraintSystem order_constraints(const FieldTower& t, int i, int j, int subfield_m = 1);

Lattice solve_constraints(const FieldTower& t, const ConstraintSystem& cs);
Lattice assoc_module_lattice(const FieldTower& t, int l, int subfield_m = 1);
Lattice assoc_order_lattice(const FieldTower& t, int i, int j, int subfield_m = 1);

/// Lattice coordinates of f in k[G] (series in u = t^m when m > 1).
std::vector<Series> lattice_coords(const AlgebraElem& f, int subfield_m = 1);
AlgebraElem from_lattice_coords(const FieldTower& t, const std::vector<Series>& c, int subfield_m = 1);
/// Lattice spanned by n elements of k[G] (resp. k0[G]).
Lattice span_lattice(const FieldTower& t, const std::vector<AlgebraElem>& gens, int subfield_m = 1);
bool lattice_has(const FieldTower& t, const Lattice& l, const AlgebraElem& f, int subfield_m = 1);

/// Direct checks by evaluation on the powers of pi.
bool in_module_direct(const AlgebraElem& f, int l);
bool in_order_direct(const AlgebraElem& f, int i, int j);

/// {"divisors": [...], "basis": [element strings]}.
nlohmann::json lattice_json(const FieldTower& t, const Lattice& l, int subfield_m = 1);

}  // namespace galmod
