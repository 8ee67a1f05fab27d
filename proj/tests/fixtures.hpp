#pragma once

#include "galmod/tower.hpp"

namespace galmod::testing {

/// Towers shared across tests; built once per binary.
inline const FieldTower& t312() {
  static const FieldTower t = FieldTower::build(3, 1, 2);
  return t;
}
inline const FieldTower& t213() {
  static const FieldTower t = FieldTower::build(2, 1, 3);
  return t;
}
inline const FieldTower& t314() {
  static const FieldTower t = FieldTower::build(3, 1, 4);
  return t;
}

inline Series poly(int p, std::initializer_list<std::pair<int, long long>> terms) {
  return Series::from_terms(p, std::vector<std::pair<int, long long>>(terms));
}

}  // namespace galmod::testing
