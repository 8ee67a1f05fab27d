#pragma once

#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "galmod/tower.hpp"
#include "galmod/verdict.hpp"

namespace galmod {

struct RamificationReport {
  std::vector<std::pair<GroupElem, int>> jumps;  ///< every g != identity
  int different_val = 0;
  int different_dual = 0;  ///< trace-dual audit value
  int depth = 0;
  int hbar = 0;
  nlohmann::json to_json() const;
};

/// v(g(pi) - pi) - 1.
int jump_of(const FieldTower& t, GroupElem g);
/// Sum over g != 1 of (jump + 1); throws std::logic_error when the
/// trace-dual audit disagrees.
int different_val(const FieldTower& t);
/// Largest m with Tr(pi^(s-m)) integral for all 0 <= s < n.
int different_trace_dual(const FieldTower& t);
RamificationReport ramification_report(const FieldTower& t);
/// All jumps congruent to h1 modulo p.
VerdictReport check_cong(const FieldTower& t);

}  // namespace galmod
