#include "galmod/ramification.hpp"

#include <stdexcept>
#include <string>

namespace galmod {

int jump_of(const FieldTower& t, GroupElem g) {
  if (g.is_identity()) throw std::invalid_argument("jump of the identity");
  const KElem diff = t.galois(g, t.pi()) - t.pi();
  return diff.val() - 1;
}

int different_trace_dual(const FieldTower& t) {
  // Tr(pi^-m O_K) in O_k holds exactly for m <= v(different).
  for (int m = 0;; ++m) {
    for (int s = 0; s < t.n(); ++s) {
      const Series tr = t.trace(t.pi_pow(s - m));
      if (tr.val_lower_bound() < 0) return m - 1;
    }
  }
}

int different_val(const FieldTower& t) {
  int sum = 0;
  for (int g = 1; g < t.n(); ++g) sum += jump_of(t, t.group_elem(g)) + 1;
  const int dual = different_trace_dual(t);
  if (dual != sum) {
    throw std::logic_error("different mismatch: automorphism sum " + std::to_string(sum) +
                           ", trace dual " + std::to_string(dual));
  }
  return sum;
}

RamificationReport ramification_report(const FieldTower& t) {
  RamificationReport r;
  for (int g = 1; g < t.n(); ++g) {
    const GroupElem ge = t.group_elem(g);
    r.jumps.emplace_back(ge, jump_of(t, ge));
  }
  r.different_val = different_val(t);
  r.different_dual = different_trace_dual(t);
  r.depth = r.different_val - t.n() + 1;
  r.hbar = ((t.h1() % t.p()) + t.p()) % t.p();
  return r;
}

nlohmann::json RamificationReport::to_json() const {
  nlohmann::json j;
  nlohmann::json js = nlohmann::json::object();
  for (const auto& [g, h] : jumps) js[g.name()] = h;
  j["jumps"] = js;
  j["different"] = different_val;
  j["different_trace_dual"] = different_dual;
  j["depth"] = depth;
  j["hbar"] = hbar;
  return j;
}

VerdictReport check_cong(const FieldTower& t) {
  VerdictReport rep;
  rep.suite = "cong";
  const int p = t.p();
  const int hbar = t.h1() % p;
  for (int g = 1; g < t.n(); ++g) {
    const GroupElem ge = t.group_elem(g);
    const int h = jump_of(t, ge);
    rep.add("jump " + ge.name() + " = " + std::to_string(h), h % p == hbar,
            "residue " + std::to_string(h % p) + " vs h1 mod p = " + std::to_string(hbar));
  }
  return rep;
}

}  // namespace galmod
