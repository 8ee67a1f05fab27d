#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "galmod/assoc_modules.hpp"
#include "galmod/expr_parser.hpp"
#include "galmod/orders.hpp"
#include "galmod/ramification.hpp"
#include "galmod/tensor_square.hpp"

namespace galmod::cli {

namespace {

using nlohmann::json;

FieldTower make_tower(const Options& opt, int prec) {
  if (opt.h2 == 0) return FieldTower::build_step(opt.p, opt.h1, prec);
  return FieldTower::build(opt.p, opt.h1, opt.h2, prec);
}

void require_two_levels(const FieldTower& t, const std::string& verb) {
  if (t.levels() != 2) throw std::invalid_argument(verb + " needs --h2");
}

int verdict_code(const VerdictReport& r) { return r.verdict() == Verdict::kFail ? kVerdictFail : kOk; }

std::string dump(const json& j, const Options& opt) {
  // Text output falls back to indented JSON for structured results.
  return opt.format == "text" ? j.dump(2) : j.dump();
}

std::string report_text(const VerdictReport& r) {
  std::ostringstream os;
  os << r.suite << ": " << to_string(r.verdict()) << "\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& c : r.reported) {
    os << "  [" << (c.pass ? "info" : "diff") << "] " << c.name;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

/// Group indices from a comma separated list of group element names.
std::vector<int> parse_sigmas(const FieldTower& t, const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const AlgebraElem f = parse_elem(t, item);
    int found = -1;
    for (int g = 0; g < t.n(); ++g) {
      if (f.coeff(g).is_exact_zero()) continue;
      if (found >= 0 || !(f.coeff(g).in_k() && f.coeff(g).coord(0) == Series::constant(t.p(), 1))) {
        throw std::invalid_argument("'" + item + "' is not a group element");
      }
      found = g;
    }
    if (found <= 0) throw std::invalid_argument("'" + item + "' is not a non-identity group element");
    out.push_back(found);
  }
  if (out.empty()) throw std::invalid_argument("empty --sigmas");
  return out;
}

VerdictReport ram_suite(const FieldTower& t) {
  VerdictReport rep;
  rep.suite = "ram";
  const RamificationReport rr = ramification_report(t);
  const int p = t.p();
  std::vector<int> want{t.h1()};
  if (t.levels() == 2) want.push_back(t.what());
  for (const auto& [g, h] : rr.jumps) {
    const bool ok = std::find(want.begin(), want.end(), h) != want.end();
    rep.add("jump of " + g.name(), ok, std::to_string(h));
  }
  const int depth = t.levels() == 2 ? (p - 1) * (p * t.h2() + t.h1()) : (p - 1) * t.h1();
  rep.add("depth formula", rr.depth == depth, std::to_string(rr.depth) + " vs " + std::to_string(depth));
  rep.add("different by automorphisms and by trace duality", rr.different_val == rr.different_dual,
          std::to_string(rr.different_val) + " vs " + std::to_string(rr.different_dual));
  rep.merge(check_cong(t), "");
  return rep;
}

VerdictReport suite(const Options& opt, const FieldTower& t, const std::string& name) {
  if (name == "ram") return ram_suite(t);
  if (name == "tcomp") return verify_tcomp(t, parse_sigmas(t, opt.sigmas));
  if (name == "tmain") {
    require_two_levels(t, "tmain");
    return verify_tmain(t);
  }
  if (name == "trel") {
    require_two_levels(t, "trel");
    return verify_trel(t, opt.subfield > 1 ? opt.subfield : t.p());
  }
  if (name == "tlift") {
    require_two_levels(t, "tlift");
    return verify_tlift(t, opt.lift_e, {opt.samples, opt.seed});
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

Outcome verify(const Options& opt, const FieldTower& t) {
  if (opt.suite != "all") {
    VerdictReport r = suite(opt, t, opt.suite);
    r.seed = opt.seed;
    return {verdict_code(r), opt.format == "text" ? report_text(r) : r.to_json().dump()};
  }
  std::vector<std::string> names{"ram", "tcomp"};
  if (t.levels() == 2) {
    names.insert(names.end(), {"tlift", "tmain", "trel"});
  }
  std::sort(names.begin(), names.end());
  std::vector<VerdictReport> reports(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) {
    reports[k] = suite(opt, t, names[k]);
    reports[k].seed = opt.seed;
  }
  bool fail = false;
  json arr = json::array();
  std::string text;
  for (const auto& r : reports) {
    fail = fail || r.verdict() == Verdict::kFail;
    arr.push_back(r.to_json());
    text += report_text(r);
  }
  json j{{"suite", "all"}, {"verdict", fail ? "fail" : "pass"}, {"seed", opt.seed}, {"reports", arr}};
  return {fail ? kVerdictFail : kOk, opt.format == "text" ? text : j.dump()};
}

json dtable(const Options& opt, const FieldTower& t) {
  require_two_levels(t, "dtable");
  json rows = json::array();
  const int p = t.p();
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const AlgebraElem f = fij(t, i, j);
      const int dg = deg_d(f);
      const CyclicPoly r = ppart(f, dg + t.depth());
      const CyclicPoly pc = P_of(t, i, j);
      json row{{"i", i},
               {"j", j},
               {"d_oracle", dg},
               {"H_corrected", H_corrected(t, i, j)},
               {"H_paper", H_paper(t, i, j)},
               {"rho", r.to_string()},
               {"P", pc.to_string()},
               {"proportional", proportional(r, pc).has_value()}};
      if (opt.literal) {
        const CyclicPoly pl = P_paper(t, i, j);
        row["P_paper"] = pl.to_string();
        row["proportional_paper"] = proportional(r, pl).has_value();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string dtable_text(const json& rows) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "i" << std::setw(4) << "j" << std::setw(10) << "d" << std::setw(10) << "H"
     << std::setw(10) << "H_paper" << std::setw(6) << "~P" << "rho\n";
  for (const auto& r : rows) {
    os << std::setw(4) << r["i"].get<int>() << std::setw(4) << r["j"].get<int>() << std::setw(10)
       << r["d_oracle"].get<int>() << std::setw(10) << r["H_corrected"].get<int>() << std::setw(10)
       << r["H_paper"].get<int>() << std::setw(6) << (r["proportional"].get<bool>() ? "yes" : "no")
       << r["rho"].get<std::string>() << "\n";
  }
  return os.str();
}

json jumps(const FieldTower& t) {
  const RamificationReport rr = ramification_report(t);
  json js = json::object();
  for (const auto& [g, h] : rr.jumps) js[g.name()] = h;
  return {{"jumps", js}, {"different", rr.different_val}, {"depth", rr.depth}};
}

Outcome selftest(const Options& opt, int prec) {
  VerdictReport rep;
  rep.suite = "selftest";
  rep.seed = opt.seed;
  const FieldTower a = FieldTower::build(3, 1, 2, prec);
  const FieldTower b = FieldTower::build(2, 1, 3, prec);
  rep.merge(ram_suite(a), "(3,1,2) ");
  rep.merge(ram_suite(b), "(2,1,3) ");
  for (const FieldTower* t : {&a, &b}) {
    const std::string tag = "(" + std::to_string(t->p()) + "," + std::to_string(t->h1()) + "," +
                            std::to_string(t->h2()) + ") ";
    bool table = true;
    for (int i = 0; i < t->p(); ++i) {
      for (int j = 0; j < t->p(); ++j) table = table && deg_d(fij(*t, i, j)) == H_corrected(*t, i, j);
    }
    rep.add(tag + "d(f_ij) = H", table);
  }
  const AlgebraElem f = parse_elem(a, "(s1-e)^2*(s2-e)");
  const AlgebraElem g = fij(a, 2, 1);
  bool same = true;
  for (int k = 0; k < a.n(); ++k) same = same && f.coeff(k).agrees_with(g.coeff(k));
  rep.add("parser builds f21", same);
  bool offset = false;
  try {
    parse_elem(a, "(s1");
  } catch (const ParseError& e) {
    offset = e.offset() == 3;
  }
  rep.add("parse error offset", offset);
  Options o = opt;
  const std::string lo = dtable(o, a).dump();
  const std::string hi = dtable(o, a.with_prec(2 * prec)).dump();
  rep.add("dtable unchanged at doubled precision", lo == hi);
  return {verdict_code(rep), opt.format == "text" ? report_text(rep) : rep.to_json().dump()};
}

}  // namespace

int default_prec() {
  if (const char* env = std::getenv("GALMOD_PREC")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 8 && v <= 1 << 16) return static_cast<int>(v);
  }
  return kDefaultPrec;
}

Outcome run_once(const Options& opt, int prec) {
  if (opt.verb == "selftest") return selftest(opt, prec);
  const FieldTower t = make_tower(opt, prec);
  if (opt.verb == "build") return {kOk, dump(t.serialize(), opt)};
  if (opt.verb == "jumps") {
    const json j = jumps(t);
    if (opt.format != "text") return {kOk, j.dump()};
    std::ostringstream os;
    for (const auto& [k, v] : j["jumps"].items()) os << k << " " << v.get<int>() << "\n";
    os << "different " << j["different"].get<int>() << "\ndepth " << j["depth"].get<int>() << "\n";
    return {kOk, os.str()};
  }
  if (opt.verb == "depth") {
    if (opt.format == "text") return {kOk, std::to_string(t.depth()) + "\n"};
    return {kOk, json{{"depth", t.depth()}}.dump()};
  }
  if (opt.verb == "dtable") {
    const json rows = dtable(opt, t);
    return {kOk, opt.format == "text" ? dtable_text(rows) : rows.dump()};
  }
  if (opt.verb == "basis") {
    return {kOk, dump(lattice_json(t, assoc_module_lattice(t, opt.l, opt.subfield), opt.subfield), opt)};
  }
  if (opt.verb == "order") {
    return {kOk, dump(lattice_json(t, assoc_order_lattice(t, opt.i, opt.j, opt.subfield), opt.subfield), opt)};
  }
  if (opt.verb == "verify") return verify(opt, t);
  if (opt.verb == "gamma") {
    if (opt.elem.empty()) throw std::invalid_argument("gamma needs --elem");
    const AlgebraElem f = parse_elem(t, opt.elem);
    json arr = json::array();
    for (const auto& q : gamma(phi_inv(f))) arr.push_back({q.r, q.s});
    return {kOk, arr.dump()};
  }
  if (opt.verb == "diag") {
    require_two_levels(t, "diag");
    VerdictReport r = verify_tlift(t, opt.lift_e, {opt.samples, opt.seed});
    return {verdict_code(r), opt.format == "text" ? report_text(r) : r.to_json().dump()};
  }
  throw std::invalid_argument("unknown verb '" + opt.verb + "'");
}

Outcome run(const Options& opt, std::string* err) {
  int prec = opt.prec;
  for (int attempt = 0;; ++attempt) {
    try {
      return run_once(opt, prec);
    } catch (const PrecisionExhausted& e) {
      if (attempt == 3) {
        if (err) *err = std::string("precision exhausted at ") + std::to_string(prec) + ": " + e.what();
        return {kPrecision, {}};
      }
      prec *= 2;
    }
  }
}

}  // namespace galmod::cli
