#include "galmod/verdict.hpp"

#include <algorithm>

namespace galmod {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kHypothesisUnmet:
      return "hypothesis_unmet";
  }
  return "fail";
}

void VerdictReport::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

void VerdictReport::report(std::string name, bool pass, std::string detail) {
  reported.push_back({std::move(name), pass, std::move(detail)});
}

void VerdictReport::merge(const VerdictReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.pass, c.detail});
  for (const auto& c : other.reported) reported.push_back({prefix + c.name, c.pass, c.detail});
  for (const auto& n : other.notes) notes.push_back(prefix + n);
}

bool VerdictReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Verdict VerdictReport::verdict() const {
  if (!all_pass()) return Verdict::kFail;
  return hypothesis_met ? Verdict::kPass : Verdict::kHypothesisUnmet;
}

const Check* VerdictReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

namespace {

nlohmann::json checks_json(const std::vector<Check>& list) {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : list) {
    nlohmann::json cj{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cs.push_back(std::move(cj));
  }
  return cs;
}

}  // namespace

nlohmann::json VerdictReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["verdict"] = to_string(verdict());
  j["hypothesis_met"] = hypothesis_met;
  j["seed"] = seed;
  j["checks"] = checks_json(checks);
  if (!reported.empty()) j["reported"] = checks_json(reported);
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

}  // namespace galmod
