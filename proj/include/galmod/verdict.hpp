#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace galmod {

enum class Verdict { kPass, kFail, kHypothesisUnmet };

std::string to_string(Verdict v);

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

/// Outcome of a verification suite: individual checks plus free-form notes.
/// A suite whose hypothesis is unmet reports that verdict unless one of the
/// unconditional checks failed.
struct VerdictReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  /// Comparisons that are recorded but do not enter the verdict.
  std::vector<Check> reported;
  bool hypothesis_met = true;
  unsigned long long seed = 0;

  void add(std::string name, bool pass, std::string detail = {});
  void note(std::string text) { notes.push_back(std::move(text)); }
  void report(std::string name, bool pass, std::string detail = {});
  /// Appends the checks of other, prefixing their names.
  void merge(const VerdictReport& other, const std::string& prefix);
  bool all_pass() const;
  Verdict verdict() const;
  const Check* first_failure() const;
  nlohmann::json to_json() const;
};

}  // namespace galmod
