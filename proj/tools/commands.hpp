#pragma once

#include <cstdint>
#include <string>

namespace galmod::cli {

enum ExitCode { kOk = 0, kVerdictFail = 1, kUsage = 2, kPrecision = 3 };

struct Options {
  std::string verb;
  int p = 3;
  int h1 = 1;
  int h2 = 0;  ///< 0 selects the single step x^p - x = t^-h1
  int prec = 64;
  int l = 0;
  int i = 0;
  int j = 0;
  int subfield = 1;
  int lift_e = 8;
  int samples = 20;
  std::string suite = "all";
  std::string elem;
  std::string sigmas = "s1";
  std::string format = "json";
  std::uint64_t seed = 1;
  bool literal = false;
};

struct Outcome {
  int code = kOk;
  std::string out;
};

/// GALMOD_PREC when set to a valid integer, 64 otherwise.
int default_prec();

/// One attempt at the given precision; PrecisionExhausted propagates.
Outcome run_once(const Options& opt, int prec);

/// Runs with precision escalation: up to three doublings.
Outcome run(const Options& opt, std::string* err);

}  // namespace galmod::cli
