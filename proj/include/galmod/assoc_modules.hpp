#pragma once

#include <map>
#include <string>
#include <vector>

#include "galmod/cyclic_poly.hpp"
#include "galmod/group_algebra.hpp"
#include "galmod/tower.hpp"
#include "galmod/verdict.hpp"

namespace galmod {

/// d(f) = min_{0 <= j < n} (v(f(pi^j)) - j) - d. For k-linear f the minimum
/// over all x in K* is attained on the powers pi^j, j < n: writing
/// x = sum a_j pi^j gives v(x) = min(v(a_j) + j) without cancellation, and
/// v(f(x)) >= min(v(a_j) + v(f(pi^j))).
int deg_d(const AlgebraElem& f);
/// p_i(f) for f in C_i; throws std::domain_error otherwise.
CyclicPoly ppart(const AlgebraElem& f, int i);
CyclicPoly rho(const AlgebraElem& f);

/// (s1 - e)^i (s2 - e)^j.
AlgebraElem fij(const FieldTower& t, int i, int j);
/// h1 i + what j - d for i + j <= p - 1, (p i - (p-1)^2) h1 + p h2 j - d otherwise.
int H_corrected(const FieldTower& t, int i, int j);
/// Same with the second branch printed without -d.
int H_paper(const FieldTower& t, int i, int j);
/// P(i, j) with (X^-h1 - 1)^(n-a-1) for a < p - 1 and the trace product
/// for a >= p - 1.
CyclicPoly P_of(const FieldTower& t, int i, int j);
/// P(i, j) with (X^h1 - 1)^(n-a-1) for a < p - 1.
CyclicPoly P_paper(const FieldTower& t, int i, int j);
/// sum_j prod_{l=1..a} (j - l h) X^j.
CyclicPoly product_sum(int p, int n, int h, int a);

struct GradedSet {
  std::vector<AlgebraElem> elements;
  std::vector<std::string> labels;
  int modulus = 1;
};

struct GradedAnalysis {
  std::vector<int> degrees;
  std::vector<CyclicPoly> rhos;
  std::map<int, std::vector<int>> classes;  ///< residue -> element indices
  std::map<int, int> ranks;                 ///< F_p rank of the rhos per class
  bool independent = true;
  int failing_class = -1;
  std::vector<int> dependency;  ///< coefficients over the failing class
};

GradedAnalysis analyze_graded(const GradedSet& b);
VerdictReport graded_independent(const GradedSet& b);

/// m_b = floor((l - d - d(b) - 1) / M) + 1 with M = modulus.
std::vector<int> basis_exponents(const GradedSet& b, int l);
/// The generators pi_0^{m_b} b (pi_0 = t^(modulus / n)).
std::vector<AlgebraElem> basis_generators(const GradedSet& b, int l);

GradedSet fij_set(const FieldTower& t);

struct TmainOptions {
  int l_lo = -20;
  int l_hi = 40;
  bool compare_lattices = true;
};

VerdictReport verify_tcomp(const FieldTower& t, const std::vector<int>& sigmas);
VerdictReport verify_tmain(const FieldTower& t, const TmainOptions& opt = {});
/// Relative version with k0 = F_p((t^m)).
VerdictReport verify_trel(const FieldTower& t, int m, int l_lo = -10, int l_hi = 10);

/// p-adic valuation of an integer (large for 0).
int vp(long long x, int p);

}  // namespace galmod
