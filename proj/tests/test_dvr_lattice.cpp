#include <gtest/gtest.h>

#include "galmod/dvr_lattice.hpp"
#include "galmod/sampling.hpp"
#include "fixtures.hpp"

using namespace galmod;
using galmod::testing::poly;

namespace {

constexpr int kWork = 64;

Series tpow(int p, int e) { return Series::monomial(p, 1, e); }

VMatrix from_rows(int p, const std::vector<std::vector<Series>>& rows) {
  VMatrix m(p, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

bool matrices_agree(const VMatrix& a, const VMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      if (!a.at(r, c).agrees_with(b.at(r, c))) return false;
    }
  }
  return true;
}

VMatrix random_matrix(Rng& rng, int p, int n, int lo, int hi) {
  VMatrix m(p, n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m.at(r, c) = random_poly(rng, p, lo, hi);
  }
  return m;
}

}  // namespace

TEST(Smith, DiagonalInputIsFixed) {
  VMatrix m(3, 3, 3);
  m.at(0, 0) = tpow(3, 0);
  m.at(1, 1) = tpow(3, 2);
  m.at(2, 2) = tpow(3, 5);
  const SmithForm sf = smith(m, kWork, true);
  EXPECT_EQ(sf.divisors, (std::vector<int>{0, 2, 5}));
  EXPECT_TRUE(matrices_agree(sf.U, VMatrix::identity(3, 3)));
  EXPECT_TRUE(matrices_agree(sf.V, VMatrix::identity(3, 3)));
  EXPECT_TRUE(matrices_agree(sf.S, m));
}

TEST(Smith, TwoByTwoHandElimination) {
  // [[t, 1], [0, t]] ~ diag(1, t^2): det = t^2 and the gcd of entries is 1.
  const VMatrix m = from_rows(2, {{tpow(2, 1), tpow(2, 0)}, {Series::zero(2), tpow(2, 1)}});
  const SmithForm sf = smith(m, kWork, true);
  EXPECT_EQ(sf.divisors, (std::vector<int>{0, 2}));
  EXPECT_TRUE(matrices_agree(sf.U * sf.S * sf.V, m));
}

TEST(Smith, ZeroMatrixHasRankZero) {
  const SmithForm sf = smith(VMatrix(3, 2, 2), kWork);
  EXPECT_EQ(sf.rank, 0);
  EXPECT_TRUE(sf.divisors.empty());
}

TEST(Smith, UncertifiedPivotThrows) {
  VMatrix m(3, 1, 1);
  m.at(0, 0) = Series::big_o(3, 4);
  EXPECT_THROW(smith(m, kWork), PrecisionExhausted);
}

TEST(CongruenceLattice, IdentityMap) {
  const VMatrix id = VMatrix::identity(3, 3);
  const Lattice unit = solve_congruence_lattice(id, {0, 0, 0}, kWork);
  EXPECT_EQ(unit.divisors, (std::vector<int>{0, 0, 0}));
  EXPECT_TRUE(lattices_equal(unit, lattice_from_basis(id, kWork), kWork));
  const Lattice m = solve_congruence_lattice(id, {1, 1, 1}, kWork);
  EXPECT_EQ(m.divisors, (std::vector<int>{1, 1, 1}));
  VMatrix tid = id;
  for (int r = 0; r < 3; ++r) tid.at(r, r) = tpow(3, 1);
  EXPECT_TRUE(lattices_equal(m, lattice_from_basis(tid, kWork), kWork));
}

TEST(CongruenceLattice, Containment) {
  const VMatrix id = VMatrix::identity(3, 2);
  const Lattice l = solve_congruence_lattice(id, {0, 2}, kWork);
  const Lattice h = hermite_form(l, kWork);
  for (int c = 0; c < 2; ++c) {
    const auto col = h.basis.column(c);
    EXPECT_TRUE(lattice_contains(l, col, kWork));
    std::vector<Series> down;
    for (const auto& s : col) down.push_back(s.shifted(-1));
    // The divisor-0 column leaves the lattice when divided by t.
    if (h.basis.at(0, c).is_certified_nonzero() && h.basis.at(0, c).val() == 0) {
      EXPECT_FALSE(lattice_contains(l, down, kWork));
    }
  }
  EXPECT_TRUE(lattice_contains(l, {poly(3, {{0, 1}, {4, 1}}), poly(3, {{2, 2}, {3, 1}})}, kWork));
  EXPECT_FALSE(lattice_contains(l, {poly(3, {{0, 1}}), poly(3, {{1, 1}})}, kWork));
}

TEST(Hermite, CanonicalForm) {
  Rng rng(3);
  const VMatrix m = random_matrix(rng, 3, 4, 0, 3);
  if (det_valuation(m, kWork) == Series::kInfinite) GTEST_SKIP();
  const Lattice l = lattice_from_basis(m, kWork);
  const Lattice h = hermite_form(l, kWork);
  EXPECT_TRUE(lattices_equal(l, h, kWork));
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < 4; ++r) {
      const Series& x = h.basis.at(r, c);
      EXPECT_TRUE(x.is_exact());
      if (r < c) EXPECT_TRUE(x.is_exact_zero());
    }
    EXPECT_EQ(h.basis.at(c, c).raw().size(), 1u);
    EXPECT_EQ(h.basis.at(c, c).leading_coeff(), 1);
  }
  // Any other basis of the same lattice gives the same canonical form.
  VMatrix shuffled = m;
  shuffled.swap_cols(0, 3);
  for (int r = 0; r < 4; ++r) shuffled.at(r, 1) += shuffled.at(r, 2) * poly(3, {{0, 2}, {1, 1}});
  const Lattice h2 = hermite_form(lattice_from_basis(shuffled, kWork), kWork);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) EXPECT_EQ(h.basis.at(r, c), h2.basis.at(r, c)) << r << "," << c;
  }
}

TEST(Determinant, ValuationAndInverse) {
  const VMatrix m = from_rows(3, {{tpow(3, 1), tpow(3, 0)}, {Series::zero(3), tpow(3, 1)}});
  EXPECT_EQ(det_valuation(m, kWork), 2);
  const VMatrix mi = inverse(m, kWork);
  EXPECT_TRUE(matrices_agree(m * mi, VMatrix::identity(3, 2)));
  const auto x = solve(m, {tpow(3, 2), tpow(3, 1)}, kWork);
  EXPECT_TRUE(x[1].agrees_with(tpow(3, 0)));
  EXPECT_TRUE(x[0].agrees_with(poly(3, {{-1, 2}, {1, 1}})));
  VMatrix sing(3, 2, 2);
  sing.at(0, 0) = tpow(3, 0);
  EXPECT_THROW(inverse(sing, kWork), std::domain_error);
}

TEST(Kernels, SerialAndParallelAgree) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    VMatrix a = random_matrix(rng, 5, 12, -2, 3);
    a.at(0, 0) = poly(5, {{-3, 1}});
    VMatrix b = a;
    const Series pinv = inverse_rel(a.at(0, 0), kWork);
    std::vector<Series> qa, qb;
    const int ba = kernels::eliminate_serial(a, 0, 0, pinv, 1, &qa);
    const int bb = kernels::eliminate_parallel(b, 0, 0, pinv, 1, &qb);
    EXPECT_EQ(ba, bb);
    for (int r = 0; r < 12; ++r) {
      EXPECT_TRUE(a.at(r, 0).is_exact_zero() || r == 0);
      for (int c = 0; c < 12; ++c) EXPECT_EQ(a.at(r, c), b.at(r, c));
      EXPECT_EQ(qa[r], qb[r]);
    }
  }
}

TEST(Kernels, SmithIndependentOfKernel) {
  Rng rng(22);
  const VMatrix m = random_matrix(rng, 3, 9, -1, 4);
  const bool saved = parallel_elimination();
  set_parallel_elimination(false);
  const SmithForm s1 = smith(m, kWork);
  set_parallel_elimination(true);
  const SmithForm s2 = smith(m, kWork);
  set_parallel_elimination(saved);
  EXPECT_EQ(s1.divisors, s2.divisors);
  EXPECT_TRUE(matrices_agree(s1.V, s2.V));
}

// U and V are unimodular and M = U S V.
TEST(SmithProperty, Unimodular) {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const VMatrix m = random_matrix(rng, 3, 5, -2, 3);
    const SmithForm sf = smith(m, kWork, true);
    if (sf.rank < 5) continue;
    EXPECT_EQ(det_valuation(sf.U, kWork), 0);
    EXPECT_EQ(det_valuation(sf.V, kWork), 0);
    EXPECT_TRUE(matrices_agree(sf.U * sf.S * sf.V, m));
    EXPECT_TRUE(matrices_agree(sf.V * sf.Vinv, VMatrix::identity(3, 5)));
    EXPECT_TRUE(std::is_sorted(sf.divisors.begin(), sf.divisors.end()));
  }
}

// Solving with the constraints "coordinates in the basis are integral"
// reproduces the lattice.
TEST(LatticeProperty, Idempotence) {
  Rng rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const VMatrix m = random_matrix(rng, 2, 4, -2, 2);
    if (det_valuation(m, kWork) == Series::kInfinite) continue;
    const Lattice l = lattice_from_basis(m, kWork);
    const Lattice again = solve_congruence_lattice(inverse(m, kWork), {0, 0, 0, 0}, kWork);
    EXPECT_EQ(l.divisors, again.divisors);
    EXPECT_TRUE(lattices_equal(l, again, kWork));
    EXPECT_TRUE(lattice_subset(solve_congruence_lattice(inverse(m, kWork), {1, 1, 1, 1}, kWork), l, kWork));
  }
}
