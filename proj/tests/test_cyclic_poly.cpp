#include <gtest/gtest.h>

#include "galmod/cyclic_poly.hpp"
#include "galmod/sampling.hpp"

using namespace galmod;

namespace {

CyclicPoly all_ones(int p, int n) {
  return CyclicPoly(p, n, std::vector<int>(static_cast<std::size_t>(n), 1));
}

CyclicPoly random_cpoly(Rng& rng, int p, int n) {
  std::vector<int> c;
  for (int j = 0; j < n; ++j) c.push_back(rng.fp(p));
  return CyclicPoly(p, n, c);
}

}  // namespace

TEST(CyclicPoly, MonomialWrapsModuloN) {
  EXPECT_EQ(CyclicPoly::monomial(3, 9, 1, 10), CyclicPoly::monomial(3, 9, 1, 1));
  EXPECT_EQ(CyclicPoly::monomial(3, 9, 2, -1), CyclicPoly::monomial(3, 9, 2, 8));
  const auto x = CyclicPoly::monomial(3, 9, 1, 1);
  EXPECT_EQ(x.pow(9), CyclicPoly::one(3, 9));
}

TEST(CyclicPoly, XnMinusOneIsXMinusOneToTheN) {
  const auto xm1 = CyclicPoly::xpow_minus_one(3, 9, 1);
  EXPECT_TRUE(xm1.pow(9).is_zero());
  EXPECT_FALSE(xm1.pow(8).is_zero());
  // (X-1)^(n-1) is the sum of all X^j in characteristic p.
  EXPECT_EQ(xm1.pow(8), all_ones(3, 9));
}

TEST(CyclicPoly, Xm1Val) {
  const auto ones = all_ones(3, 9);
  EXPECT_EQ(xm1_val(ones), 8);
  EXPECT_TRUE((CyclicPoly::xpow_minus_one(3, 9, 1) * ones).is_zero());
  EXPECT_EQ(xm1_val(CyclicPoly::one(3, 9)), 0);
  EXPECT_EQ(xm1_val(CyclicPoly(3, 9)), 9);
}

TEST(CyclicPoly, Xm1ValOfPowersBruteForce) {
  for (int h = 1; h < 9; ++h) {
    if (h % 3 == 0) continue;
    for (int m = 0; m <= 9; ++m) {
      EXPECT_EQ(xm1_val(CyclicPoly::xpow_minus_one(3, 9, h).pow(m)), m) << h << " " << m;
    }
  }
}

TEST(CyclicPoly, Proportional) {
  const CyclicPoly a(3, 9, {2, 0, 2});
  const CyclicPoly b(3, 9, {1, 0, 1});
  EXPECT_EQ(proportional(a, b), 2);
  EXPECT_EQ(proportional(CyclicPoly(3, 9, {1, 1}), b), std::nullopt);
  EXPECT_EQ(proportional(CyclicPoly(3, 9), CyclicPoly::one(3, 9)), std::nullopt);
  EXPECT_EQ(proportional(CyclicPoly(3, 9), CyclicPoly(3, 9)), 1);
}

TEST(CyclicPoly, AtOneAndSubstitution) {
  const CyclicPoly r(3, 9, {1, 2, 0, 1});
  EXPECT_EQ(r.at_one(), 1);
  const auto inv = r.substitute_power(-1);
  EXPECT_EQ(inv[0], 1);
  EXPECT_EQ(inv[8], 2);
  EXPECT_EQ(inv[6], 1);
  EXPECT_EQ(inv.substitute_power(-1), r);
}

TEST(CyclicPoly, RankAndDependency) {
  const auto res = fp_rank({{1, 0, 1}, {2, 0, 2}, {0, 1, 0}}, 3);
  EXPECT_EQ(res.rank, 2);
  ASSERT_EQ(res.dependency.size(), 3u);
  for (int c = 0; c < 3; ++c) {
    const std::vector<std::vector<int>> rows{{1, 0, 1}, {2, 0, 2}, {0, 1, 0}};
    int s = 0;
    for (int r = 0; r < 3; ++r) s += res.dependency[r] * rows[r][c];
    EXPECT_EQ(s % 3, 0);
  }
  EXPECT_EQ(fp_rank({{1, 0}, {0, 1}}, 2).rank, 2);
  EXPECT_TRUE(fp_rank({{1, 0}, {0, 1}}, 2).dependency.empty());
}

// g * w = g(1) * w whenever (X-1) w = 0.
TEST(CyclicPolyProperty, AnnihilatedByXMinusOne) {
  Rng rng(5);
  const auto w = all_ones(3, 9).scaled(2);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_cpoly(rng, 3, 9);
    EXPECT_EQ(g * w, w.scaled(g.at_one()));
  }
}

// X^h - 1 = (X-1) g with g(1) = h.
TEST(CyclicPolyProperty, XhMinusOneFactor) {
  for (int h = 1; h < 9; ++h) {
    CyclicPoly g(3, 9);
    for (int j = 0; j < h; ++j) g.set(j, 1);
    EXPECT_EQ(CyclicPoly::xpow_minus_one(3, 9, 1) * g, CyclicPoly::xpow_minus_one(3, 9, h));
    EXPECT_EQ(g.at_one(), h % 3);
  }
}

TEST(CyclicPolyProperty, RingAxioms) {
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_cpoly(rng, 2, 8), b = random_cpoly(rng, 2, 8), c = random_cpoly(rng, 2, 8);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(xm1_val(a * b), std::min(8, xm1_val(a) + xm1_val(b)));
  }
}
