#include <gtest/gtest.h>

#include "galmod/assoc_modules.hpp"
#include "galmod/expr_parser.hpp"
#include "galmod/sampling.hpp"
#include "fixtures.hpp"

using namespace galmod;
using galmod::testing::t312;

namespace {

bool same(const AlgebraElem& a, const AlgebraElem& b) {
  for (int g = 0; g < a.size(); ++g) {
    if (!a.coeff(g).agrees_with(b.coeff(g))) return false;
  }
  return true;
}

std::size_t error_offset(const FieldTower& t, const std::string& text) {
  try {
    parse_elem(t, text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

}  // namespace

TEST(Parser, PowerProduct) {
  EXPECT_TRUE(same(parse_elem(t312(), "(s1-e)^2*(s2-e)"), fij(t312(), 2, 1)));
  EXPECT_TRUE(same(parse_elem(t312(), "(s1 - e)^2 * (s2 - e)^2"), fij(t312(), 2, 2)));
}

TEST(Parser, Coefficients) {
  const FieldTower& t = t312();
  const AlgebraElem f = parse_elem(t, "t^-1*(s1-e)");
  EXPECT_TRUE(same(f, fij(t, 1, 0).scaled(t.t_pow(-1))));
  const AlgebraElem g = parse_elem(t, "(1+2*t^3)*s1 - t^-1*e");
  const AlgebraElem expect = AlgebraElem::group(t, 1, galmod::testing::poly(3, {{0, 1}, {3, 2}})) -
                             AlgebraElem::identity(t).scaled(t.t_pow(-1));
  EXPECT_TRUE(same(g, expect));
  // Integer coefficients reduce mod p; a bare coefficient is a multiple of e.
  EXPECT_TRUE(same(parse_elem(t, "4*s2"), AlgebraElem::group(t, 3)));
  EXPECT_TRUE(same(parse_elem(t, "5"), AlgebraElem::identity(t).scaled(Series::constant(3, 2))));
}

TEST(Parser, Precedence) {
  const FieldTower& t = t312();
  EXPECT_TRUE(same(parse_elem(t, "s1*s2^2"), AlgebraElem::group(t, t.group_index(GroupElem{1, 2}))));
  EXPECT_TRUE(same(parse_elem(t, "s1^3"), AlgebraElem::identity(t)));
  EXPECT_TRUE(same(parse_elem(t, "e + s1*s1"), AlgebraElem::identity(t) + AlgebraElem::group(t, 2)));
}

TEST(Parser, Errors) {
  const FieldTower& t = t312();
  EXPECT_EQ(error_offset(t, "(s1"), 3u);
  EXPECT_THROW(parse_elem(t, "(s1"), ParseError);
  EXPECT_EQ(error_offset(t, "s3"), 1u);
  EXPECT_NE(error_offset(t, "s1 +"), std::string::npos);
  EXPECT_NE(error_offset(t, "s1^"), std::string::npos);
  EXPECT_NE(error_offset(galmod::FieldTower::build_step(3, 1), "s2"), std::string::npos);
  try {
    parse_elem(t, "(s1");
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "expected ')' at offset 3");
  }
}

TEST(Parser, Series) {
  EXPECT_EQ(parse_series(3, "t^-2 + 2*t^0"), galmod::testing::poly(3, {{-2, 1}, {0, 2}}));
  EXPECT_EQ(parse_series(3, "1 + t - 4*t^2"), galmod::testing::poly(3, {{0, 1}, {1, 1}, {2, 2}}));
}

TEST(ParserProperty, ToStringRoundTrip) {
  Rng rng(60);
  const FieldTower& t = t312();
  for (int k = 0; k < 30; ++k) {
    const AlgebraElem f = random_kg(rng, t, -2, 2);
    EXPECT_TRUE(same(parse_elem(t, f.to_string()), f)) << f.to_string();
  }
}
