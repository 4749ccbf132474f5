#include <cmath>

#include <gtest/gtest.h>

#include "weyllab/admissibility.hpp"

using namespace weyllab;

namespace {
HomogeneousSymbol circle() { return parse_symbol("poly: x1^2+x2^2"); }
HomogeneousSymbol quartic() { return parse_symbol("poly: x1^4+x2^4"); }
}  // namespace

TEST(CConstant, Examples) {
  EXPECT_DOUBLE_EQ(c_constant(2, 2), 0.5);
  EXPECT_DOUBLE_EQ(c_constant(4, 3), 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(c_constant(4, 4), 3.0 / 32.0);
}

TEST(Residual, HandComputedValues) {
  const Vec e1{1.0, 0.0};
  EXPECT_NEAR(admissibility_residual(circle(), e1, 2), 2.0 / (2.0 * std::sqrt(2.0) + 2.0), 1e-14);
  EXPECT_NEAR(admissibility_residual(quartic(), e1, 2), 0.0, 1e-15);
  EXPECT_NEAR(admissibility_residual(quartic(), e1, 3), 0.0, 1e-15);
  EXPECT_GT(admissibility_residual(quartic(), e1, 4), 0.1);
}

TEST(Residual, BoundedAndHomogeneityInvariant) {
  const HomogeneousSymbol sym = parse_symbol("metric: m=3; q=[[2,0.4],[0.4,1]]");
  const Vec xi{0.3, -0.9};
  Vec scaled{0.3 * 2.5, -0.9 * 2.5};
  for (int k = 2; k <= 4; ++k) {
    const double r = admissibility_residual(sym, xi, k);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
    EXPECT_NEAR(admissibility_residual(sym, scaled, k), r, 1e-12);
  }
}

TEST(Residual, OrderOutsideSupportedRange) {
  const Vec e1{1.0, 0.0};
  for (int k : {1, 3}) {
    try {
      admissibility_residual(circle(), e1, k);
      FAIL() << k;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnsupportedOrder);
    }
  }
}

TEST(CheckAdmissible, CircleWitnessEverywhere) {
  const AdmissibilityReport r = check_admissible(circle(), 2, 128);
  EXPECT_TRUE(r.admissible_on_grid());
  EXPECT_EQ(r.uniform_witness(), 2);
  EXPECT_GE(r.min_max_residual, 0.4);
}

TEST(CheckAdmissible, QuarticNeedsOrderFourAtAxes) {
  const AdmissibilityReport r4 = check_admissible(quartic(), 4, 256);
  EXPECT_TRUE(r4.admissible_on_grid());
  EXPECT_EQ(r4.uniform_witness(), 4);
  for (const auto& d : r4.per_direction) {
    const bool axis = std::abs(d.direction[0]) < 1e-12 || std::abs(d.direction[1]) < 1e-12;
    EXPECT_EQ(*d.witness, axis ? 4 : 2);
  }
  const AdmissibilityReport r3 = check_admissible(quartic(), 3, 256);
  EXPECT_FALSE(r3.admissible_on_grid());
  EXPECT_FALSE(r3.uniform_witness().has_value());
}

TEST(CheckAdmissible, ThreeDimensionsAndRefusals) {
  const AdmissibilityReport r = check_admissible(parse_symbol("poly: x1^2+x2^2+x3^2"), 2, 64);
  EXPECT_TRUE(r.admissible_on_grid());
  EXPECT_THROW(check_admissible(circle(), 2, 32), Error);
  EXPECT_THROW(check_admissible(circle(), 3, 64), Error);
}
