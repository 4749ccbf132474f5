#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "weyllab/levelset.hpp"

using namespace weyllab;

TEST(RadialGauge, Examples) {
  const Vec e2{0.0, 1.0};
  EXPECT_DOUBLE_EQ(radial_gauge(parse_symbol("poly: x1^2+x2^2"), e2), 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  const Vec diag{r, r};
  EXPECT_NEAR(radial_gauge(parse_symbol("poly: x1^4+x2^4"), diag), std::pow(2.0, 0.25), 1e-14);
  const Vec e1{1.0, 0.0};
  EXPECT_NEAR(radial_gauge(parse_symbol("metric: m=2; q=[[4,0],[0,1]]"), e1), 0.5, 1e-15);
}

TEST(LevelSet, NodesLieOnTheLevelSet) {
  const HomogeneousSymbol sym = parse_symbol("poly: x1^4 + x1^2*x2^2 + 3*x2^4");
  const LevelSetQuad quad = build_quadrature(sym, 512);
  for (const Vec& x : quad.nodes) EXPECT_NEAR(sym.eval(x), 1.0, 1e-13);
}

TEST(LevelSet, CircleTotalIsTwoPi) {
  for (int res : {16, 64, 4096}) {
    EXPECT_NEAR(nu_total(parse_symbol("poly: x1^2+x2^2"), res), 2.0 * kPi, 1e-8) << res;
  }
  for (const char* lit : {"poly: x1^4 + 2*x1^2*x2^2 + x2^4", "metric: m=3; q=[[1,0],[0,1]]"}) {
    EXPECT_NEAR(nu_total(parse_symbol(lit), 256), 2.0 * kPi, 1e-12) << lit;
  }
}

TEST(LevelSet, QuarticTotalMatchesEllipticIntegral) {
  const double oracle = 4.0 * std::comp_ellint_1(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(nu_total(parse_symbol("poly: x1^4+x2^4"), 4096), oracle, 1e-10);
  EXPECT_NEAR(oracle, 7.41630, 1e-5);
}

TEST(LevelSet, SphereAreaInThreeDimensions) {
  EXPECT_NEAR(nu_total(parse_symbol("poly: x1^2+x2^2+x3^2"), 64), 4.0 * kPi, 1e-6);
}

TEST(LevelSet, MetricEllipseArea) {
  // For q = diag(a, b) and m = 2, nu(S*) = n |{sigma <= 1}| = 2 pi / sqrt(ab).
  EXPECT_NEAR(nu_total(parse_symbol("metric: m=2; q=[[4,0],[0,1]]"), 1024), kPi, 1e-10);
}

TEST(LevelSet, OneDimensionalHandCase) {
  const LevelSetQuad quad = build_quadrature(parse_symbol("poly: 4*x1^2"), 8);
  ASSERT_EQ(quad.nodes.size(), 2u);
  EXPECT_DOUBLE_EQ(std::abs(quad.nodes[0][0]), 0.5);
  EXPECT_DOUBLE_EQ(std::abs(quad.nodes[1][0]), 0.5);
  EXPECT_DOUBLE_EQ(quad.weights[0], 0.5);
  EXPECT_DOUBLE_EQ(quad.total(), 1.0);
}

TEST(LevelSet, ResolutionDoublingConverges) {
  const HomogeneousSymbol sym = parse_symbol("poly: x1^4 + x1^3*x2 + 2*x2^4");
  EXPECT_LT(std::abs(nu_total(sym, 4096) - nu_total(sym, 2048)), 1e-8);
}

TEST(LevelSet, Refusals) {
  EXPECT_THROW(build_quadrature(parse_symbol("poly: x1^2+x2^2+x3^2+x4^2"), 64), Error);
  EXPECT_THROW(build_quadrature(parse_symbol("poly: x1^2+x2^2"), 4), Error);
}

TEST(Disintegration, GaussianAndBump) {
  const auto circle = build_quadrature(parse_symbol("poly: x1^2+x2^2"), 256);
  const auto g = verify_disintegration(circle, TestFunction::Gaussian);
  EXPECT_NEAR(g.reference, kPi, 1e-15);
  EXPECT_LE(g.rel_error, 1e-8);
  EXPECT_LE(verify_disintegration(circle, TestFunction::Bump).rel_error, 1e-10);

  const auto quartic = build_quadrature(parse_symbol("poly: x1^4+x2^4"), 4096);
  EXPECT_LE(verify_disintegration(quartic, TestFunction::Gaussian).rel_error, 1e-6);
  EXPECT_LE(verify_disintegration(quartic, TestFunction::Bump).rel_error, 1e-6);

  const auto line = build_quadrature(parse_symbol("poly: 4*x1^2"), 8);
  const auto l = verify_disintegration(line, TestFunction::Gaussian);
  EXPECT_NEAR(l.reference, std::sqrt(kPi), 1e-15);
  EXPECT_LE(l.rel_error, 1e-10);

  const auto ball = build_quadrature(parse_symbol("poly: x1^2+x2^2+x3^2"), 64);
  EXPECT_LE(verify_disintegration(ball, TestFunction::Bump).rel_error, 1e-8);
}

TEST(Disintegration, ExactForRadialTestFunctionsAtAnyResolution) {
  // For radial f the node weight sigma^{-n/m} cancels the radial factor
  // |xi_i|^{-n}, so even a coarse grid reproduces the reference.
  const HomogeneousSymbol sym = parse_symbol("poly: x1^4 + x1^3*x2 + 2*x2^4");
  for (int res : {8, 16, 32}) {
    const LevelSetQuad quad = build_quadrature(sym, res);
    EXPECT_LE(verify_disintegration(quad, TestFunction::Gaussian).rel_error, 1e-13) << res;
    EXPECT_LE(verify_disintegration(quad, TestFunction::Bump).rel_error, 1e-13) << res;
  }
}

TEST(LevelSet, CsvHeaderAndRows) {
  const auto quad = build_quadrature(parse_symbol("poly: x1^2+x2^2"), 8);
  std::ostringstream out;
  quad.write_csv(out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "xi_1,xi_2,weight");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 9);
}

TEST(LevelSet, TestFunctionNames) {
  EXPECT_EQ(parse_test_function("bump"), TestFunction::Bump);
  EXPECT_THROW(parse_test_function("box"), Error);
}
