#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "weyllab/numeric.hpp"

using namespace weyllab;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const QuadratureRule rule = gauss_legendre(10);
  // Degree 19 is the highest exact degree for 10 nodes.
  double even = 0.0, odd = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    even += rule.weights[j] * std::pow(rule.nodes[j], 18);
    odd += rule.weights[j] * std::pow(rule.nodes[j], 19);
  }
  EXPECT_NEAR(even, 2.0 / 19.0, 1e-14);
  EXPECT_NEAR(odd, 0.0, 1e-14);
  EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 2.0, 1e-14);
}

TEST(GaussLegendre, CompositePanelsOnSmoothIntegrand) {
  const double v = integrate_panels<double>([](double x) { return std::exp(x); }, 0.0, 3.0, 4);
  EXPECT_NEAR(v, std::exp(3.0) - 1.0, 1e-12);
}

TEST(Summation, PairwiseMatchesCompensatedOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec values(100000);
  for (double& v : values) v = u(rng) * std::pow(10.0, 8 * u(rng));
  CompensatedSum oracle;
  for (double v : values) oracle.add(v);
  const double pairwise = pairwise_sum(std::span<const double>(values));
  EXPECT_NEAR(pairwise, oracle.value(), 1e-9 * std::abs(oracle.value()) + 1e-6);
}

TEST(Summation, ReductionIndependentOfThreadCount) {
  auto term = [](std::size_t i) { return std::sin(0.37 * static_cast<double>(i)) / (1.0 + i); };
  set_thread_count(1);
  const double one = reduce_terms<double>(50001, term);
  set_thread_count(4);
  const double four = reduce_terms<double>(50001, term);
  set_thread_count(0);
  EXPECT_EQ(one, four);  // bitwise
}

TEST(ParallelFor, VisitsEverySlotOnce) {
  set_thread_count(3);
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  set_thread_count(0);
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(FitLine, RecoversExactLine) {
  const Vec x{1, 2, 3, 4};
  const Vec y{3.5, 5.5, 7.5, 9.5};
  const LineFit fit = fit_line(x, y);
  EXPECT_NEAR(fit.slope, 2.0, 1e-14);
  EXPECT_NEAR(fit.intercept, 1.5, 1e-14);
  EXPECT_LT(fit.max_abs_residual, 1e-13);
}

TEST(FitLine, DegenerateAbscissaThrows) {
  const Vec x{1, 1, 1};
  const Vec y{1, 2, 3};
  try {
    fit_line(x, y);
    FAIL() << "expected DegenerateFit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
  }
}

TEST(Lists, GeometricHasExactEndpoints) {
  const Vec v = geometric_list(1e4, 1e8, 8);
  ASSERT_EQ(v.size(), 8u);
  EXPECT_EQ(v.front(), 1e4);
  EXPECT_EQ(v.back(), 1e8);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_NEAR(v[i] / v[i - 1], std::pow(1e4, 1.0 / 7), 1e-12);
}

TEST(Lists, DyadicSpansRequestedRange) {
  const Vec v = dyadic_list(1e3, 1e5);
  EXPECT_EQ(v.front(), 1e3);
  EXPECT_EQ(v.back(), 1e5);
  EXPECT_NEAR(v[1] / v[0], 2.0, 0.1);
}

TEST(Errors, NumericalCodesAreSeparated) {
  EXPECT_TRUE(is_numerical(ErrorCode::UnderResolved));
  EXPECT_TRUE(is_numerical(ErrorCode::NonIntegrable));
  EXPECT_FALSE(is_numerical(ErrorCode::ParseError));
  EXPECT_FALSE(is_numerical(ErrorCode::ZeroArgument));
}
