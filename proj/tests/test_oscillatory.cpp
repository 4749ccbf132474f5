#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "weyllab/oscillatory.hpp"

using namespace weyllab;

namespace {

HomogeneousSymbol circle() { return parse_symbol("poly: x1^2+x2^2"); }
HomogeneousSymbol quartic() { return parse_symbol("poly: x1^4+x2^4"); }

// Power series for the cosine and sine integrals at small x.
double cos_integral(double x) {
  double sum = std::numbers::egamma + std::log(x), term = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= -x * x / ((2.0 * k - 1) * (2.0 * k));
    sum += term / (2.0 * k);
  }
  return sum;
}
double sin_integral(double x) {
  double sum = 0.0, term = x;
  for (int k = 0; k < 40; ++k) {
    sum += term / (2.0 * k + 1);
    term *= -x * x / ((2.0 * k + 2) * (2.0 * k + 3));
  }
  return sum;
}

}  // namespace

TEST(JProbe, BesselOracle) {
  const LevelSetQuad quad = build_quadrature(circle(), 4096);
  const Vec h{0.6, 0.8};
  EXPECT_NEAR(j_probe(quad, h, 10).real(), 2 * kPi * std::cyl_bessel_j(0.0, 10.0), 1e-8);
  EXPECT_NEAR(std::abs(j_probe(quad, h, 100)), 2 * kPi * std::abs(std::cyl_bessel_j(0.0, 100.0)), 1e-8);
  EXPECT_NEAR(std::abs(j_probe(quad, h, 100)), 0.12558, 1e-4);
}

TEST(JProbe, SmallTLimitAndBounds) {
  const LevelSetQuad quad = build_quadrature(quartic(), 4096);
  const Vec h{1.0, 0.0}, minus{-1.0, 0.0};
  EXPECT_NEAR(j_probe(quad, h, 1e-9).real(), quad.total(), 1e-6);
  for (double t : {0.5, 3.0, 40.0}) {
    EXPECT_LE(std::abs(j_probe(quad, h, t)), quad.total() * (1 + 1e-14));
    EXPECT_NEAR(std::abs(j_probe(quad, minus, t) - std::conj(j_probe(quad, h, t))), 0.0, 1e-12);
  }
}

TEST(JProbe, RefusesUnderResolvedQuadrature) {
  const LevelSetQuad quad = build_quadrature(circle(), 64);
  const Vec h{1.0, 0.0};
  try {
    j_probe(quad, h, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnderResolved);
  }
  const Vec zero{0.0, 0.0};
  EXPECT_THROW(j_probe(quad, zero, 1.0), Error);
}

TEST(DecaySlope, CircleAndQuartic) {
  const DecayProbe c = make_probe(circle(), {1.0, 0.0}, 10, 1e3);
  for (const Complex& v : c.values) EXPECT_LE(std::abs(v), c.nu_total * (1 + 1e-14));
  const double cs = decay_slope(c, 2).slope;
  EXPECT_GE(cs, -0.55);
  EXPECT_LE(cs, -0.45);
  const double qs = decay_slope(make_probe(quartic(), {1.0, 0.0}, 10, 1e3), 4).slope;
  EXPECT_GE(qs, -0.30);
  EXPECT_LE(qs, -0.20);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LE(decay_slope(make_probe(quartic(), {r, r}, 10, 1e3), 2).slope, -0.45);
}

TEST(DecaySlope, EnvelopeTimesRateStaysBounded) {
  const DecayProbe p = make_probe(quartic(), {1.0, 0.0}, 10, 1e3);
  const auto [ts, env] = block_envelope(p);
  double lo = 1e300, hi = 0.0;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const double v = env[j] * std::pow(ts[j], 0.25);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_LT(hi / lo, 3.0);
}

TEST(DecaySlope, RejectsDegenerateInput) {
  const DecayProbe narrow = make_probe(circle(), {1.0, 0.0}, 10, 100, 40);
  EXPECT_THROW(decay_slope(narrow, 2), Error);
  const DecayProbe wide = make_probe(circle(), {1.0, 0.0}, 10, 1e3, 40);
  EXPECT_THROW(decay_slope(wide, 2, 4), Error);
  EXPECT_EQ(decay_slope(wide, 2).target, -0.5);
}

TEST(OneDTail, ExponentialIntegralOracle) {
  // int_1^inf e^{i eta}/eta = -Ci(1) + i (pi/2 - Si(1)).
  const TailResult r = one_d_tail(1.0, std::numeric_limits<double>::infinity(), 1.0);
  EXPECT_NEAR(r.value.real(), -cos_integral(1.0), 1e-8);
  EXPECT_NEAR(r.value.imag(), kPi / 2 - sin_integral(1.0), 1e-8);
  // Finite interval: difference of the two tails.
  const TailResult f = one_d_tail(0.5, 2.0, 1.0);
  EXPECT_NEAR(f.value.real(), cos_integral(2.0) - cos_integral(0.5), 1e-10);
  EXPECT_NEAR(f.value.imag(), sin_integral(2.0) - sin_integral(0.5), 1e-10);
}

TEST(OneDTail, BoundRatioStable) {
  const double inf = std::numeric_limits<double>::infinity();
  const double base = one_d_tail(1.0, inf, 1.0).bound_ratio;
  const double far = one_d_tail(10.0, 1e4, 1.0).bound_ratio;
  EXPECT_LT(far, 3.0 * base);
  EXPECT_GT(far, base / 3.0);
  EXPECT_EQ(std::abs(one_d_tail(2.0, 2.0, 1.0).value), 0.0);
  EXPECT_THROW(one_d_tail(0.0, 1.0, 1.0), Error);
}
