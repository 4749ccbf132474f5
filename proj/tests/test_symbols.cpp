#include <cmath>

#include <gtest/gtest.h>

#include "weyllab/symbols.hpp"

using namespace weyllab;

namespace {

HomogeneousSymbol circle() { return parse_symbol("poly: x1^2 + x2^2"); }
HomogeneousSymbol quartic() { return parse_symbol("poly: x1^4 + x2^4"); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ZeroArgument;
}

// Central difference of the (k-1)-th derivative tensor along e_j.
SymTensor finite_difference(const HomogeneousSymbol& sym, const Vec& xi, int k, int j, double step) {
  Vec plus(xi), minus(xi);
  plus[j] += step;
  minus[j] -= step;
  SymTensor d = sym.deriv_tensor(plus, k - 1) - sym.deriv_tensor(minus, k - 1);
  d *= 1.0 / (2.0 * step);
  return d;
}

}  // namespace

TEST(Symbol, EvaluationExamples) {
  const Vec a{3.0, 4.0}, b{1.0, 1.0}, c{2.0, 0.0};
  EXPECT_DOUBLE_EQ(circle().eval(a), 25.0);
  EXPECT_DOUBLE_EQ(quartic().eval(b), 2.0);
  EXPECT_DOUBLE_EQ(circle().eval(c), 4.0);
}

TEST(Symbol, ZeroArgumentRejected) {
  const Vec zero{0.0, 0.0};
  EXPECT_EQ(code_of([&] { circle().eval(zero); }), ErrorCode::ZeroArgument);
  const Vec wrong{1.0};
  EXPECT_EQ(code_of([&] { circle().eval(wrong); }), ErrorCode::DimensionMismatch);
}

TEST(Symbol, DerivativeExamples) {
  const Vec any{0.3, -1.7};
  const SymTensor hess = circle().deriv_tensor(any, 2);
  EXPECT_DOUBLE_EQ(hess({0, 0}), 2.0);
  EXPECT_DOUBLE_EQ(hess({1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(hess({0, 1}), 0.0);

  const Vec e1{1.0, 0.0};
  const Vec g = quartic().gradient(e1);
  EXPECT_DOUBLE_EQ(g[0], 4.0);
  EXPECT_DOUBLE_EQ(g[1], 0.0);

  const SymTensor d4 = quartic().deriv_tensor(e1, 4);
  EXPECT_DOUBLE_EQ(d4({0, 0, 0, 0}), 24.0);
  EXPECT_DOUBLE_EQ(d4({1, 1, 1, 1}), 24.0);
  EXPECT_DOUBLE_EQ(d4({0, 0, 1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(d4({0, 1, 1, 1}), 0.0);
}

TEST(Symbol, DerivativesMatchFiniteDifferences) {
  const HomogeneousSymbol syms[] = {
      quartic(), parse_symbol("poly: x1^4 + 2*x1^2*x2^2 + 3*x2^4 + x1^3*x2"),
      parse_symbol("metric: m=1; q=[[1,0],[0,2]]"), parse_symbol("metric: m=3; q=[[2,0.5,0],[0.5,1,0],[0,0,1.5]]")};
  for (const auto& sym : syms) {
    Vec xi(sym.dim());
    for (int i = 0; i < sym.dim(); ++i) xi[i] = 0.7 - 0.45 * i;
    for (int k = 1; k <= 4; ++k) {
      const SymTensor exact = sym.deriv_tensor(xi, k);
      for (int j = 0; j < sym.dim(); ++j) {
        const SymTensor fd = finite_difference(sym, xi, k, j, 1e-5);
        for (const auto& idx : sorted_multi_indices(sym.dim(), k - 1)) {
          MultiIndex full(idx);
          full.push_back(j);
          EXPECT_NEAR(exact(full), fd(idx), 1e-6 * (1.0 + std::abs(exact(full))))
              << sym.literal() << " k=" << k;
        }
      }
    }
  }
}

TEST(Symbol, EulerIdentity) {
  const auto grid = sphere_quadrature(2, 64).directions;
  EXPECT_LE(euler_check(circle(), grid), 1e-12);
  EXPECT_LE(euler_check(quartic(), grid), 1e-12);
  EXPECT_LE(euler_check(parse_symbol("metric: m=1; q=[[1,0],[0,2]]"), grid), 1e-10);
}

TEST(Symbol, MetricClosedFormGradient) {
  // sigma = sqrt(x1^2 + 2 x2^2), grad = (x1, 2 x2) / sigma.
  const HomogeneousSymbol sym = parse_symbol("metric: m=1; q=[[1,0],[0,2]]");
  const Vec xi{0.6, -0.8};
  const double s = std::sqrt(0.36 + 2 * 0.64);
  const Vec g = sym.gradient(xi);
  EXPECT_NEAR(g[0], 0.6 / s, 1e-14);
  EXPECT_NEAR(g[1], -1.6 / s, 1e-14);
  EXPECT_EQ(code_of([&] { sym.deriv_tensor(xi, 5); }), ErrorCode::UnsupportedOrder);
}

TEST(Symbol, Homogeneity) {
  const HomogeneousSymbol sym = parse_symbol("poly: x1^4 + x1*x2^3 + 2*x2^4");
  const Vec xi{0.3, 0.9};
  Vec scaled{0.3 * 1.7, 0.9 * 1.7};
  EXPECT_NEAR(sym.eval(scaled), std::pow(1.7, 4) * sym.eval(xi), 1e-12);
}

TEST(Parse, MixedDegreeNamesTheTerm) {
  try {
    parse_symbol("poly: x1^2+x2^3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_STREQ(e.what(), "symbol: mixed-degree monomial at term 2");
  }
}

TEST(Parse, RejectsMalformedAndNonPositive) {
  EXPECT_EQ(code_of([] { parse_symbol("x1^2"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_symbol("poly: x1^2 +"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_symbol("metric: m=2; q=[[1,2],[2,1]]"); }), ErrorCode::InvalidSymbol);
  EXPECT_EQ(code_of([] { parse_symbol("metric: m=2; q=[[1,0],[1,1]]"); }), ErrorCode::InvalidSymbol);
  EXPECT_EQ(code_of([] { parse_symbol("poly: x1^2 - x2^2"); }), ErrorCode::InvalidSymbol);
  EXPECT_EQ(code_of([] { parse_symbol("poly: x1*x2"); }), ErrorCode::InvalidSymbol);
}

TEST(Parse, LiteralRoundTrip) {
  const char* literals[] = {"poly: x1^4 + 2*x1^2*x2^2 + 0.5*x2^4", "poly: 4*x1^2",
                            "metric: m=3; q=[[2,0.25],[0.25,1]]"};
  for (const char* lit : literals) {
    const HomogeneousSymbol a = parse_symbol(lit);
    const HomogeneousSymbol b = parse_symbol(a.literal());
    EXPECT_EQ(a.literal(), b.literal());
    const Vec xi(a.dim(), 0.7);
    EXPECT_DOUBLE_EQ(a.eval(xi), b.eval(xi));
  }
}

TEST(Parse, DuplicateMonomialsMerge) {
  const HomogeneousSymbol sym = parse_symbol("poly: x1^2 + x2^2 + x1^2");
  const Vec xi{1.0, 1.0};
  EXPECT_DOUBLE_EQ(sym.eval(xi), 3.0);
}
