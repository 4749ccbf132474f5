#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "weyllab/asymptotics.hpp"
#include "weyllab/error.hpp"
#include "weyllab/levelset.hpp"
#include "weyllab/numeric.hpp"
#include "weyllab/symbols.hpp"

namespace weyllab {

inline constexpr double kSamplingFactor = 16.0;

// Points per envelope block (at least 5).
inline constexpr int kEnvelopeBlock = 10;

/// Smallest resolution satisfying resolution >= 16 t |h| max|xi_i|.
inline int required_resolution(double t, double hnorm, double max_node_norm) {
  return static_cast<int>(std::ceil(kSamplingFactor * t * hnorm * max_node_norm));
}

/// Level-set oscillatory integral with flat phase and P = Id:
///   J(h, t) = sum_i w_i e^{i t <xi_i, h>}.
inline Complex j_probe(const LevelSetQuad& quad, std::span<const double> h, double t) {
  if (!(t > 0.0)) fail(ErrorCode::DomainError, "t must be positive");
  if (static_cast<int>(h.size()) != quad.dim) fail(ErrorCode::DimensionMismatch, "h dimension");
  const double hnorm = norm2(h);
  if (hnorm == 0.0) fail(ErrorCode::ZeroArgument, "h must be nonzero");
  if (quad.dim >= 2) {
    const int needed = required_resolution(t, hnorm, quad.max_node_norm());
    if (quad.resolution < needed) {
      fail(ErrorCode::UnderResolved, "resolution " + std::to_string(quad.resolution) + " below " +
                                         std::to_string(needed) + " required at t=" + std::to_string(t));
    }
  }
  return reduce_terms<Complex>(quad.nodes.size(), [&](std::size_t i) {
    const double p = t * dot(quad.nodes[i], h);
    return quad.weights[i] * Complex(std::cos(p), std::sin(p));
  });
}

/// |J(h, t)| sampled on a geometric t-grid.
struct DecayProbe {
  Vec h;
  Vec t_grid;
  std::vector<Complex> values;
  int resolution = 0;
  double nu_total = 0.0;
};

/// Builds a quadrature fine enough for t_max and samples J on
/// `per_decade` geometric points per decade of [t_min, t_max].
inline DecayProbe make_probe(const HomogeneousSymbol& sym, const Vec& h, double t_min, double t_max,
                             int per_decade = 40) {
  if (!(t_min > 0.0) || !(t_max > t_min)) fail(ErrorCode::DomainError, "need 0 < t_min < t_max");
  const double rmax = std::pow(sym.sphere_min(), -1.0 / sym.degree()) * 1.01;
  int resolution = 4096;
  while (resolution < required_resolution(t_max, norm2(h), rmax)) resolution *= 2;
  const LevelSetQuad quad = build_quadrature(sym, resolution);
  DecayProbe probe;
  probe.h = h;
  probe.resolution = resolution;
  probe.nu_total = quad.total();
  const int count = 1 + static_cast<int>(std::lround(per_decade * std::log10(t_max / t_min)));
  probe.t_grid = geometric_list(t_min, t_max, count);
  probe.values.resize(probe.t_grid.size());
  for (std::size_t j = 0; j < probe.t_grid.size(); ++j) probe.values[j] = j_probe(quad, h, probe.t_grid[j]);
  return probe;
}

/// Running-max envelope over consecutive blocks of the t-grid: one point per
/// block at the block's largest |J|.
inline std::pair<Vec, Vec> block_envelope(const DecayProbe& probe, int block = kEnvelopeBlock) {
  Vec ts, env;
  for (std::size_t lo = 0; lo + block <= probe.t_grid.size(); lo += block) {
    std::size_t best = lo;
    for (std::size_t j = lo; j < lo + block; ++j) {
      if (std::abs(probe.values[j]) > std::abs(probe.values[best])) best = j;
    }
    ts.push_back(probe.t_grid[best]);
    env.push_back(std::abs(probe.values[best]));
  }
  return {ts, env};
}

/// Log-log slope of the block-max envelope of |J(t)|; target is -1/k0.
inline FitReport decay_slope(const DecayProbe& probe, int k0, int block = kEnvelopeBlock) {
  if (probe.t_grid.size() < 2 || probe.t_grid.back() < 100.0 * probe.t_grid.front() * (1.0 - 1e-12)) {
    fail(ErrorCode::DegenerateFit, "decay fit needs a t-grid spanning 2 decades");
  }
  for (std::size_t j = 1; j < probe.t_grid.size(); ++j) {
    if (!(probe.t_grid[j] > probe.t_grid[j - 1])) fail(ErrorCode::DegenerateFit, "t-grid must increase");
  }
  if (block < 5) fail(ErrorCode::DegenerateFit, "envelope blocks need at least 5 points");
  auto [ts, env] = block_envelope(probe, block);
  Vec x, y;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    x.push_back(std::log(ts[j]));
    y.push_back(std::log(env[j]));
  }
  return make_fit("ln t (block-max envelope of |J|)", std::move(x), std::move(y), -1.0 / k0);
}

struct TailResult {
  Complex value;
  double bound_ratio = 0.0;  // |value| * a
};

/// int_a^b e^{i hmag eta} / eta d eta (b may be +inf). Finite part by
/// Gauss-Legendre panels no longer than min(pi/hmag, current eta); beyond
/// B = max(a, 200/hmag) the remainder comes from the asymptotic
/// integration-by-parts series, whose terms shrink like j!/(hmag B)^j.
inline TailResult one_d_tail(double a, double b, double hmag) {
  if (!(a > 0.0) || b < a || !(hmag > 0.0)) fail(ErrorCode::DomainError, "one_d_tail needs 0 < a <= b, hmag > 0");
  TailResult out;
  if (a == b) return out;
  auto integrand = [hmag](double eta) { return Complex(std::cos(hmag * eta), std::sin(hmag * eta)) / eta; };
  const bool infinite = std::isinf(b);
  const double finite_end = infinite ? std::max(a, 200.0 / hmag) : b;
  Complex total{0.0, 0.0};
  double lo = a;
  while (lo < finite_end) {
    const double step = std::min(kPi / hmag, lo);
    const double hi = std::min(finite_end, lo + step);
    total += integrate_panels<Complex>(integrand, lo, hi, 1);
    lo = hi;
  }
  if (infinite) {
    // Repeated integration by parts:
    //   I_p = int_B^inf e^{iwx} x^{-p} = -e^{iwB} B^{-p}/(iw) + (p/(iw)) I_{p+1},
    // so the terms of I_1 obey term_{p+1} = term_p * p/(iwB).
    const Complex iw(0.0, hmag);
    const double big_b = finite_end;
    Complex term = -Complex(std::cos(hmag * big_b), std::sin(hmag * big_b)) / (iw * big_b);
    Complex series = term;
    for (int p = 1; p < 40; ++p) {
      term *= static_cast<double>(p) / (iw * big_b);
      series += term;
      if (std::abs(term) < 1e-18 * std::abs(series)) break;
    }
    total += series;
  }
  out.value = total;
  out.bound_ratio = std::abs(total) * a;
  return out;
}

}  // namespace weyllab
