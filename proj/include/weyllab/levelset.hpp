#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "weyllab/error.hpp"
#include "weyllab/numeric.hpp"
#include "weyllab/sphere_grid.hpp"
#include "weyllab/symbols.hpp"

namespace weyllab {

/// Nodes on S* = {sigma = 1} with weights realizing the level-set density
/// nu, i.e. the measure for which
///   int u(xi) dxi = int_0^inf int_{S*} u(t xi) dnu(xi) t^{n-1} dt.
/// In the spherical gauge xi = r(omega) omega, r = sigma(omega)^{-1/m}, the
/// Jacobian r^n gives dnu = sigma(omega)^{-n/m} dS(omega).
struct LevelSetQuad {
  int dim = 0;
  int resolution = 0;
  std::vector<Vec> nodes;
  Vec weights;

  double total() const { return pairwise_sum(std::span<const double>(weights)); }

  double max_node_norm() const {
    double r = 0.0;
    for (const Vec& x : nodes) r = std::max(r, norm2(x));
    return r;
  }

  /// CSV with header xi_1..xi_n,weight; 17 significant digits.
  void write_csv(std::ostream& out) const {
    for (int i = 0; i < dim; ++i) out << "xi_" << i + 1 << ",";
    out << "weight\n";
    char buf[32];
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      for (double v : nodes[j]) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << ",";
      }
      std::snprintf(buf, sizeof buf, "%.17g", weights[j]);
      out << buf << "\n";
    }
  }
};

/// r(omega) = sigma(omega)^{-1/m}; r(omega) omega lies on S*.
inline double radial_gauge(const HomogeneousSymbol& sym, std::span<const double> omega) {
  return std::pow(sym.eval(omega), -1.0 / sym.degree());
}

inline LevelSetQuad build_quadrature(const HomogeneousSymbol& sym, int resolution) {
  const int n = sym.dim();
  if (n > 3) {
    fail(ErrorCode::UnsupportedDimension, "level-set quadrature supports n <= 3, got n=" + std::to_string(n));
  }
  if (resolution < 8) fail(ErrorCode::DomainError, "resolution must be >= 8");
  const SphereGrid sphere = sphere_quadrature(n, resolution);
  LevelSetQuad quad;
  quad.dim = n;
  quad.resolution = resolution;
  quad.nodes.reserve(sphere.directions.size());
  quad.weights.reserve(sphere.directions.size());
  const double m = sym.degree();
  for (std::size_t j = 0; j < sphere.directions.size(); ++j) {
    const Vec& omega = sphere.directions[j];
    const double sigma = sym.eval(omega);
    const double r = std::pow(sigma, -1.0 / m);
    Vec node(omega);
    for (double& v : node) v *= r;
    quad.nodes.push_back(std::move(node));
    quad.weights.push_back(std::pow(sigma, -n / m) * sphere.weights[j]);
  }
  return quad;
}

inline double nu_total(const HomogeneousSymbol& sym, int resolution) {
  return build_quadrature(sym, resolution).total();
}

/// Default resolution used where a module needs nu(S*) without the caller
/// choosing one.
inline int default_resolution(int dim) { return dim == 3 ? 256 : 4096; }

enum class TestFunction { Gaussian, Bump };

inline TestFunction parse_test_function(std::string_view name) {
  if (name == "gaussian") return TestFunction::Gaussian;
  if (name == "bump") return TestFunction::Bump;
  fail(ErrorCode::ParseError, "test: expected 'gaussian' or 'bump', got '" + std::string(name) + "'");
}

struct DisintegrationResult {
  double reference = 0.0;
  double radial = 0.0;
  double rel_error = 0.0;
};

/// Checks the defining identity of nu on a radial test function:
/// gaussian exp(-|xi|^2) (reference pi^{n/2}) or bump (1-|xi|^2)_+^2
/// (reference |S^{n-1}| int_0^1 (1-r^2)^2 r^{n-1} dr).
inline DisintegrationResult verify_disintegration(const LevelSetQuad& quad, TestFunction test) {
  const int n = quad.dim;
  DisintegrationResult out;
  const double sphere_area[] = {0.0, 2.0, kTwoPi, 2.0 * kTwoPi};
  const double bump_radial[] = {0.0, 8.0 / 15.0, 1.0 / 6.0, 8.0 / 105.0};
  if (test == TestFunction::Gaussian) {
    out.reference = std::pow(kPi, 0.5 * n);
    // t-integral of sum_i w_i exp(-t^2 |xi_i|^2) t^{n-1} on [0, 10]; every
    // node has |xi_i| >= r_min, so the tail is below exp(-100 r_min^2).
    Vec norms2;
    for (const Vec& x : quad.nodes) norms2.push_back(dot(x, x));
    const double upper = 10.0;
    out.radial = integrate_panels<double>(
        [&](double t) {
          const double tn = std::pow(t, n - 1);
          return reduce_terms<double>(quad.weights.size(), [&](std::size_t i) {
            return quad.weights[i] * std::exp(-t * t * norms2[i]) * tn;
          });
        },
        0.0, upper, 64);
  } else {
    out.reference = sphere_area[n] * bump_radial[n];
    // Bump vanishes beyond t = 1/|xi_i|; integrate each node over its own
    // support so the kink never falls inside a panel.
    out.radial = reduce_terms<double>(quad.weights.size(), [&](std::size_t i) {
      const double r2 = dot(quad.nodes[i], quad.nodes[i]);
      const double support = 1.0 / std::sqrt(r2);
      return quad.weights[i] * integrate_panels<double>(
                                   [&](double t) {
                                     const double g = 1.0 - t * t * r2;
                                     return g * g * std::pow(t, n - 1);
                                   },
                                   0.0, support, 1);
    });
  }
  out.rel_error = std::abs(out.radial - out.reference) / std::abs(out.reference);
  return out;
}

}  // namespace weyllab
