#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "weyllab/error.hpp"
#include "weyllab/numeric.hpp"

namespace weyllab {

/// Quadrature nodes on the Euclidean unit sphere S^{n-1} with their surface
/// weights.
struct SphereGrid {
  int dim = 0;
  std::vector<Vec> directions;
  Vec weights;
};

/// n = 1: {-1, +1} with counting weights.
/// n = 2: `resolution`-point trapezoid rule in the angle (contains the axes
///        whenever resolution is a multiple of 4).
/// n = 3: Gauss-Legendre in cos(theta) (resolution/2 nodes) times trapezoid
///        in phi (resolution nodes).
inline SphereGrid sphere_quadrature(int dim, int resolution) {
  SphereGrid grid;
  grid.dim = dim;
  switch (dim) {
    case 1:
      grid.directions = {{-1.0}, {1.0}};
      grid.weights = {1.0, 1.0};
      break;
    case 2: {
      const double h = kTwoPi / resolution;
      for (int j = 0; j < resolution; ++j) {
        const double theta = h * j;
        grid.directions.push_back({std::cos(theta), std::sin(theta)});
        grid.weights.push_back(h);
      }
      break;
    }
    case 3: {
      const int polar = std::max(2, resolution / 2);
      const QuadratureRule rule = gauss_legendre(polar);
      const double h = kTwoPi / resolution;
      for (int a = 0; a < polar; ++a) {
        const double z = rule.nodes[a];
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < resolution; ++j) {
          const double phi = h * j;
          grid.directions.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
          grid.weights.push_back(rule.weights[a] * h);
        }
      }
      break;
    }
    default:
      fail(ErrorCode::UnsupportedDimension,
           "sphere quadrature supports n <= 3, got n=" + std::to_string(dim));
  }
  return grid;
}

/// Direction sample used for positivity validation and for bounding sigma
/// from below: 2^n * 512 points (Fibonacci lattice for n = 3, seeded
/// Gaussian directions for n >= 4).
inline std::vector<Vec> validation_directions(int dim) {
  std::vector<Vec> out;
  if (dim == 1) return {{-1.0}, {1.0}};
  const int count = (1 << dim) * 512;
  if (dim == 2) {
    for (int j = 0; j < count; ++j) {
      const double t = kTwoPi * j / count;
      out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
  }
  if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * j + 1.0) / count;
      const double r = std::sqrt(1.0 - z * z);
      out.push_back({r * std::cos(golden * j), r * std::sin(golden * j), z});
    }
    for (int i = 0; i < 3; ++i) {
      Vec e(3, 0.0);
      e[i] = 1.0;
      out.push_back(e);
      e[i] = -1.0;
      out.push_back(e);
    }
    return out;
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  for (int j = 0; j < count; ++j) {
    Vec v(dim);
    for (double& x : v) x = normal(rng);
    const double r = norm2(v);
    for (double& x : v) x /= r;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace weyllab
