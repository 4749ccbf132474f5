#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "weyllab/error.hpp"
#include "weyllab/numeric.hpp"
#include "weyllab/sphere_grid.hpp"
#include "weyllab/sym_tensor.hpp"
#include "weyllab/symbols.hpp"

namespace weyllab {

/// C(m, k) = m (m-1) ... (m-k+1) / m^k.
inline double c_constant(double m, int k) {
  double c = 1.0;
  for (int j = 0; j < k; ++j) c *= (m - j) / m;
  return c;
}

inline int max_admissibility_order(const HomogeneousSymbol& sym) {
  return sym.is_polynomial() ? static_cast<int>(sym.degree()) : 4;
}

/// Relative defect of sigma^{k-1} d^k sigma = C(m,k) (d sigma)^{(x)k} at xi:
///   ||A - B|| / (||A|| + ||B|| + 1e-300), norms with permutation multiplicity.
inline double admissibility_residual(const HomogeneousSymbol& sym, std::span<const double> xi, int k) {
  if (k < 2 || k > max_admissibility_order(sym)) {
    fail(ErrorCode::UnsupportedOrder, "admissibility order " + std::to_string(k) + " outside [2, " +
                                          std::to_string(max_admissibility_order(sym)) + "]");
  }
  const double sigma = sym.eval(xi);
  SymTensor lhs = sym.deriv_tensor(xi, k);
  lhs *= std::pow(sigma, k - 1);
  SymTensor rhs = tensor_power(sym.gradient(xi), k);
  rhs *= c_constant(sym.degree(), k);
  const double defect = (lhs - rhs).frobenius_norm();
  return defect / (lhs.frobenius_norm() + rhs.frobenius_norm() + 1e-300);
}

struct DirectionCheck {
  Vec direction;
  Vec residuals;           // residuals[k-2] for k = 2..k0
  std::optional<int> witness;  // smallest k with residual > threshold
};

struct AdmissibilityReport {
  int k0 = 2;
  int grid_resolution = 0;
  double threshold = 1e-8;
  std::vector<DirectionCheck> per_direction;
  double min_max_residual = 0.0;

  /// Every sampled direction has a witness order.
  bool admissible_on_grid() const {
    return std::all_of(per_direction.begin(), per_direction.end(),
                       [](const DirectionCheck& d) { return d.witness.has_value(); });
  }

  /// Largest witness order over the grid (the uniform k the grid supports).
  std::optional<int> uniform_witness() const {
    int worst = 0;
    for (const auto& d : per_direction) {
      if (!d.witness) return std::nullopt;
      worst = std::max(worst, *d.witness);
    }
    return worst;
  }
};

/// Pointwise admissibility scan over a sphere grid (n = 2: trapezoid circle
/// of `resolution` points; n = 3: product grid; n = 1: {-1, +1}). A clean
/// report means admissible-on-grid at this resolution, not a certificate.
inline AdmissibilityReport check_admissible(const HomogeneousSymbol& sym, int k0, int resolution,
                                            double threshold = 1e-8) {
  if (resolution < 64) fail(ErrorCode::DomainError, "admissibility scan needs resolution >= 64");
  if (k0 < 2 || k0 > max_admissibility_order(sym)) {
    fail(ErrorCode::UnsupportedOrder, "k0 must lie in [2, " + std::to_string(max_admissibility_order(sym)) + "]");
  }
  const SphereGrid grid = sphere_quadrature(sym.dim(), sym.dim() == 3 ? resolution / 4 : resolution);
  AdmissibilityReport report;
  report.k0 = k0;
  report.grid_resolution = resolution;
  report.threshold = threshold;
  report.per_direction.resize(grid.directions.size());
  parallel_for(grid.directions.size(), [&](std::size_t j) {
    DirectionCheck& check = report.per_direction[j];
    check.direction = grid.directions[j];
    for (int k = 2; k <= k0; ++k) {
      const double r = admissibility_residual(sym, check.direction, k);
      check.residuals.push_back(r);
      if (!check.witness && r > threshold) check.witness = k;
    }
  });
  report.min_max_residual = std::numeric_limits<double>::infinity();
  for (const auto& check : report.per_direction) {
    report.min_max_residual =
        std::min(report.min_max_residual, *std::max_element(check.residuals.begin(), check.residuals.end()));
  }
  return report;
}

}  // namespace weyllab
