#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "weyllab/error.hpp"
#include "weyllab/levelset.hpp"
#include "weyllab/numeric.hpp"
#include "weyllab/spectra.hpp"
#include "weyllab/symbols.hpp"

namespace weyllab {

/// Least-squares record for an asymptotic regression.
struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  std::size_t sample_count = 0;
  std::string design;  // abscissa description
  Vec abscissa;
  Vec values;
  double target = 0.0;  // predicted slope

  double rel_err() const { return std::abs(slope - target) / std::abs(target); }
};

inline FitReport make_fit(std::string design, Vec abscissa, Vec values, double target) {
  if (abscissa.size() < 3) fail(ErrorCode::DegenerateFit, "fit needs at least 3 samples");
  const LineFit line = fit_line(abscissa, values);
  FitReport r;
  r.slope = line.slope;
  r.intercept = line.intercept;
  r.max_abs_residual = line.max_abs_residual;
  r.sample_count = abscissa.size();
  r.design = std::move(design);
  r.abscissa = std::move(abscissa);
  r.values = std::move(values);
  r.target = target;
  return r;
}

/// Log-law constant for a constant-coefficient symbol: nu(S*) / (2 pi)^n.
inline double g_constant(const LevelSetQuad& quad) {
  return quad.total() / std::pow(kTwoPi, quad.dim);
}

/// Rescaled limit kernel
///   (2 pi)^{-n} int_{sigma <= 1} e^{i<xi,h>} (i xi)^alpha (-i xi)^beta sigma^{-s} dxi
/// in polar form over the level-set quadrature:
///   (2 pi)^{-n} int_0^1 t^{n-1+|alpha|+|beta|-ms} sum_i w_i e^{it<xi_i,h>} M_i dt,
/// M_i = (i xi_i)^alpha (-i xi_i)^beta. The t-integral uses Gauss-Legendre on a
/// geometric mesh [2^{-j-1}, 2^{-j}] down to 1e-8, and the remainder [0, delta]
/// is taken from the leading term of the integrand.
inline Complex limit_kernel(double degree, double s, std::span<const int> alpha, std::span<const int> beta,
                            std::span<const double> h, const LevelSetQuad& quad) {
  const int n = quad.dim;
  std::vector<int> a(alpha.begin(), alpha.end()), b(beta.begin(), beta.end());
  if (a.empty()) a.assign(n, 0);
  if (b.empty()) b.assign(n, 0);
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(h.size()) != n) {
    fail(ErrorCode::DimensionMismatch, "limit_kernel arguments must match the quadrature dimension");
  }
  const int d = std::accumulate(a.begin(), a.end(), 0) + std::accumulate(b.begin(), b.end(), 0);
  const double exponent = n - 1 + d - degree * s;
  if (!(exponent > -1.0)) {
    fail(ErrorCode::NonIntegrable, "limit kernel needs s < (n+|alpha|+|beta|)/m; got s=" + std::to_string(s));
  }
  Complex phase{1.0, 0.0};
  for (int j = 0; j < std::accumulate(a.begin(), a.end(), 0); ++j) phase *= Complex(0.0, 1.0);
  for (int j = 0; j < std::accumulate(b.begin(), b.end(), 0); ++j) phase *= Complex(0.0, -1.0);

  const std::size_t count = quad.nodes.size();
  Vec projection(count);
  std::vector<Complex> amplitude(count);
  double omega = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    projection[i] = dot(quad.nodes[i], h);
    omega = std::max(omega, std::abs(projection[i]));
    double mono = 1.0;
    for (int c = 0; c < n; ++c) mono *= detail::int_pow(quad.nodes[i][c], a[c] + b[c]);
    amplitude[i] = quad.weights[i] * mono * phase;
  }
  auto angular = [&](double t) {
    return reduce_terms<Complex>(count, [&](std::size_t i) {
      const double p = t * projection[i];
      return amplitude[i] * Complex(std::cos(p), std::sin(p));
    });
  };
  auto integrand = [&](double t) { return std::pow(t, exponent) * angular(t); };

  constexpr double kInnermost = 1e-8;
  Complex total{0.0, 0.0};
  double hi = 1.0;
  while (hi > kInnermost) {
    const double lo = 0.5 * hi;
    const int panels = 1 + static_cast<int>(std::ceil((hi - lo) * omega / 4.0));
    total += integrate_panels<Complex>(integrand, lo, hi, panels);
    hi = lo;
  }
  total += angular(0.0) * std::pow(hi, exponent + 1.0) / (exponent + 1.0);
  return total / std::pow(kTwoPi, n);
}

inline Complex limit_kernel(const HomogeneousSymbol& sym, double s, std::span<const int> alpha,
                            std::span<const int> beta, std::span<const double> h, const LevelSetQuad& quad) {
  if (quad.dim != sym.dim()) fail(ErrorCode::DimensionMismatch, "quadrature built for another dimension");
  return limit_kernel(sym.degree(), s, alpha, beta, h, quad);
}

/// Points of a polar grid in the closed disk/ball of radius hmax (n <= 2),
/// always including h = 0.
inline std::vector<Vec> disk_grid(int dim, double hmax, int radial, int angular) {
  std::vector<Vec> out;
  out.push_back(Vec(dim, 0.0));
  for (int r = 1; r <= radial; ++r) {
    const double rho = hmax * r / radial;
    if (dim == 1) {
      out.push_back({rho});
      out.push_back({-rho});
      continue;
    }
    for (int a = 0; a < angular; ++a) {
      const double t = kTwoPi * a / angular;
      Vec p(dim, 0.0);
      p[0] = rho * std::cos(t);
      p[1] = rho * std::sin(t);
      out.push_back(std::move(p));
    }
  }
  return out;
}

struct ScanRow {
  double cutoff = 0.0;
  double sup_error = 0.0;
  Complex diagonal;  // rescaled kernel at h = 0
};

/// For each L: sup over h of
///   | L^{s-(n+|alpha|+|beta|)/m} d-kernel(w + L^{-1/m} h, w) - limit_kernel(h) |.
inline std::vector<ScanRow> rescaled_error_scan(const HomogeneousSymbol& sym, double s,
                                                std::span<const int> alpha, std::span<const int> beta,
                                                std::span<const double> base,
                                                const std::vector<Vec>& h_grid, const Vec& cutoffs,
                                                int resolution = 256) {
  const int n = sym.dim();
  const std::vector<int> a = alpha.empty() ? std::vector<int>(n, 0) : std::vector<int>(alpha.begin(), alpha.end());
  const std::vector<int> b = beta.empty() ? std::vector<int>(n, 0) : std::vector<int>(beta.begin(), beta.end());
  const int d = std::accumulate(a.begin(), a.end(), 0) + std::accumulate(b.begin(), b.end(), 0);
  if (!(s < (n + d) / sym.degree())) {
    fail(ErrorCode::NonIntegrable, "rescaled scan needs s < (n+|alpha|+|beta|)/m");
  }
  if (cutoffs.empty()) fail(ErrorCode::DomainError, "empty L list");
  double hmax = 0.0;
  for (const Vec& h : h_grid) hmax = std::max(hmax, norm2(h));
  const LevelSetQuad quad = build_quadrature(
      sym, std::max(resolution, static_cast<int>(16.0 * hmax * std::pow(sym.sphere_min(), -1.0 / sym.degree())) + 8));
  std::vector<Complex> limit(h_grid.size());
  parallel_for(h_grid.size(), [&](std::size_t j) { limit[j] = limit_kernel(sym, s, a, b, h_grid[j], quad); });

  const double lmax = *std::max_element(cutoffs.begin(), cutoffs.end());
  const SpectralBand band = enumerate_band(sym, lmax);
  std::vector<ScanRow> rows;
  for (double cutoff : cutoffs) {
    const TorusKernel kernel(band, Complex(-s, 0.0), a, b, cutoff);
    const double scale = std::pow(cutoff, s - (n + d) / sym.degree());
    const double shrink = std::pow(cutoff, -1.0 / sym.degree());
    ScanRow row;
    row.cutoff = cutoff;
    for (std::size_t j = 0; j < h_grid.size(); ++j) {
      Vec x(base.begin(), base.end());
      for (int i = 0; i < n; ++i) x[i] += shrink * h_grid[j][i];
      const Complex value = scale * kernel(x, base);
      row.sup_error = std::max(row.sup_error, std::abs(value - limit[j]));
      if (norm2(h_grid[j]) == 0.0) row.diagonal = value;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace detail {
inline void check_log_list(const Vec& cutoffs) {
  if (cutoffs.size() < 6) fail(ErrorCode::DegenerateFit, "log fit needs at least 6 cutoffs");
  const auto [lo, hi] = std::minmax_element(cutoffs.begin(), cutoffs.end());
  if (*hi < 100.0 * *lo * (1.0 - 1e-12)) fail(ErrorCode::DegenerateFit, "log fit cutoffs must span 2 decades");
}
}  // namespace detail

/// Diagonal log law at the critical exponent s = n/m on the torus:
/// K_L(x, x) against ln L has slope g/m.
inline FitReport log_fit_diagonal(const HomogeneousSymbol& sym, std::span<const double> x, const Vec& cutoffs) {
  detail::check_log_list(cutoffs);
  const int n = sym.dim();
  const double s = n / sym.degree();
  const double g = n <= 3 ? g_constant(build_quadrature(sym, default_resolution(n))) : 0.0;
  const SpectralBand band = enumerate_band(sym, *std::max_element(cutoffs.begin(), cutoffs.end()));
  Vec abscissa, values;
  for (double cutoff : cutoffs) {
    const TorusKernel kernel(band, Complex(-s, 0.0), {}, {}, cutoff);
    abscissa.push_back(std::log(cutoff));
    values.push_back(kernel(x, x).real());
  }
  return make_fit("ln L", std::move(abscissa), std::move(values), g / sym.degree());
}

/// Dirichlet interval at s = 1/2: K_L(x, x) against ln L, slope 1/(2 pi).
inline FitReport log_fit_dirichlet(double x, const Vec& cutoffs) {
  detail::check_log_list(cutoffs);
  Vec abscissa, values;
  for (double cutoff : cutoffs) {
    abscissa.push_back(std::log(cutoff));
    values.push_back(dirichlet_kernel(0.5, cutoff, x, x));
  }
  // nu = 2 for k^2 in one dimension, g = 2/(2 pi), m = 2.
  return make_fit("ln L", std::move(abscissa), std::move(values), 1.0 / kTwoPi);
}

using PointPair = std::pair<Vec, Vec>;

struct GreenFit {
  FitReport fit;   // K_L(x, y) against -ln|x - y|; slope estimates g
  Vec distances;
  Vec q_hat;       // K_L + g ln|x - y| with g = nu(S*)/(2 pi)^n
  double g = 0.0;
};

/// Off-diagonal splitting K_L(x, y) = -g ln|x-y| + Q(x, y) + small at the
/// critical exponent, for pairs with |x - y| >= kappa_min L^{-1/m}.
inline GreenFit offdiag_green_fit(const HomogeneousSymbol& sym, const std::vector<PointPair>& pairs,
                                  double cutoff, double kappa_min, const SpectralBand* shared_band = nullptr) {
  const int n = sym.dim();
  if (kappa_min < 1.0) fail(ErrorCode::DomainError, "kappa_min must be >= 1");
  const double min_sep = kappa_min * std::pow(cutoff, -1.0 / sym.degree());
  GreenFit out;
  for (const auto& [x, y] : pairs) {
    Vec diff(n);
    for (int i = 0; i < n; ++i) diff[i] = x[i] - y[i];
    const double dist = norm2(diff);
    if (dist < min_sep) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "pair at distance %.6g is closer than kappa L^{-1/m} = %.6g", dist, min_sep);
      fail(ErrorCode::PairTooClose, buf);
    }
    out.distances.push_back(dist);
  }
  out.g = g_constant(build_quadrature(sym, default_resolution(n)));
  std::optional<SpectralBand> own;
  if (shared_band == nullptr || shared_band->cutoff() < cutoff) {
    own.emplace(enumerate_band(sym, cutoff));
    shared_band = &*own;
  }
  const TorusKernel kernel(*shared_band, Complex(-n / sym.degree(), 0.0), {}, {}, cutoff);
  Vec abscissa, values;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double k = kernel(pairs[p].first, pairs[p].second).real();
    abscissa.push_back(-std::log(out.distances[p]));
    values.push_back(k);
    out.q_hat.push_back(k + out.g * std::log(out.distances[p]));
  }
  out.fit = make_fit("-ln|x-y|", std::move(abscissa), std::move(values), out.g);
  return out;
}

/// max over pairs |Q_hat(L2) - Q_hat(L1)|; refinement stability of Q.
inline double q_spread(const HomogeneousSymbol& sym, const std::vector<PointPair>& pairs, double l1, double l2) {
  const int n = sym.dim();
  const SpectralBand band = enumerate_band(sym, std::max(l1, l2));
  const TorusKernel k1(band, Complex(-n / sym.degree(), 0.0), {}, {}, l1);
  const TorusKernel k2(band, Complex(-n / sym.degree(), 0.0), {}, {}, l2);
  double spread = 0.0;
  for (const auto& [x, y] : pairs) {
    spread = std::max(spread, std::abs(k2(x, y).real() - k1(x, y).real()));
  }
  return spread;
}

/// Pairs (w, w + d u) along the unit direction u for distances d.
inline std::vector<PointPair> ray_pairs(const Vec& base, const Vec& direction, const Vec& distances) {
  const double len = norm2(direction);
  std::vector<PointPair> out;
  for (double dist : distances) {
    Vec y(base);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += dist * direction[i] / len;
    out.emplace_back(base, std::move(y));
  }
  return out;
}

}  // namespace weyllab
