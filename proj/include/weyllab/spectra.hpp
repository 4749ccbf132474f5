#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "weyllab/error.hpp"
#include "weyllab/levelset.hpp"
#include "weyllab/numeric.hpp"
#include "weyllab/symbols.hpp"

namespace weyllab {

enum class SpectralModel { Torus, Dirichlet1D };

/// Eigendata {(k, lambda_k) : 0 < lambda_k <= cutoff} of a model operator.
///   Torus:       lambda = sigma(k), k in Z^n \ {0}, e_k = (2 pi)^{-n/2} e^{i<k,x>}
///   Dirichlet1D: lambda = k^2 on (0, pi), k >= 1,  e_k = sqrt(2/pi) sin(k x)
/// Entries are stored in lexicographic order of k.
class SpectralBand {
 public:
  SpectralBand(SpectralModel model, int dim, double cutoff, std::optional<HomogeneousSymbol> symbol)
      : model_(model), dim_(dim), cutoff_(cutoff), symbol_(std::move(symbol)) {}

  SpectralModel model() const { return model_; }
  int dim() const { return dim_; }
  double cutoff() const { return cutoff_; }
  std::size_t size() const { return eigenvalues_.size(); }
  const std::optional<HomogeneousSymbol>& symbol() const { return symbol_; }

  std::span<const int> index(std::size_t i) const {
    return std::span<const int>(indices_).subspan(i * dim_, dim_);
  }
  double eigenvalue(std::size_t i) const { return eigenvalues_[i]; }
  std::span<const double> eigenvalues() const { return eigenvalues_; }

  void push(std::span<const int> k, double lambda) {
    indices_.insert(indices_.end(), k.begin(), k.end());
    eigenvalues_.push_back(lambda);
  }

  /// CSV with header k_1..k_n,lambda.
  void write_csv(std::ostream& out) const {
    for (int i = 0; i < dim_; ++i) out << "k_" << i + 1 << ",";
    out << "lambda\n";
    char buf[32];
    for (std::size_t e = 0; e < size(); ++e) {
      for (int v : index(e)) out << v << ",";
      std::snprintf(buf, sizeof buf, "%.17g", eigenvalues_[e]);
      out << buf << "\n";
    }
  }

 private:
  SpectralModel model_;
  int dim_;
  double cutoff_;
  std::optional<HomogeneousSymbol> symbol_;
  std::vector<int> indices_;
  Vec eigenvalues_;
};

inline constexpr double kMaxBandEntries = 1e8;

/// Half-width of a lattice box containing {sigma <= L}. The sampled sphere
/// minimum is halved so directions between samples stay inside the box.
inline long lattice_box_radius(const HomogeneousSymbol& sym, double cutoff) {
  return static_cast<long>(std::floor(std::pow(cutoff / (0.5 * sym.sphere_min()), 1.0 / sym.degree()))) + 1;
}

/// Weyl prediction Vol({sigma <= 1}) L^{n/m} with Vol = nu(S*)/n.
inline double weyl_prediction(const HomogeneousSymbol& sym, double cutoff) {
  const int n = sym.dim();
  double volume;
  if (n <= 3) {
    volume = nu_total(sym, default_resolution(n)) / n;
  } else {
    // Upper bound from the enclosing box; only used for overflow refusal.
    volume = std::pow(2.0 * std::pow(1.0 / (0.5 * sym.sphere_min()), 1.0 / sym.degree()), n);
  }
  return volume * std::pow(cutoff, n / sym.degree());
}

/// Torus spectrum {sigma(k) : k in Z^n, 0 < sigma(k) <= L}, ties at L kept.
inline SpectralBand enumerate_band(const HomogeneousSymbol& sym, double cutoff) {
  if (!(cutoff > 0.0)) fail(ErrorCode::DomainError, "L must be positive");
  const int n = sym.dim();
  const double predicted = weyl_prediction(sym, cutoff);
  if (predicted > kMaxBandEntries) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "band would hold about %.3g entries (limit 1e8)", predicted);
    fail(ErrorCode::OverflowRisk, buf);
  }
  SpectralBand band(SpectralModel::Torus, n, cutoff, sym);
  const long radius = lattice_box_radius(sym, cutoff);
  std::vector<int> k(n, static_cast<int>(-radius));
  Vec xi(n);
  while (true) {
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      xi[i] = k[i];
      zero = zero && k[i] == 0;
    }
    if (!zero) {
      const double lambda = sym.eval_unchecked(xi);
      if (lambda <= cutoff) band.push(k, lambda);
    }
    int pos = n - 1;
    while (pos >= 0 && k[pos] == radius) k[pos--] = static_cast<int>(-radius);
    if (pos < 0) break;
    ++k[pos];
  }
  return band;
}

/// Dirichlet spectrum of -d^2/dx^2 on (0, pi): k = 1..floor(sqrt L).
inline SpectralBand dirichlet_band(double cutoff) {
  if (!(cutoff > 0.0)) fail(ErrorCode::DomainError, "L must be positive");
  SpectralBand band(SpectralModel::Dirichlet1D, 1, cutoff, std::nullopt);
  for (int k = 1; static_cast<double>(k) * k <= cutoff; ++k) {
    const int idx[] = {k};
    band.push(idx, static_cast<double>(k) * k);
  }
  return band;
}

struct WeylCount {
  std::size_t count = 0;
  double prediction = 0.0;
  double rel_err() const { return std::abs(static_cast<double>(count) - prediction) / prediction; }
};

inline WeylCount weyl_count(const HomogeneousSymbol& sym, double cutoff) {
  return {enumerate_band(sym, cutoff).size(), weyl_prediction(sym, cutoff)};
}

/// Parameters of one kernel evaluation: weight sigma^z (z = -s for K_L^s),
/// derivative orders d^alpha_x d^beta_y, evaluation pair and cutoff.
struct KernelRequest {
  Complex z{0.0, 0.0};
  std::vector<int> alpha;
  std::vector<int> beta;
  Vec x;
  Vec y;
  double cutoff = 0.0;

  int derivative_order() const {
    return std::accumulate(alpha.begin(), alpha.end(), 0) + std::accumulate(beta.begin(), beta.end(), 0);
  }
};

/// Torus kernel with precomputed per-mode coefficients
///   c_k = sigma(k)^z (ik)^alpha (-ik)^beta,
/// evaluated as (2 pi)^{-n} sum_k c_k e^{i<k, x-y>} with deterministic pairwise
/// reduction in lexicographic k order. Restricting to lambda <= L' < band
/// cutoff reuses the band for several cutoffs.
class TorusKernel {
 public:
  TorusKernel(const SpectralBand& band, Complex z, std::vector<int> alpha, std::vector<int> beta,
              std::optional<double> cutoff = std::nullopt)
      : band_(&band) {
    if (band.model() != SpectralModel::Torus) fail(ErrorCode::BandMismatch, "band is not a torus band");
    const int n = band.dim();
    if (alpha.empty()) alpha.assign(n, 0);
    if (beta.empty()) beta.assign(n, 0);
    if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n) {
      fail(ErrorCode::DimensionMismatch, "derivative multi-index length differs from dimension");
    }
    for (int v : alpha) {
      if (v < 0) fail(ErrorCode::DomainError, "multi-index entries must be >= 0");
    }
    for (int v : beta) {
      if (v < 0) fail(ErrorCode::DomainError, "multi-index entries must be >= 0");
    }
    const double limit = cutoff.value_or(band.cutoff());
    if (limit > band.cutoff()) fail(ErrorCode::BandMismatch, "requested L exceeds the band cutoff");
    const int abs_alpha = std::accumulate(alpha.begin(), alpha.end(), 0);
    const int abs_beta = std::accumulate(beta.begin(), beta.end(), 0);
    // i^|alpha| (-i)^|beta|
    Complex phase{1.0, 0.0};
    for (int j = 0; j < abs_alpha; ++j) phase *= Complex(0.0, 1.0);
    for (int j = 0; j < abs_beta; ++j) phase *= Complex(0.0, -1.0);
    for (std::size_t e = 0; e < band.size(); ++e) {
      const double lambda = band.eigenvalue(e);
      if (lambda > limit) continue;
      double monomial = 1.0;
      const auto k = band.index(e);
      for (int i = 0; i < n; ++i) monomial *= detail::int_pow(k[i], alpha[i] + beta[i]);
      modes_.push_back(e);
      coeffs_.push_back(std::exp(z * std::log(lambda)) * monomial * phase);
    }
    norm_ = std::pow(kTwoPi, -n);
  }

  std::size_t mode_count() const { return modes_.size(); }

  /// Kernel at a pair with difference x - y.
  Complex at_difference(std::span<const double> diff) const {
    const int n = band_->dim();
    const Complex total = reduce_terms<Complex>(modes_.size(), [&](std::size_t j) {
      const auto k = band_->index(modes_[j]);
      double phase = 0.0;
      for (int i = 0; i < n; ++i) phase += k[i] * diff[i];
      return coeffs_[j] * Complex(std::cos(phase), std::sin(phase));
    });
    return norm_ * total;
  }

  Complex operator()(std::span<const double> x, std::span<const double> y) const {
    Vec diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
    return at_difference(diff);
  }

 private:
  const SpectralBand* band_;
  std::vector<std::size_t> modes_;
  std::vector<Complex> coeffs_;
  double norm_ = 1.0;
};

inline Complex torus_kernel(const KernelRequest& req, const SpectralBand& band) {
  if (static_cast<int>(req.x.size()) != band.dim() || static_cast<int>(req.y.size()) != band.dim()) {
    fail(ErrorCode::DimensionMismatch, "kernel points must match the band dimension");
  }
  if (!(req.cutoff > 0.0)) fail(ErrorCode::DomainError, "L must be positive");
  const TorusKernel kernel(band, req.z, req.alpha, req.beta, req.cutoff);
  return kernel(req.x, req.y);
}

inline void check_dirichlet_point(double x, bool allow_boundary, const char* name) {
  const bool interior = x > 0.0 && x < kPi;
  const bool closed = x >= 0.0 && x <= kPi;
  if (!(interior || (allow_boundary && closed))) {
    fail(ErrorCode::DomainError,
         std::string(name) + " must lie in the open interval (0, pi); boundary needs an explicit flag");
  }
}

/// sum_{0 < k^2 <= L} k^{-2s} (2/pi) sin(kx) sin(ky) on (0, pi).
inline double dirichlet_kernel(double s, double cutoff, double x, double y, bool allow_boundary = false) {
  check_dirichlet_point(x, allow_boundary, "x");
  check_dirichlet_point(y, allow_boundary, "y");
  if (!(cutoff > 0.0)) fail(ErrorCode::DomainError, "L must be positive");
  std::size_t kmax = 0;
  while (static_cast<double>(kmax + 1) * static_cast<double>(kmax + 1) <= cutoff) ++kmax;
  const double total = reduce_terms<double>(kmax, [&](std::size_t j) {
    const double k = static_cast<double>(j + 1);
    return std::pow(k, -2.0 * s) * std::sin(k * x) * std::sin(k * y);
  });
  return 2.0 / kPi * total;
}

/// Weight f on (0, inf) with its derivative, for K_L^f.
struct WeightFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// f(t) = t^p for t > 0.
inline WeightFunction power_weight(double p) {
  return {[p](double t) { return std::pow(t, p); },
          [p](double t) { return p == 0.0 ? 0.0 : p * std::pow(t, p - 1.0); }};
}

struct WeightedKernel {
  Complex direct;
  Complex integrated;
};

namespace detail {

inline Complex mode_product(const SpectralBand& band, std::size_t e, std::span<const double> x,
                            std::span<const double> y) {
  const auto k = band.index(e);
  if (band.model() == SpectralModel::Dirichlet1D) {
    return 2.0 / kPi * std::sin(k[0] * x[0]) * std::sin(k[0] * y[0]);
  }
  double phase = 0.0;
  for (int i = 0; i < band.dim(); ++i) phase += k[i] * (x[i] - y[i]);
  return std::pow(kTwoPi, -band.dim()) * Complex(std::cos(phase), std::sin(phase));
}

}  // namespace detail

/// K_L^f(x, y) two ways: the direct sum sum f(lambda_k) e_k(x) conj(e_k(y)),
/// and f(L) E_L - int_0^L f'(lambda) E_lambda d lambda where E_lambda is the
/// step function of partial projector kernels and f' is integrated
/// numerically between consecutive eigenvalues.
inline WeightedKernel kernel_weighted(const WeightFunction& f, double cutoff, std::span<const double> x,
                                      std::span<const double> y, const SpectralBand& band) {
  if (cutoff > band.cutoff()) fail(ErrorCode::BandMismatch, "requested L exceeds the band cutoff");
  std::vector<std::size_t> order;
  for (std::size_t e = 0; e < band.size(); ++e) {
    if (band.eigenvalue(e) <= cutoff) order.push_back(e);
  }
  WeightedKernel out;
  out.direct = reduce_terms<Complex>(order.size(), [&](std::size_t j) {
    return f.value(band.eigenvalue(order[j])) * detail::mode_product(band, order[j], x, y);
  });

  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return band.eigenvalue(a) < band.eigenvalue(b); });
  Complex projector{0.0, 0.0};  // E_lambda on the current step
  Complex integral{0.0, 0.0};
  const QuadratureRule& rule = panel_rule();
  for (std::size_t j = 0; j < order.size();) {
    const double lambda = band.eigenvalue(order[j]);
    while (j < order.size() && band.eigenvalue(order[j]) == lambda) {
      projector += detail::mode_product(band, order[j], x, y);
      ++j;
    }
    const double next = j < order.size() ? band.eigenvalue(order[j]) : cutoff;
    if (next > lambda) {
      const double df = integrate_panels<double>(f.derivative, lambda, next, 1, rule);
      integral += df * projector;
    }
  }
  out.integrated = f.value(cutoff) * projector - integral;
  return out;
}

}  // namespace weyllab
