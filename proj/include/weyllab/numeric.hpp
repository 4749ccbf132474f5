#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <numbers>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "weyllab/error.hpp"

namespace weyllab {

using Complex = std::complex<double>;
using Vec = std::vector<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Thread control
// ---------------------------------------------------------------------------

namespace detail {
inline std::atomic<int>& thread_setting() {
  static std::atomic<int> value{0};
  return value;
}
}  // namespace detail

/// Worker count for parallel map-reduce. Explicit setting wins, then the
/// WEYLLAB_THREADS environment variable, then 1.
inline int thread_count() {
  int configured = detail::thread_setting().load();
  if (configured > 0) return configured;
  if (const char* env = std::getenv("WEYLLAB_THREADS")) {
    int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

inline void set_thread_count(int n) { detail::thread_setting().store(std::max(n, 0)); }

/// Runs body(i) for i in [0, count). Work is split in contiguous chunks; the
/// body must only write to slot i of any shared output.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
}

// ---------------------------------------------------------------------------
// Summation
// ---------------------------------------------------------------------------

/// Pairwise (cascade) summation with a fixed split: result depends only on
/// the input order.
template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.size() <= 8) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline constexpr std::size_t kReductionBlock = 4096;

/// Deterministic parallel map-reduce over [0, count). term(i) is evaluated in
/// fixed-size blocks, each block is pairwise summed, then the block partials
/// are pairwise summed. The reduction tree is independent of thread count.
template <class T, class Term>
T reduce_terms(std::size_t count, Term&& term) {
  const std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(blocks, T{});
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(count, lo + kReductionBlock);
    std::vector<T> local(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) local[i - lo] = term(i);
    partial[b] = pairwise_sum(std::span<const T>(local));
  });
  return pairwise_sum(std::span<const T>(partial));
}

/// Neumaier-compensated accumulator; used as an order-insensitive oracle.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

// ---------------------------------------------------------------------------
// Gauss-Legendre
// ---------------------------------------------------------------------------

struct QuadratureRule {
  Vec nodes;
  Vec weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int n) {
  // Returns (P_n(x), P_n'(x)).
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  QuadratureRule rule{Vec(n), Vec(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// Cached 20-point rule used for panel integration throughout the library.
inline const QuadratureRule& panel_rule() {
  static const QuadratureRule rule = gauss_legendre(20);
  return rule;
}

/// Composite Gauss-Legendre of f over [a, b] with `panels` equal panels.
template <class T, class F>
T integrate_panels(F&& f, double a, double b, int panels,
                   const QuadratureRule& rule = panel_rule()) {
  T total{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    T acc{};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      acc += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
    }
    total += 0.5 * h * acc;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Least squares
// ---------------------------------------------------------------------------

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) fail(ErrorCode::DegenerateFit, "fit needs at least two samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorCode::DegenerateFit, "abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    fit.max_abs_residual =
        std::max(fit.max_abs_residual, std::abs(y[i] - (fit.slope * x[i] + fit.intercept)));
  }
  return fit;
}

/// `count` geometrically spaced values from lo to hi inclusive.
inline Vec geometric_list(double lo, double hi, int count) {
  Vec out;
  if (count <= 0) return out;
  if (count == 1) return {lo};
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(ratio * i));
  out.back() = hi;
  return out;
}

/// Geometric list from lo to hi inclusive with ratio as close to 2 as the
/// endpoints allow.
inline Vec dyadic_list(double lo, double hi) {
  const int count = 1 + static_cast<int>(std::lround(std::log2(hi / lo)));
  return geometric_list(lo, hi, std::max(count, 2));
}

inline double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace weyllab
