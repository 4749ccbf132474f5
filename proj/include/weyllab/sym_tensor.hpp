#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "weyllab/error.hpp"
#include "weyllab/numeric.hpp"

namespace weyllab {

/// Sorted multi-index (i_1 <= ... <= i_k) addressing one independent entry of
/// a symmetric tensor.
using MultiIndex = std::vector<int>;

/// All nondecreasing index tuples of length `order` over {0, ..., dim-1}, in
/// lexicographic order.
inline std::vector<MultiIndex> sorted_multi_indices(int dim, int order) {
  std::vector<MultiIndex> out;
  MultiIndex idx(order, 0);
  if (order == 0) {
    out.push_back(idx);
    return out;
  }
  while (true) {
    out.push_back(idx);
    int pos = order - 1;
    while (pos >= 0 && idx[pos] == dim - 1) --pos;
    if (pos < 0) break;
    const int v = idx[pos] + 1;
    for (int j = pos; j < order; ++j) idx[j] = v;
  }
  return out;
}

/// Number of distinct permutations of a sorted multi-index, k! / prod(c_i!).
inline double multiplicity(std::span<const int> sorted) {
  double result = 1.0;
  std::size_t run = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    result *= static_cast<double>(i + 1);
    run = (i > 0 && sorted[i] == sorted[i - 1]) ? run + 1 : 1;
    result /= static_cast<double>(run);
  }
  return result;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return std::round(r);
}

/// Symmetric k-linear form on R^n in packed storage: one coefficient per
/// sorted multi-index. Symmetry is structural; any permutation of an index
/// tuple addresses the same slot.
class SymTensor {
 public:
  SymTensor() = default;

  SymTensor(int dim, int order)
      : dim_(dim), order_(order),
        entries_(static_cast<std::size_t>(binomial(dim + order - 1, order)), 0.0) {
    if (dim < 1 || order < 0) fail(ErrorCode::DimensionMismatch, "SymTensor needs dim >= 1, order >= 0");
  }

  static SymTensor scalar(double value) {
    SymTensor t(1, 0);
    t.entries_[0] = value;
    return t;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const double> entries() const { return entries_; }
  std::span<double> entries() { return entries_; }

  /// Packed offset of an index tuple (any order).
  std::size_t offset(std::span<const int> index) const {
    if (static_cast<int>(index.size()) != order_) {
      fail(ErrorCode::DimensionMismatch, "index length differs from tensor order");
    }
    MultiIndex sorted(index.begin(), index.end());
    std::sort(sorted.begin(), sorted.end());
    // Rank among nondecreasing tuples in lexicographic order: count tuples
    // that are smaller at the first differing position.
    std::size_t rank = 0;
    int prev = 0;
    for (int pos = 0; pos < order_; ++pos) {
      const int v = sorted[pos];
      if (v < 0 || v >= dim_) fail(ErrorCode::DimensionMismatch, "index out of range");
      const int remaining = order_ - pos - 1;
      for (int c = prev; c < v; ++c) {
        // tuples of length `remaining` over {c, ..., dim-1}
        rank += static_cast<std::size_t>(binomial(dim_ - c + remaining - 1, remaining));
      }
      prev = v;
    }
    return rank;
  }

  double operator()(std::span<const int> index) const { return entries_[offset(index)]; }
  double operator()(std::initializer_list<int> index) const {
    return (*this)(std::span<const int>(index.begin(), index.size()));
  }
  double& at(std::span<const int> index) { return entries_[offset(index)]; }
  double& at(std::initializer_list<int> index) {
    return at(std::span<const int>(index.begin(), index.size()));
  }

  /// T(u_1, ..., u_k) = sum over all (unsorted) index tuples.
  double evaluate(std::span<const Vec> args) const {
    if (static_cast<int>(args.size()) != order_) {
      fail(ErrorCode::DimensionMismatch, "argument count differs from tensor order");
    }
    for (const Vec& a : args) {
      if (static_cast<int>(a.size()) != dim_) fail(ErrorCode::DimensionMismatch, "argument dimension");
    }
    if (order_ == 0) return entries_[0];
    double total = 0.0;
    MultiIndex idx(order_, 0);
    while (true) {
      double prod = 1.0;
      for (int j = 0; j < order_ && prod != 0.0; ++j) prod *= args[j][idx[j]];
      if (prod != 0.0) total += prod * (*this)(idx);
      int pos = order_ - 1;
      while (pos >= 0 && idx[pos] == dim_ - 1) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
    return total;
  }

  /// T(x, ..., x).
  double diagonal(std::span<const double> x) const {
    double total = 0.0;
    const auto indices = sorted_multi_indices(dim_, order_);
    for (std::size_t e = 0; e < indices.size(); ++e) {
      double prod = multiplicity(indices[e]);
      for (int i : indices[e]) prod *= x[i];
      total += prod * entries_[e];
    }
    return total;
  }

  /// Frobenius norm of the full symmetric array: each packed entry counted
  /// with its permutation multiplicity.
  double frobenius_norm() const {
    const auto indices = sorted_multi_indices(dim_, order_);
    double sum = 0.0;
    for (std::size_t e = 0; e < indices.size(); ++e) {
      sum += multiplicity(indices[e]) * entries_[e] * entries_[e];
    }
    return std::sqrt(sum);
  }

  SymTensor& operator*=(double s) {
    for (double& v : entries_) v *= s;
    return *this;
  }

  friend SymTensor operator-(SymTensor a, const SymTensor& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] -= b.entries_[i];
    return a;
  }
  friend SymTensor operator+(SymTensor a, const SymTensor& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] += b.entries_[i];
    return a;
  }
  friend SymTensor operator*(double s, SymTensor a) { return a *= s; }

 private:
  void check_same_shape(const SymTensor& other) const {
    if (dim_ != other.dim_ || order_ != other.order_) {
      fail(ErrorCode::DimensionMismatch, "tensor shapes differ");
    }
  }

  int dim_ = 1;
  int order_ = 0;
  Vec entries_{0.0};
};

/// v^{(x)k}: evaluation on (u_1, ..., u_k) equals prod <v, u_j>.
inline SymTensor tensor_power(std::span<const double> v, int k) {
  if (k < 1) fail(ErrorCode::UnsupportedOrder, "tensor_power needs k >= 1");
  SymTensor t(static_cast<int>(v.size()), k);
  const auto indices = sorted_multi_indices(t.dim(), k);
  auto entries = t.entries();
  for (std::size_t e = 0; e < indices.size(); ++e) {
    double prod = 1.0;
    for (int i : indices[e]) prod *= v[i];
    entries[e] = prod;
  }
  return t;
}

/// Recovers a symmetric k-linear form from its diagonal q(x) = w(x, ..., x):
///   w(x_1..x_k) = 1/(2^k k!) sum_{eta in {-1,1}^k} (prod eta_i) q(sum eta_j x_j).
inline double polarize(const std::function<double(std::span<const double>)>& q,
                       std::span<const Vec> points) {
  const int k = static_cast<int>(points.size());
  if (k < 1) fail(ErrorCode::UnsupportedOrder, "polarize needs at least one point");
  const std::size_t n = points[0].size();
  double total = 0.0;
  Vec combo(n);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::fill(combo.begin(), combo.end(), 0.0);
    double sign = 1.0;
    for (int j = 0; j < k; ++j) {
      const double eta = (mask >> j & 1u) ? -1.0 : 1.0;
      sign *= eta;
      for (std::size_t i = 0; i < n; ++i) combo[i] += eta * points[j][i];
    }
    total += sign * q(combo);
  }
  double factorial = 1.0;
  for (int j = 2; j <= k; ++j) factorial *= j;
  return total / (std::ldexp(1.0, k) * factorial);
}

}  // namespace weyllab
