#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "weyllab/error.hpp"
#include "weyllab/numeric.hpp"
#include "weyllab/sphere_grid.hpp"
#include "weyllab/sym_tensor.hpp"

namespace weyllab {

struct Monomial {
  std::vector<int> exponents;  // one per coordinate
  double coeff = 0.0;
};

struct PolynomialForm {
  std::vector<Monomial> terms;
};

/// sigma(xi) = (xi^T q xi)^{m/2}.
struct MetricPowerForm {
  std::vector<Vec> q;
};

namespace detail {

inline double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the short form when it round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

}  // namespace detail

/// Positive m-homogeneous function on R^n \ {0}: an elliptic homogeneous
/// polynomial or a power of a positive-definite quadratic form. Immutable;
/// positivity is validated on a sphere sample at construction.
class HomogeneousSymbol {
 public:
  using Form = std::variant<PolynomialForm, MetricPowerForm>;

  static HomogeneousSymbol polynomial(int dim, std::vector<Monomial> terms) {
    if (dim < 1) fail(ErrorCode::InvalidSymbol, "symbol dimension must be >= 1");
    if (terms.empty()) fail(ErrorCode::InvalidSymbol, "polynomial symbol has no terms");
    int degree = -1;
    std::map<std::vector<int>, double> merged;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      auto& e = terms[t].exponents;
      if (static_cast<int>(e.size()) > dim) fail(ErrorCode::InvalidSymbol, "monomial exceeds dimension");
      e.resize(dim, 0);
      int d = 0;
      for (int x : e) {
        if (x < 0) fail(ErrorCode::InvalidSymbol, "negative exponent");
        d += x;
      }
      if (degree < 0) degree = d;
      if (d != degree) {
        fail(ErrorCode::InvalidSymbol, "mixed-degree monomial at term " + std::to_string(t + 1));
      }
      merged[e] += terms[t].coeff;
    }
    if (degree < 1) fail(ErrorCode::InvalidSymbol, "polynomial degree must be >= 1");
    PolynomialForm form;
    for (auto& [e, c] : merged) {
      if (c != 0.0) form.terms.push_back({e, c});
    }
    return HomogeneousSymbol(dim, degree, std::move(form));
  }

  static HomogeneousSymbol metric_power(std::vector<Vec> q, double m) {
    const int n = static_cast<int>(q.size());
    if (n < 1) fail(ErrorCode::InvalidSymbol, "metric matrix is empty");
    if (!(m > 0.0)) fail(ErrorCode::InvalidSymbol, "metric power exponent must be positive");
    double scale = 0.0;
    for (const Vec& row : q) {
      if (static_cast<int>(row.size()) != n) fail(ErrorCode::InvalidSymbol, "metric matrix is not square");
      for (double v : row) scale = std::max(scale, std::abs(v));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (std::abs(q[i][j] - q[j][i]) > 1e-12 * scale) {
          fail(ErrorCode::InvalidSymbol, "metric matrix is not symmetric");
        }
      }
    }
    // Cholesky: strictly positive pivots <=> positive definite.
    std::vector<Vec> l(n, Vec(n, 0.0));
    for (int j = 0; j < n; ++j) {
      double d = q[j][j];
      for (int k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
      if (!(d > 0.0)) fail(ErrorCode::InvalidSymbol, "metric matrix is not positive definite");
      l[j][j] = std::sqrt(d);
      for (int i = j + 1; i < n; ++i) {
        double s = q[i][j];
        for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
        l[i][j] = s / l[j][j];
      }
    }
    return HomogeneousSymbol(n, m, MetricPowerForm{std::move(q)});
  }

  /// |xi|^m as a metric power with the identity matrix.
  static HomogeneousSymbol euclidean_power(int dim, double m) {
    std::vector<Vec> id(dim, Vec(dim, 0.0));
    for (int i = 0; i < dim; ++i) id[i][i] = 1.0;
    return metric_power(std::move(id), m);
  }

  int dim() const { return dim_; }
  double degree() const { return degree_; }
  const Form& form() const { return form_; }
  bool is_polynomial() const { return std::holds_alternative<PolynomialForm>(form_); }

  /// Minimum of sigma over the validation sample of the unit sphere.
  double sphere_min() const { return sphere_min_; }
  double sphere_max() const { return sphere_max_; }

  /// Highest derivative order deriv_tensor supports (polynomials: any).
  int max_derivative_order() const { return is_polynomial() ? 1 << 20 : 4; }

  double eval(std::span<const double> xi) const {
    check_argument(xi);
    return eval_unchecked(xi);
  }
  double operator()(std::span<const double> xi) const { return eval(xi); }

  /// No zero or dimension check; for hot loops that already exclude xi = 0.
  double eval_unchecked(std::span<const double> xi) const {
    if (const auto* poly = std::get_if<PolynomialForm>(&form_)) {
      double total = 0.0;
      for (const Monomial& mono : poly->terms) {
        double v = mono.coeff;
        for (int i = 0; i < dim_; ++i) v *= detail::int_pow(xi[i], mono.exponents[i]);
        total += v;
      }
      return total;
    }
    return std::pow(quadratic(xi), 0.5 * degree_);
  }

  /// d^k sigma at xi as a symmetric k-linear form. Order 0 is sigma itself.
  SymTensor deriv_tensor(std::span<const double> xi, int k) const {
    check_argument(xi);
    if (k < 0) fail(ErrorCode::UnsupportedOrder, "derivative order must be >= 0");
    if (k == 0) {
      SymTensor t(dim_, 0);
      t.entries()[0] = eval_unchecked(xi);
      return t;
    }
    if (k > max_derivative_order()) {
      fail(ErrorCode::UnsupportedOrder,
           "metric-power derivatives are available up to order 4, requested " + std::to_string(k));
    }
    SymTensor t(dim_, k);
    const auto indices = sorted_multi_indices(dim_, k);
    auto entries = t.entries();
    if (const auto* poly = std::get_if<PolynomialForm>(&form_)) {
      std::vector<int> counts(dim_);
      for (std::size_t e = 0; e < indices.size(); ++e) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int i : indices[e]) ++counts[i];
        double total = 0.0;
        for (const Monomial& mono : poly->terms) {
          double v = mono.coeff;
          for (int i = 0; i < dim_ && v != 0.0; ++i) {
            const int p = mono.exponents[i];
            const int c = counts[i];
            if (c > p) {
              v = 0.0;
              break;
            }
            for (int j = 0; j < c; ++j) v *= (p - j);
            v *= detail::int_pow(xi[i], p - c);
          }
          total += v;
        }
        entries[e] = total;
      }
      return t;
    }
    // sigma = f(Q) with f(u) = u^{m/2}, Q = xi^T q xi. Since d^3 Q = 0, the
    // chain rule sums over partitions of the k slots into blocks of size 1
    // (grad Q) and 2 (hess Q = 2q), weighted by f^{(#blocks)}(Q).
    const auto& q = std::get<MetricPowerForm>(form_).q;
    const double big_q = quadratic(xi);
    Vec grad(dim_, 0.0);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) grad[i] += 2.0 * q[i][j] * xi[j];
    }
    const double p = 0.5 * degree_;
    std::array<double, 5> fder{};  // k <= 4 here
    for (int b = 0; b <= k && b < static_cast<int>(fder.size()); ++b) {
      double c = 1.0;
      for (int j = 0; j < b; ++j) c *= (p - j);
      fder[b] = c * std::pow(big_q, p - b);
    }
    for (std::size_t e = 0; e < indices.size(); ++e) {
      entries[e] = partition_sum(indices[e], 0, 0u, 0, 1.0, grad, q, fder);
    }
    return t;
  }

  Vec gradient(std::span<const double> xi) const {
    const SymTensor g = deriv_tensor(xi, 1);
    return Vec(g.entries().begin(), g.entries().end());
  }

  /// Canonical literal, parseable by parse_symbol.
  std::string literal() const {
    std::string out;
    if (const auto* poly = std::get_if<PolynomialForm>(&form_)) {
      out = "poly: ";
      for (std::size_t t = 0; t < poly->terms.size(); ++t) {
        const Monomial& mono = poly->terms[t];
        double c = mono.coeff;
        if (t > 0) {
          out += c < 0 ? " - " : " + ";
          c = std::abs(c);
        }
        out += detail::format_number(c);
        for (int i = 0; i < dim_; ++i) {
          if (mono.exponents[i] == 0) continue;
          out += "*x" + std::to_string(i + 1) + "^" + std::to_string(mono.exponents[i]);
        }
      }
      return out;
    }
    const auto& q = std::get<MetricPowerForm>(form_).q;
    out = "metric: m=" + detail::format_number(degree_) + "; q=[";
    for (int i = 0; i < dim_; ++i) {
      out += i ? ",[" : "[";
      for (int j = 0; j < dim_; ++j) {
        if (j) out += ",";
        out += detail::format_number(q[i][j]);
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  HomogeneousSymbol(int dim, double degree, Form form)
      : dim_(dim), degree_(degree), form_(std::move(form)) {
    sphere_min_ = std::numeric_limits<double>::infinity();
    sphere_max_ = 0.0;
    for (const Vec& omega : validation_directions(dim_)) {
      const double v = eval_unchecked(omega);
      if (!(v > 0.0) || !std::isfinite(v)) {
        fail(ErrorCode::InvalidSymbol, "symbol is not positive on the unit sphere");
      }
      sphere_min_ = std::min(sphere_min_, v);
      sphere_max_ = std::max(sphere_max_, v);
    }
  }

  void check_argument(std::span<const double> xi) const {
    if (static_cast<int>(xi.size()) != dim_) {
      fail(ErrorCode::DimensionMismatch, "argument has dimension " + std::to_string(xi.size()) +
                                             ", symbol has " + std::to_string(dim_));
    }
    if (std::all_of(xi.begin(), xi.end(), [](double v) { return v == 0.0; })) {
      fail(ErrorCode::ZeroArgument, "symbol evaluated at xi = 0");
    }
  }

  double quadratic(std::span<const double> xi) const {
    const auto& q = std::get<MetricPowerForm>(form_).q;
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) s += q[i][j] * xi[i] * xi[j];
    }
    return s;
  }

  // Sum over partitions of slots {pos..k-1} \ used into singletons and pairs.
  static double partition_sum(const MultiIndex& idx, int pos, unsigned used, int blocks,
                              double weight, const Vec& grad, const std::vector<Vec>& q,
                              const std::array<double, 5>& fder) {
    const int k = static_cast<int>(idx.size());
    while (pos < k && (used >> pos & 1u)) ++pos;
    if (pos == k) return weight * fder[blocks];
    const unsigned taken = used | (1u << pos);
    double total = partition_sum(idx, pos + 1, taken, blocks + 1, weight * grad[idx[pos]], grad, q, fder);
    for (int other = pos + 1; other < k; ++other) {
      if (taken >> other & 1u) continue;
      total += partition_sum(idx, pos + 1, taken | (1u << other), blocks + 1,
                             weight * 2.0 * q[idx[pos]][idx[other]], grad, q, fder);
    }
    return total;
  }

  int dim_;
  double degree_;
  Form form_;
  double sphere_min_ = 0.0;
  double sphere_max_ = 0.0;
};

/// max over the grid of |d sigma(xi) . xi - m sigma(xi)| / |m sigma(xi)|.
inline double euler_check(const HomogeneousSymbol& sym, std::span<const Vec> grid) {
  double worst = 0.0;
  for (const Vec& xi : grid) {
    const Vec g = sym.gradient(xi);
    const double lhs = dot(g, xi);
    const double rhs = sym.degree() * sym.eval(xi);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Literal parsing
// ---------------------------------------------------------------------------

namespace detail {

class PolyScanner {
 public:
  explicit PolyScanner(std::string_view text) : s_(text) {}

  std::vector<Monomial> parse() {
    std::vector<Monomial> terms;
    skip_ws();
    if (at_end()) error("empty polynomial");
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!terms.empty()) {
        error("expected '+' or '-' before term " + std::to_string(terms.size() + 1));
      }
      terms.push_back(parse_term(sign, static_cast<int>(terms.size()) + 1));
      skip_ws();
    }
    return terms;
  }

  int max_variable() const { return max_var_; }

 private:
  Monomial parse_term(double sign, int term_no) {
    Monomial mono;
    mono.coeff = sign;
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        mono.coeff *= parse_number();
      } else if (c == 'x') {
        ++pos_;
        const int var = parse_int();
        if (var < 1) error("variable index must be >= 1 at term " + std::to_string(term_no));
        int exp = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          exp = parse_int();
        }
        if (static_cast<int>(mono.exponents.size()) < var) mono.exponents.resize(var, 0);
        mono.exponents[var - 1] += exp;
        max_var_ = std::max(max_var_, var);
      } else {
        error(std::string("unexpected '") + c + "' at term " + std::to_string(term_no));
      }
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      if (at_end() || peek() == '+' || peek() == '-') break;
    }
    if (!any) error("empty term " + std::to_string(term_no));
    return mono;
  }

  double parse_number() {
    const char* begin = s_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) error("bad number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  int parse_int() {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) error("expected integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, "symbol: " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int max_var_ = 0;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses `poly: 1*x1^4 + 1*x2^4` or `metric: m=2; q=[[1,0],[0,1]]`.
/// The dimension of a polynomial symbol is its highest variable index.
inline HomogeneousSymbol parse_symbol(std::string_view literal) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorCode::ParseError, "symbol: expected 'poly:' or 'metric:' prefix");
  }
  const auto kind = detail::trim(literal.substr(0, colon));
  const auto body = detail::trim(literal.substr(colon + 1));
  if (kind == "poly") {
    detail::PolyScanner scanner(body);
    auto terms = scanner.parse();
    int degree = -1;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      int d = 0;
      for (int e : terms[t].exponents) d += e;
      if (degree < 0) degree = d;
      if (d != degree) {
        fail(ErrorCode::ParseError, "symbol: mixed-degree monomial at term " + std::to_string(t + 1));
      }
    }
    return HomogeneousSymbol::polynomial(scanner.max_variable(), std::move(terms));
  }
  if (kind == "metric") {
    double m = -1.0;
    std::vector<Vec> q;
    std::size_t start = 0;
    const std::string text(body);
    while (start <= text.size()) {
      auto end = text.find(';', start);
      if (end == std::string::npos) end = text.size();
      const auto field = detail::trim(std::string_view(text).substr(start, end - start));
      start = end + 1;
      if (field.empty()) continue;
      const auto eq = field.find('=');
      if (eq == std::string_view::npos) fail(ErrorCode::ParseError, "symbol: expected key=value in metric");
      const auto key = detail::trim(field.substr(0, eq));
      const auto value = detail::trim(field.substr(eq + 1));
      if (key == "m") {
        char* endp = nullptr;
        const std::string v(value);
        m = std::strtod(v.c_str(), &endp);
        if (endp == v.c_str() || *endp != '\0') fail(ErrorCode::ParseError, "symbol: bad metric exponent");
      } else if (key == "q") {
        try {
          q = nlohmann::json::parse(value).get<std::vector<Vec>>();
        } catch (const nlohmann::json::exception&) {
          fail(ErrorCode::ParseError, "symbol: metric matrix must be a nested list of numbers");
        }
      } else {
        fail(ErrorCode::ParseError, "symbol: unknown metric field '" + std::string(key) + "'");
      }
    }
    if (m <= 0.0) fail(ErrorCode::ParseError, "symbol: metric needs m > 0");
    if (q.empty()) fail(ErrorCode::ParseError, "symbol: metric needs q");
    return HomogeneousSymbol::metric_power(std::move(q), m);
  }
  fail(ErrorCode::ParseError, "symbol: unknown kind '" + std::string(kind) + "'");
}

}  // namespace weyllab
