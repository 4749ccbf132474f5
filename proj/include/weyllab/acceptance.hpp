#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "weyllab/admissibility.hpp"
#include "weyllab/asymptotics.hpp"
#include "weyllab/levelset.hpp"
#include "weyllab/oscillatory.hpp"
#include "weyllab/report.hpp"
#include "weyllab/spectra.hpp"
#include "weyllab/symbols.hpp"

namespace weyllab::acceptance {

struct Check {
  std::string what;
  double measured = 0.0;
  double target = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct Criterion {
  int id = 0;
  std::string name;
  bool quick = true;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return !checks.empty();
  }
};

namespace detail {

inline Check relative(std::string what, double measured, double target, double tol) {
  return {std::move(what), measured, target, tol, std::abs(measured - target) <= tol * std::abs(target)};
}
inline Check absolute(std::string what, double measured, double target, double tol) {
  return {std::move(what), measured, target, tol, std::abs(measured - target) <= tol};
}
inline Check at_most(std::string what, double measured, double bound) {
  return {std::move(what), measured, bound, 0.0, measured <= bound};
}
inline Check at_least(std::string what, double measured, double bound) {
  return {std::move(what), measured, bound, 0.0, measured >= bound};
}
inline Check within(std::string what, double measured, double lo, double hi) {
  return {std::move(what), measured, 0.5 * (lo + hi), 0.5 * (hi - lo), measured >= lo && measured <= hi};
}

inline HomogeneousSymbol circle() { return parse_symbol("poly: x1^2 + x2^2"); }
inline HomogeneousSymbol quartic() { return parse_symbol("poly: x1^4 + x2^4"); }

}  // namespace detail

inline Criterion weyl_law() {
  using namespace detail;
  Criterion c{1, "Weyl law, |xi|^2 on T^2, L=4e4", true, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  const WeylCount wc = weyl_count(circle(), 4e4);
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.checks.push_back(relative("count/(pi L)", static_cast<double>(wc.count) / (kPi * 4e4), 1.0, 0.03));
  c.checks.push_back(at_most("runtime [s]", c.seconds, 5.0));
  return c;
}

inline Criterion critical_log_2d() {
  using namespace detail;
  Criterion c{2, "critical log constant, T^2, s=1", false, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  const HomogeneousSymbol sym = circle();
  const FitReport fit = log_fit_diagonal(sym, Vec{1.0, 2.0}, dyadic_list(1e3, 1e5));
  const double g = g_constant(build_quadrature(sym, 4096));
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.checks.push_back(relative("slope vs ln L", fit.slope, 1.0 / (4.0 * kPi), 0.05));
  c.checks.push_back(relative("g = slope*m", fit.slope * sym.degree(), g, 0.05));
  c.checks.push_back(relative("g_constant", g, 1.0 / kTwoPi, 1e-10));
  c.checks.push_back(at_most("runtime [s]", c.seconds, 60.0));
  return c;
}

inline Criterion critical_log_dirichlet() {
  using namespace detail;
  Criterion c{3, "critical log constant, Dirichlet (0,pi), s=1/2", true, {}, 0.0};
  const Vec cutoffs = geometric_list(1e4, 1e8, 8);
  c.checks.push_back(relative("slope at x=pi/2", log_fit_dirichlet(kPi / 2, cutoffs).slope, 1.0 / kTwoPi, 0.05));
  c.checks.push_back(relative("slope at x=pi/4", log_fit_dirichlet(kPi / 4, cutoffs).slope, 1.0 / kTwoPi, 0.05));
  return c;
}

inline Criterion rescaled_limit() {
  using namespace detail;
  Criterion c{4, "rescaled limit kernel, |xi|^2 on T^2", false, {}, 0.0};
  const HomogeneousSymbol sym = circle();
  const auto grid = disk_grid(2, 2.0, 8, 16);
  for (double s : {0.0, 0.5}) {
    const auto rows = rescaled_error_scan(sym, s, {}, {}, Vec{1.0, 2.0}, grid, {1e2, 1e4});
    char label[64];
    std::snprintf(label, sizeof label, "s=%g err(1e2)/err(1e4)", s);
    c.checks.push_back(at_least(label, rows[0].sup_error / rows[1].sup_error, 3.0));
    if (s == 0.5) {
      c.checks.push_back(relative("s=1/2 diagonal at L=1e4", rows[1].diagonal.real(), 1.0 / kTwoPi, 0.02));
    }
  }
  return c;
}

inline Criterion green_splitting() {
  using namespace detail;
  Criterion c{5, "off-diagonal Green splitting, T^2, s=1", false, {}, 0.0};
  const HomogeneousSymbol sym = circle();
  const double cutoff = 1e5;
  const double kappa = 32.0;
  const double d_min = kappa * std::pow(cutoff, -0.5) * (1.0 + 1e-9);
  const auto pairs = ray_pairs(Vec{1.0, 2.0}, Vec{1.0, 0.3}, geometric_list(d_min, 0.5, 12));
  const SpectralBand band = enumerate_band(sym, cutoff);
  const GreenFit fit = offdiag_green_fit(sym, pairs, cutoff, kappa, &band);
  c.checks.push_back(relative("slope vs -ln|x-y|", fit.fit.slope, 1.0 / kTwoPi, 0.07));
  const double coarse = q_spread(sym, pairs, 1e4, 4e4);
  const double fine = q_spread(sym, pairs, 2.5e4, 1e5);
  c.checks.push_back({"Q spread {2.5e4,1e5} < {1e4,4e4}", fine, coarse, 0.0, fine < coarse});
  return c;
}

inline Criterion oscillatory_decay() {
  using namespace detail;
  Criterion c{6, "oscillatory decay on S*", true, {}, 0.0};
  const HomogeneousSymbol circ = circle();
  const HomogeneousSymbol quart = quartic();
  const double r = 1.0 / std::sqrt(2.0);
  c.checks.push_back(within("circle slope", decay_slope(make_probe(circ, {1.0, 0.0}, 10, 1e3), 2).slope, -0.55, -0.45));
  c.checks.push_back(within("quartic h=(1,0) slope", decay_slope(make_probe(quart, {1.0, 0.0}, 10, 1e3), 4).slope, -0.30, -0.20));
  c.checks.push_back(at_most("quartic h=(1,1)/sqrt2 slope", decay_slope(make_probe(quart, {r, r}, 10, 1e3), 2).slope, -0.45));
  const LevelSetQuad quad = build_quadrature(circ, 4096);
  const Complex j = j_probe(quad, Vec{0.6, 0.8}, 10.0);
  c.checks.push_back(absolute("J(t=10) vs 2 pi J0(10)", j.real(), kTwoPi * std::cyl_bessel_j(0.0, 10.0), 1e-8));
  return c;
}

inline Criterion admissibility() {
  using namespace detail;
  Criterion c{7, "admissibility of |xi|^2 and xi1^4+xi2^4", true, {}, 0.0};
  const AdmissibilityReport circ = check_admissible(circle(), 2, 256);
  bool all_two = circ.admissible_on_grid();
  for (const auto& d : circ.per_direction) all_two = all_two && d.witness == 2;
  c.checks.push_back({"|xi|^2 witness k=2 everywhere", all_two ? 1.0 : 0.0, 1.0, 0.0, all_two});
  c.checks.push_back(at_least("|xi|^2 min_max_residual", circ.min_max_residual, 0.4));

  const AdmissibilityReport q4 = check_admissible(quartic(), 4, 256);
  bool axis_rule = q4.admissible_on_grid();
  for (const auto& d : q4.per_direction) {
    const bool axis = std::abs(std::abs(d.direction[0]) - 1.0) < 1e-12 || std::abs(std::abs(d.direction[1]) - 1.0) < 1e-12;
    axis_rule = axis_rule && ((d.witness == 4) == axis);
  }
  c.checks.push_back({"quartic k0=4: witness 4 exactly at axes", axis_rule ? 1.0 : 0.0, 1.0, 0.0, axis_rule});

  const AdmissibilityReport q3 = check_admissible(quartic(), 3, 256);
  double axis_residual = 0.0;
  for (const auto& d : q3.per_direction) {
    const bool axis = std::abs(std::abs(d.direction[0]) - 1.0) < 1e-12 || std::abs(std::abs(d.direction[1]) - 1.0) < 1e-12;
    if (axis) axis_residual = std::max({axis_residual, d.residuals[0], d.residuals[1]});
  }
  c.checks.push_back({"quartic k0=3 not admissible-on-grid", q3.admissible_on_grid() ? 1.0 : 0.0, 0.0, 0.0,
                      !q3.admissible_on_grid()});
  c.checks.push_back(at_most("quartic axis residual k=2,3", axis_residual, 1e-8));
  return c;
}

inline Criterion polarization() {
  using namespace detail;
  Criterion c{8, "polarization of random symmetric tensors", true, {}, 0.0};
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const int k = 2 + (trial / 3) % 3;
    SymTensor t(n, k);
    for (double& v : t.entries()) v = uni(rng);
    std::vector<Vec> pts(k, Vec(n));
    double scale = t.frobenius_norm();
    for (auto& p : pts) {
      for (double& v : p) v = uni(rng);
      scale *= norm2(p);
    }
    const double direct = t.evaluate(pts);
    const double polar = polarize([&](std::span<const double> x) { return t.diagonal(x); }, pts);
    worst = std::max(worst, std::abs(polar - direct) / scale);
  }
  c.checks.push_back(at_most("max relative error", worst, 1e-10));
  return c;
}

inline Criterion disintegration() {
  using namespace detail;
  Criterion c{9, "level-set density disintegration", true, {}, 0.0};
  const HomogeneousSymbol circ = circle();
  const HomogeneousSymbol quart = quartic();
  const LevelSetQuad qc = build_quadrature(circ, 4096);
  const LevelSetQuad qq = build_quadrature(quart, 4096);
  c.checks.push_back(at_most("gaussian error |xi|^2", verify_disintegration(qc, TestFunction::Gaussian).rel_error, 1e-6));
  c.checks.push_back(at_most("gaussian error quartic", verify_disintegration(qq, TestFunction::Gaussian).rel_error, 1e-6));
  c.checks.push_back(absolute("nu(S*) |xi|^2", qc.total(), kTwoPi, 1e-8));
  c.checks.push_back(absolute("nu(S*) quartic", qq.total(), 4.0 * std::comp_ellint_1(1.0 / std::sqrt(2.0)), 1e-4));
  return c;
}

inline Criterion weighted_link() {
  using namespace detail;
  Criterion c{10, "K_L^f direct sum vs integrated identity", true, {}, 0.0};
  const HomogeneousSymbol circ = circle();
  const HomogeneousSymbol line = parse_symbol("poly: x1^2");
  const SpectralBand b2 = enumerate_band(circ, 400.0);
  const SpectralBand b1 = enumerate_band(line, 100.0);
  struct Case {
    const char* name;
    const SpectralBand* band;
    double p;
    Vec x, y;
  };
  const Case cases[] = {{"f=1, T^2, L=400", &b2, 0.0, {0.3, 0.7}, {1.1, 0.2}},
                        {"f=t^-1, T^2, L=400", &b2, -1.0, {0.3, 0.7}, {1.1, 0.2}},
                        {"f=t^-1/2, T^1, L=100", &b1, -0.5, {0.4}, {2.5}}};
  for (const Case& cs : cases) {
    const WeightedKernel k = kernel_weighted(power_weight(cs.p), cs.band->cutoff(), cs.x, cs.y, *cs.band);
    const double diff = std::abs(k.direct - k.integrated) / std::max(1.0, std::abs(k.direct));
    c.checks.push_back(at_most(cs.name, diff, 1e-10));
  }
  return c;
}

struct Entry {
  int id;
  bool quick;
  std::function<Criterion()> run;
};

inline std::vector<Entry> all_criteria() {
  return {{1, true, weyl_law},         {2, false, critical_log_2d},  {3, true, critical_log_dirichlet},
          {4, false, rescaled_limit},  {5, false, green_splitting},  {6, true, oscillatory_decay},
          {7, true, admissibility},    {8, true, polarization},      {9, true, disintegration},
          {10, true, weighted_link}};
}

/// Runs the suite; quick mode skips the criteria marked full-only.
inline std::vector<Criterion> run(bool full) {
  std::vector<Criterion> out;
  for (const auto& entry : all_criteria()) {
    if (!full && !entry.quick) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c = entry.run();
    if (c.seconds == 0.0) c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(c));
  }
  return out;
}

inline std::string summary_line(const Criterion& c) {
  std::string line = (c.pass() ? "[PASS] " : "[FAIL] ");
  char head[128];
  std::snprintf(head, sizeof head, "C%-2d %s (%.2f s)", c.id, c.name.c_str(), c.seconds);
  line += head;
  for (const auto& chk : c.checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "\n         %s %s: measured=%.6g target=%.6g tol=%.6g", chk.pass ? "ok " : "BAD",
                  chk.what.c_str(), chk.measured, chk.target, chk.tol);
    line += buf;
  }
  return line;
}

inline Json to_json(const std::vector<Criterion>& results) {
  Json out = Json::array();
  for (const auto& c : results) {
    for (const auto& chk : c.checks) {
      out.push_back({{"criterion", "C" + std::to_string(c.id) + " " + chk.what},
                     {"measured", chk.measured},
                     {"target", chk.target},
                     {"tol", chk.tol},
                     {"pass", chk.pass}});
    }
  }
  return out;
}

}  // namespace weyllab::acceptance
