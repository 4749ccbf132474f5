// weyllab: command-line front end for the weighted spectral kernel lab.
//
//   weyllab weyl --symbol "poly: x1^2+x2^2" --L 25
//   weyllab log-fit --model dirichlet --s 0.5 --x 1.5707963 --L-list 1e4:1e8:8
//   weyllab suite quick
//
// Exit status: 0 success, 2 validation failure, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weyllab/acceptance.hpp"
#include "weyllab/admissibility.hpp"
#include "weyllab/asymptotics.hpp"
#include "weyllab/config.hpp"
#include "weyllab/levelset.hpp"
#include "weyllab/oscillatory.hpp"
#include "weyllab/report.hpp"
#include "weyllab/spectra.hpp"
#include "weyllab/symbols.hpp"

namespace {

using namespace weyllab;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

/// Failure tied to one named parameter; printed as "<param>: <message>".
class ParamError : public std::runtime_error {
 public:
  ParamError(const std::string& param, const std::string& message)
      : std::runtime_error(param + ": " + message) {}
};

Vec parse_vector(const std::string& text, const std::string& param) {
  Vec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto trimmed = std::string(detail::trim(item));
    char* end = nullptr;
    const double v = std::strtod(trimmed.c_str(), &end);
    if (trimmed.empty() || *end != '\0') throw ParamError(param, "expected comma-separated numbers, got '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParamError(param, "empty list");
  return out;
}

std::vector<int> parse_multi_index(const std::string& text, const std::string& param, int dim) {
  if (text.empty()) return std::vector<int>(dim, 0);
  std::vector<int> out;
  for (double v : parse_vector(text, param)) {
    if (v < 0 || v != std::floor(v)) throw ParamError(param, "multi-index entries must be integers >= 0");
    out.push_back(static_cast<int>(v));
  }
  if (static_cast<int>(out.size()) != dim) {
    throw ParamError(param, "expected " + std::to_string(dim) + " entries");
  }
  return out;
}

/// "a:b:n" (n geometric points from a to b) or a comma-separated list.
Vec parse_cutoff_list(const std::string& text, const std::string& param) {
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string lo, hi, count;
    std::getline(ss, lo, ':');
    std::getline(ss, hi, ':');
    std::getline(ss, count, ':');
    try {
      const int n = std::stoi(count);
      const double a = std::stod(lo), b = std::stod(hi);
      if (n < 1 || !(a > 0.0) || !(b >= a)) throw ParamError(param, "need 0 < a <= b and n >= 1 in a:b:n");
      return geometric_list(a, b, n);
    } catch (const std::logic_error&) {
      throw ParamError(param, "expected a:b:n, got '" + text + "'");
    }
  }
  return parse_vector(text, param);
}

Vec point_or_default(const std::string& text, const std::string& param, int dim, double fill) {
  if (text.empty()) return Vec(dim, fill);
  Vec v = parse_vector(text, param);
  if (static_cast<int>(v.size()) != dim) throw ParamError(param, "expected " + std::to_string(dim) + " entries");
  return v;
}

HomogeneousSymbol symbol_from(const std::string& literal) {
  if (literal.empty()) throw ParamError("symbol", "required");
  return parse_symbol(literal);
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ParamError("output", "cannot open '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

/// Options shared by every command; filled by CLI11.
struct Options {
  std::string symbol;
  std::string model = "torus";
  double cutoff = 0.0;
  std::optional<double> s;
  double z_re = 0.0, z_im = 0.0;
  bool z_given = false;
  std::string alpha, beta, x, y, h, w, direction;
  int grid = 0;
  bool boundary = false;
  int resolution = 0;
  std::string cutoff_list;
  double h_max = 2.0;
  int h_radial = 8, h_angular = 16;
  double kappa = 32.0;
  double d_min = 0.0, d_max = 0.5;
  int pairs = 12;
  std::string reference_list;
  double t_min = 10.0, t_max = 1000.0;
  int per_decade = 40;
  int block = kEnvelopeBlock;
  int k0 = 0;
  double threshold = 1e-8;
  std::string test = "gaussian";
  std::string quad_csv, band_csv;
  double weight = -1.0;
  std::string suite_name = "quick";
  std::string format;
  std::string output;
  int threads = 0;
};

int run_weyl(const Options& o) {
  const HomogeneousSymbol sym = symbol_from(o.symbol);
  if (!(o.cutoff > 0.0)) throw ParamError("L", "must be positive");
  const SpectralBand band = enumerate_band(sym, o.cutoff);
  const WeylCount wc{band.size(), weyl_prediction(sym, o.cutoff)};
  if (!o.band_csv.empty()) {
    Output csv(o.band_csv);
    band.write_csv(csv.stream());
  }
  Output out(o.output);
  if (o.format == "json") {
    out.stream() << Json{{"count", wc.count}, {"prediction", wc.prediction}, {"rel_err", wc.rel_err()}}.dump(2)
                 << "\n";
  } else {
    char rel[32];
    std::snprintf(rel, sizeof rel, "%.3g", wc.rel_err());
    out.stream() << "count=" << wc.count << " prediction=" << fmt6(wc.prediction) << " rel_err=" << rel << "\n";
  }
  return 0;
}

Complex exponent_of(const Options& o) {
  if (o.z_given) return {o.z_re, o.z_im};
  return {-o.s.value_or(0.0), 0.0};
}

int run_kernel(const Options& o) {
  if (!(o.cutoff > 0.0)) throw ParamError("L", "must be positive");
  Output out(o.output);
  if (o.model == "dirichlet") {
    if (o.z_given && o.z_im != 0.0) throw ParamError("z-im", "the Dirichlet kernel takes a real exponent");
    const double s = o.z_given ? -o.z_re : o.s.value_or(0.0);
    const double y = o.y.empty() ? kPi / 2 : parse_vector(o.y, "y")[0];
    if (o.grid > 0) {
      out.stream() << "x,y,re,im\n";
      for (int j = 0; j < o.grid; ++j) {
        const double x = kPi * (j + 1) / (o.grid + 1);
        out.stream() << format_g17(x) << "," << format_g17(y) << ","
                     << format_g17(dirichlet_kernel(s, o.cutoff, x, y, o.boundary)) << ",0\n";
      }
      return 0;
    }
    const double x = o.x.empty() ? kPi / 2 : parse_vector(o.x, "x")[0];
    const double v = dirichlet_kernel(s, o.cutoff, x, y, o.boundary);
    if (o.format == "json") {
      out.stream() << Json{{"re", v}, {"im", 0.0}}.dump(2) << "\n";
    } else {
      out.stream() << "re=" << format_g17(v) << " im=0\n";
    }
    return 0;
  }
  if (o.model != "torus") throw ParamError("model", "expected 'torus' or 'dirichlet'");
  const HomogeneousSymbol sym = symbol_from(o.symbol);
  const int n = sym.dim();
  const SpectralBand band = enumerate_band(sym, o.cutoff);
  const TorusKernel kernel(band, exponent_of(o), parse_multi_index(o.alpha, "alpha", n),
                           parse_multi_index(o.beta, "beta", n));
  const Vec y = point_or_default(o.y, "y", n, 0.0);
  if (o.grid > 0) {
    if (n == 1) {
      out.stream() << "x,y,re,im\n";
    } else {
      for (int i = 0; i < n; ++i) out.stream() << "x_" << i + 1 << ",";
      for (int i = 0; i < n; ++i) out.stream() << "y_" << i + 1 << ",";
      out.stream() << "re,im\n";
    }
    for (int j = 0; j < o.grid; ++j) {
      Vec x(y);
      x[0] += kTwoPi * j / o.grid;
      const Complex v = kernel(x, y);
      for (double c : x) out.stream() << format_g17(c) << ",";
      for (double c : y) out.stream() << format_g17(c) << ",";
      out.stream() << format_g17(v.real()) << "," << format_g17(v.imag()) << "\n";
    }
    return 0;
  }
  const Vec x = point_or_default(o.x, "x", n, 0.0);
  const Complex v = kernel(x, y);
  if (o.format == "json") {
    out.stream() << Json{{"re", v.real()}, {"im", v.imag()}, {"modes", kernel.mode_count()}}.dump(2) << "\n";
  } else {
    out.stream() << "re=" << format_g17(v.real()) << " im=" << format_g17(v.imag()) << "\n";
  }
  return 0;
}

int run_limit_kernel(const Options& o) {
  const HomogeneousSymbol sym = symbol_from(o.symbol);
  const int n = sym.dim();
  const Vec h = point_or_default(o.h, "h", n, 0.0);
  const LevelSetQuad quad = build_quadrature(sym, o.resolution > 0 ? o.resolution : default_resolution(n));
  const double s = o.s.value_or(0.0);
  const Complex v = limit_kernel(sym, s, parse_multi_index(o.alpha, "alpha", n),
                                 parse_multi_index(o.beta, "beta", n), h, quad);
  Output out(o.output);
  out.stream() << Json{{"re", v.real()}, {"im", v.imag()}, {"s", s}, {"resolution", quad.resolution}}.dump(2)
               << "\n";
  return 0;
}

int run_rescale_scan(const Options& o) {
  const HomogeneousSymbol sym = symbol_from(o.symbol);
  const int n = sym.dim();
  const Vec cutoffs = parse_cutoff_list(o.cutoff_list.empty() ? "1e2,1e3,1e4" : o.cutoff_list, "L-list");
  const auto grid = disk_grid(n, o.h_max, o.h_radial, o.h_angular);
  const auto rows = rescaled_error_scan(sym, o.s.value_or(0.0), parse_multi_index(o.alpha, "alpha", n),
                                        parse_multi_index(o.beta, "beta", n),
                                        point_or_default(o.w, "w", n, 1.0), grid, cutoffs,
                                        o.resolution > 0 ? o.resolution : 256);
  Output out(o.output);
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"L", r.cutoff}, {"sup_error", r.sup_error}, {"diag_re", r.diagonal.real()},
                     {"diag_im", r.diagonal.imag()}});
    }
    out.stream() << Json{{"rows", arr}}.dump(2) << "\n";
  } else {
    out.stream() << "L,sup_error,diag_re,diag_im\n";
    for (const auto& r : rows) {
      out.stream() << format_g17(r.cutoff) << "," << format_g17(r.sup_error) << ","
                   << format_g17(r.diagonal.real()) << "," << format_g17(r.diagonal.imag()) << "\n";
    }
  }
  return 0;
}

int run_log_fit(const Options& o) {
  const Vec cutoffs = parse_cutoff_list(o.cutoff_list.empty() ? "1e3:1e5:8" : o.cutoff_list, "L-list");
  FitReport fit;
  double degree = 2.0;
  if (o.model == "dirichlet") {
    if (o.s && std::abs(*o.s - 0.5) > 1e-12) throw ParamError("s", "the Dirichlet log law needs s = n/m = 0.5");
    fit = log_fit_dirichlet(o.x.empty() ? kPi / 2 : parse_vector(o.x, "x")[0], cutoffs);
  } else if (o.model == "torus") {
    const HomogeneousSymbol sym = symbol_from(o.symbol);
    degree = sym.degree();
    const double critical = sym.dim() / sym.degree();
    if (o.s && std::abs(*o.s - critical) > 1e-12) {
      throw ParamError("s", "log law needs s = n/m = " + fmt6(critical));
    }
    fit = log_fit_diagonal(sym, point_or_default(o.x, "x", sym.dim(), 0.0), cutoffs);
  } else {
    throw ParamError("model", "expected 'torus' or 'dirichlet'");
  }
  Json report = to_json(fit);
  report["g_estimate"] = fit.slope * degree;
  report["g_target"] = fit.target * degree;
  Output out(o.output);
  out.stream() << report.dump(2) << "\n";
  return 0;
}

int run_green_fit(const Options& o) {
  const HomogeneousSymbol sym = symbol_from(o.symbol);
  const int n = sym.dim();
  if (!(o.cutoff > 0.0)) throw ParamError("L", "must be positive");
  const double d_min = o.d_min > 0.0 ? o.d_min : o.kappa * std::pow(o.cutoff, -1.0 / sym.degree()) * (1.0 + 1e-9);
  if (!(o.d_max > d_min)) throw ParamError("d-max", "must exceed d-min");
  const Vec base = point_or_default(o.w, "w", n, 1.0);
  Vec dir = point_or_default(o.direction, "direction", n, 0.0);
  if (o.direction.empty()) {
    dir[0] = 1.0;
    if (n > 1) dir[1] = 0.3;
  }
  const auto pairs = ray_pairs(base, dir, geometric_list(d_min, o.d_max, o.pairs));
  const GreenFit fit = offdiag_green_fit(sym, pairs, o.cutoff, o.kappa);
  Json report = to_json(fit.fit);
  report["g"] = fit.g;
  report["distances"] = fit.distances;
  report["q_hat"] = fit.q_hat;
  if (!o.reference_list.empty()) {
    const Vec refs = parse_cutoff_list(o.reference_list, "L-ref");
    if (refs.size() != 2) throw ParamError("L-ref", "expected two cutoffs");
    report["q_spread"] = q_spread(sym, pairs, refs[0], refs[1]);
  }
  Output out(o.output);
  out.stream() << report.dump(2) << "\n";
  return 0;
}

int run_osc_decay(const Options& o) {
  const HomogeneousSymbol sym = symbol_from(o.symbol);
  const int n = sym.dim();
  Vec h = point_or_default(o.h, "h", n, 0.0);
  if (o.h.empty()) h[0] = 1.0;
  const DecayProbe probe = make_probe(sym, h, o.t_min, o.t_max, o.per_decade);
  Output out(o.output);
  if (o.format == "json") {
    const int k0 = o.k0 > 0 ? o.k0 : 2;
    Json report = to_json(decay_slope(probe, k0, o.block));
    report["resolution"] = probe.resolution;
    report["nu_total"] = probe.nu_total;
    out.stream() << report.dump(2) << "\n";
  } else {
    write_probe_csv(probe, out.stream());
  }
  return 0;
}

int run_admissible(const Options& o) {
  const HomogeneousSymbol sym = symbol_from(o.symbol);
  const int k0 = o.k0 > 0 ? o.k0 : max_admissibility_order(sym);
  const AdmissibilityReport report = check_admissible(sym, k0, o.resolution > 0 ? o.resolution : 256, o.threshold);
  Output out(o.output);
  out.stream() << to_json(report).dump(2) << "\n";
  return 0;
}

int run_disintegration(const Options& o) {
  const HomogeneousSymbol sym = symbol_from(o.symbol);
  const LevelSetQuad quad = build_quadrature(sym, o.resolution > 0 ? o.resolution : default_resolution(sym.dim()));
  if (!o.quad_csv.empty()) {
    Output csv(o.quad_csv);
    quad.write_csv(csv.stream());
  }
  Json report = to_json(verify_disintegration(quad, parse_test_function(o.test)));
  report["nu_total"] = quad.total();
  report["resolution"] = quad.resolution;
  Output out(o.output);
  out.stream() << report.dump(2) << "\n";
  return 0;
}

int run_link_check(const Options& o) {
  if (!(o.cutoff > 0.0)) throw ParamError("L", "must be positive");
  const WeightFunction f = power_weight(o.weight);
  WeightedKernel k;
  if (o.model == "dirichlet") {
    const SpectralBand band = dirichlet_band(o.cutoff);
    const Vec x{o.x.empty() ? kPi / 3 : parse_vector(o.x, "x")[0]};
    const Vec y{o.y.empty() ? kPi / 2 : parse_vector(o.y, "y")[0]};
    check_dirichlet_point(x[0], false, "x");
    check_dirichlet_point(y[0], false, "y");
    k = kernel_weighted(f, o.cutoff, x, y, band);
  } else {
    const HomogeneousSymbol sym = symbol_from(o.symbol);
    const SpectralBand band = enumerate_band(sym, o.cutoff);
    k = kernel_weighted(f, o.cutoff, point_or_default(o.x, "x", sym.dim(), 0.3),
                        point_or_default(o.y, "y", sym.dim(), 1.1), band);
  }
  const double diff = std::abs(k.direct - k.integrated);
  Output out(o.output);
  out.stream() << Json{{"direct_re", k.direct.real()},
                       {"direct_im", k.direct.imag()},
                       {"integrated_re", k.integrated.real()},
                       {"integrated_im", k.integrated.imag()},
                       {"abs_diff", diff},
                       {"rel_diff", diff / std::max(1.0, std::abs(k.direct))}}
                      .dump(2)
               << "\n";
  return 0;
}

int run_suite(const Options& o) {
  if (o.suite_name != "quick" && o.suite_name != "full") throw ParamError("suite", "expected 'quick' or 'full'");
  const auto results = acceptance::run(o.suite_name == "full");
  Output out(o.output);
  bool ok = true;
  for (const auto& c : results) ok = ok && c.pass();
  if (o.format == "json") {
    out.stream() << acceptance::to_json(results).dump(2) << "\n";
  } else {
    for (const auto& c : results) out.stream() << acceptance::summary_line(c) << "\n";
    out.stream() << (ok ? "suite " + o.suite_name + ": all criteria passed\n"
                        : "suite " + o.suite_name + ": FAILED\n");
  }
  return ok ? 0 : 1;
}

/// Long names of the options a subcommand received, in definition order.
ExperimentConfig effective_config(const CLI::App& sub) {
  ExperimentConfig config(sub.get_name());
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config" || name == "dump-config") continue;
    std::string joined;
    for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
    config.set(name, joined);
  }
  return config;
}

/// Expands `--config FILE` into flags placed before the command-line flags;
/// flags given on the command line take precedence over file entries.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::optional<std::string> path;
  std::set<std::string> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    }
    if (a.rfind("--", 0) == 0) {
      const auto eq = a.find('=');
      given.insert(a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2));
    }
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw ParamError("config", "cannot open '" + *path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const ExperimentConfig config = ExperimentConfig::parse(buffer.str());
  // The command may appear anywhere, e.g. `weyllab --config f.cfg weyl --L 9`.
  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::string command = config.command();
  for (auto it = rest.begin(); it != rest.end(); ++it) {
    if (is_command(*it)) {
      command = *it;
      rest.erase(it);
      break;
    }
  }
  std::vector<std::string> out{args[0]};
  if (!command.empty()) out.push_back(command);
  for (const auto& [key, value] : config.entries()) {
    if (!given.count(key)) out.push_back("--" + key + "=" + value);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weyllab: weighted spectral kernels and local Weyl laws on model spectra"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;
  std::string config_path;
  bool dump_config = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv | json | text")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--output", o.output, "write the result here instead of stdout");
    sub->add_option("--threads", o.threads, "worker threads (env WEYLLAB_THREADS)");
    sub->add_option("--config", config_path, "key = value experiment file; flags override it");
    sub->add_flag("--dump-config", dump_config, "print the effective config and exit");
  };
  auto symbol = [&](CLI::App* sub) { sub->add_option("--symbol", o.symbol, "symbol literal, e.g. 'poly: x1^2+x2^2'"); };
  auto s_option = [&](CLI::App* sub) { sub->add_option("--s", o.s, "weight exponent s (kernel weight lambda^-s)"); };

  auto* weyl = app.add_subcommand("weyl", "lattice count against the Weyl prediction");
  symbol(weyl);
  weyl->add_option("--L", o.cutoff, "cutoff")->required();
  weyl->add_option("--band-csv", o.band_csv, "write the band as CSV k_1..k_n,lambda");
  common(weyl);

  auto* kernel = app.add_subcommand("kernel", "truncated weighted kernel K_L");
  kernel->add_option("--model", o.model, "torus | dirichlet")->check(CLI::IsMember({"torus", "dirichlet"}));
  symbol(kernel);
  kernel->add_option("--L", o.cutoff, "cutoff")->required();
  s_option(kernel);
  auto* zre = kernel->add_option("--z-re", o.z_re, "real part of the exponent z (weight lambda^z)");
  kernel->add_option("--z-im", o.z_im, "imaginary part of z")->needs(zre);
  kernel->add_option("--alpha", o.alpha, "x-derivative multi-index, e.g. 1,0");
  kernel->add_option("--beta", o.beta, "y-derivative multi-index");
  kernel->add_option("--x", o.x, "point x");
  kernel->add_option("--y", o.y, "point y");
  kernel->add_option("--grid", o.grid, "scan x over N points and emit CSV x,y,re,im");
  kernel->add_flag("--boundary", o.boundary, "allow Dirichlet evaluation on the boundary");
  common(kernel);

  auto* limit = app.add_subcommand("limit-kernel", "rescaled limit kernel below the critical exponent");
  symbol(limit);
  s_option(limit);
  limit->add_option("--alpha", o.alpha);
  limit->add_option("--beta", o.beta);
  limit->add_option("--h", o.h, "rescaled separation x-y");
  limit->add_option("--resolution", o.resolution);
  common(limit);

  auto* scan = app.add_subcommand("rescale-scan", "sup error of the rescaled kernel against its limit");
  symbol(scan);
  s_option(scan);
  scan->add_option("--alpha", o.alpha);
  scan->add_option("--beta", o.beta);
  scan->add_option("--w", o.w, "base point");
  scan->add_option("--h-max", o.h_max);
  scan->add_option("--h-radial", o.h_radial);
  scan->add_option("--h-angular", o.h_angular);
  scan->add_option("--L-list", o.cutoff_list, "a:b:n or comma list");
  scan->add_option("--resolution", o.resolution);
  common(scan);

  auto* logfit = app.add_subcommand("log-fit", "diagonal log law at the critical exponent");
  logfit->add_option("--model", o.model)->check(CLI::IsMember({"torus", "dirichlet"}));
  symbol(logfit);
  s_option(logfit);
  logfit->add_option("--x", o.x);
  logfit->add_option("--L-list", o.cutoff_list, "a:b:n or comma list");
  common(logfit);

  auto* green = app.add_subcommand("green-fit", "off-diagonal -g ln|x-y| + Q splitting");
  symbol(green);
  green->add_option("--L", o.cutoff)->required();
  green->add_option("--kappa", o.kappa);
  green->add_option("--d-min", o.d_min);
  green->add_option("--d-max", o.d_max);
  green->add_option("--pairs", o.pairs);
  green->add_option("--w", o.w);
  green->add_option("--direction", o.direction);
  green->add_option("--L-ref", o.reference_list, "two cutoffs for the Q spread");
  common(green);

  auto* osc = app.add_subcommand("osc-decay", "level-set oscillatory integral decay");
  symbol(osc);
  osc->add_option("--h", o.h);
  osc->add_option("--t-min", o.t_min);
  osc->add_option("--t-max", o.t_max);
  osc->add_option("--per-decade", o.per_decade);
  osc->add_option("--block", o.block);
  osc->add_option("--k0", o.k0);
  common(osc);

  auto* adm = app.add_subcommand("admissible", "pointwise k0-admissibility scan");
  symbol(adm);
  adm->add_option("--k0", o.k0);
  adm->add_option("--resolution", o.resolution);
  adm->add_option("--threshold", o.threshold);
  common(adm);

  auto* dis = app.add_subcommand("disintegration", "check the level-set density on a test function");
  symbol(dis);
  dis->add_option("--resolution", o.resolution);
  dis->add_option("--test", o.test)->check(CLI::IsMember({"gaussian", "bump"}));
  dis->add_option("--quad-csv", o.quad_csv, "write nodes and weights as CSV");
  common(dis);

  auto* link = app.add_subcommand("link-check", "K_L^f direct sum against the integrated identity");
  link->add_option("--model", o.model)->check(CLI::IsMember({"torus", "dirichlet"}));
  symbol(link);
  link->add_option("--L", o.cutoff)->required();
  link->add_option("--weight", o.weight, "power p of f(t) = t^p");
  link->add_option("--x", o.x);
  link->add_option("--y", o.y);
  common(link);

  auto* suite = app.add_subcommand("suite", "acceptance criteria");
  suite->add_option("name", o.suite_name, "quick | full");
  common(suite);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::vector<char*> cargs;
    for (auto& a : args) cargs.push_back(a.data());
    try {
      app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      std::cerr << e.what() << "\n";
      return kExitValidation;
    }
    if (o.threads > 0) set_thread_count(o.threads);
    o.z_given = zre->count() > 0;

    CLI::App* chosen = app.get_subcommands().front();
    if (dump_config) {
      std::cout << effective_config(*chosen).serialize();
      return 0;
    }
    const std::string name = chosen->get_name();
    if (name == "weyl") return run_weyl(o);
    if (name == "kernel") return run_kernel(o);
    if (name == "limit-kernel") return run_limit_kernel(o);
    if (name == "rescale-scan") return run_rescale_scan(o);
    if (name == "log-fit") return run_log_fit(o);
    if (name == "green-fit") return run_green_fit(o);
    if (name == "osc-decay") return run_osc_decay(o);
    if (name == "admissible") return run_admissible(o);
    if (name == "disintegration") return run_disintegration(o);
    if (name == "link-check") return run_link_check(o);
    if (name == "suite") return run_suite(o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_numerical(e.code()) ? kExitNumerical : kExitValidation;
  } catch (const ParamError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
