#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "weyllab/admissibility.hpp"
#include "weyllab/asymptotics.hpp"
#include "weyllab/levelset.hpp"
#include "weyllab/oscillatory.hpp"

namespace weyllab {

using Json = nlohmann::ordered_json;

/// {slope, intercept, target, rel_err, max_abs_residual, design, samples[]}
inline Json to_json(const FitReport& fit) {
  Json samples = Json::array();
  for (std::size_t i = 0; i < fit.abscissa.size(); ++i) {
    samples.push_back({{"x", fit.abscissa[i]}, {"y", fit.values[i]}});
  }
  return Json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"target", fit.target},
              {"rel_err", fit.rel_err()},
              {"max_abs_residual", fit.max_abs_residual},
              {"sample_count", fit.sample_count},
              {"design", fit.design},
              {"samples", samples}};
}

inline Json to_json(const AdmissibilityReport& report) {
  Json directions = Json::array();
  for (const auto& d : report.per_direction) {
    directions.push_back({{"direction", d.direction},
                          {"residuals", d.residuals},
                          {"witness", d.witness ? Json(*d.witness) : Json(nullptr)}});
  }
  char verdict[96];
  std::snprintf(verdict, sizeof verdict, "%s at resolution %d",
                report.admissible_on_grid() ? "admissible-on-grid" : "not admissible-on-grid",
                report.grid_resolution);
  return Json{{"k0", report.k0},
              {"grid_resolution", report.grid_resolution},
              {"threshold", report.threshold},
              {"admissible_on_grid", report.admissible_on_grid()},
              {"verdict", verdict},
              {"min_max_residual", report.min_max_residual},
              {"per_direction", directions}};
}

inline Json to_json(const DisintegrationResult& r) {
  return Json{{"reference", r.reference}, {"radial", r.radial}, {"rel_error", r.rel_error}};
}

inline std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV t,abs_J,re_J,im_J.
inline void write_probe_csv(const DecayProbe& probe, std::ostream& out) {
  out << "t,abs_J,re_J,im_J\n";
  for (std::size_t j = 0; j < probe.t_grid.size(); ++j) {
    out << format_g17(probe.t_grid[j]) << "," << format_g17(std::abs(probe.values[j])) << ","
        << format_g17(probe.values[j].real()) << "," << format_g17(probe.values[j].imag()) << "\n";
  }
}

}  // namespace weyllab
