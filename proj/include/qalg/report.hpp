#pragma once
// Toolkit configuration and suite reports: plain key=value config files
// with flag-style overrides on top, JSON and CSV emission.  Reports are
// deterministic byte for byte; anything that varies between runs (wall
// time) is normalized away.
#include <map>
#include <string>
#include <vector>

#include "qalg/params.hpp"

namespace qalg {

struct GridSpec {
  double lo = 0.25;
  double hi = 2.5;
  int count = 10;
  std::vector<double> points() const;  // evenly spaced, endpoints included
};

struct ToolkitConfig {
  double hbar = 0.3;
  double eta = 0.7;
  bool c_set = false;  // when unset each suite picks its natural charge
  double c = 0.0;
  int trunc = 200;
  // gate overrides: key "suite" rescopes every check of that suite,
  // "suite.check-slug" a single check
  std::map<std::string, double> tol_map;
  GridSpec grid;
  std::string out_path = "report.json";
  std::string format = "json";
};

// apply one key=value setting (keys: hbar, eta, c, trunc, tol.NAME,
// grid=lo:hi:count, out, format); `where` labels parse errors, e.g.
// "line 3" or "flag --hbar"
void apply_setting(ToolkitConfig& cfg, const std::string& key,
                   const std::string& value, const std::string& where);

// key=value file, '#' comments and blank lines ignored; "" gives the
// defaults.  Callers layer flag overrides on top afterwards.
ToolkitConfig parse_config(const std::string& path);

// checks the cross-field constraints (positive tolerances, nonempty
// grid, hbar*c >= 0) and throws invalid_argument on violation
void validate_config(const ToolkitConfig& cfg);

// parameter tuple a suite runs at: c defaults to 1 for the free-field,
// ordering and riemann suites and to 0 elsewhere unless the config pins it
AlgebraParams suite_params(const ToolkitConfig& cfg, const std::string& suite);

struct SamplePoint {
  double param = 0.0;
  double residual = 0.0;
  std::string status;  // empty when evaluated, else "skipped:<reason>"
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;  // over evaluated points; -1 if none survive
  double gate = 0.0;          // negative marks an informational check
  bool pass = true;
  long runtime_ms = 0;  // kept at zero so report bytes stay reproducible
  std::vector<SamplePoint> samples;  // full curve, emitted only as CSV
};

struct SuiteReport {
  std::string suite;
  double hbar = 0.0, eta = 0.0, eta_prime = 0.0, c = 0.0;
  int trunc = 0;
  std::vector<CheckResult> checks;  // sorted by name
  bool overall_pass = true;
};

// one object for a single suite, an array otherwise
std::string report_json(const std::vector<SuiteReport>& reports);

// json: one file at cfg.out_path; csv: one file per check named
// <stem>-<suite>-<check-slug>.csv with header param,residual.  Returns
// the paths written.
std::vector<std::string> emit_report(const std::vector<SuiteReport>& reports,
                                     const ToolkitConfig& cfg);

}  // namespace qalg
