// Config parsing and report emission for the command line driver.
#include "qalg/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qalg {

namespace {

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty())
    throw std::runtime_error("config " + where + ": bad number '" + text + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string slug(const std::string& name) {
  std::string out;
  for (char ch : name) out.push_back(ch == ' ' ? '-' : ch);
  return out;
}

nlohmann::ordered_json suite_to_json(const SuiteReport& rep) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["params"] = {{"hbar", rep.hbar},
                 {"eta", rep.eta},
                 {"eta_prime", rep.eta_prime},
                 {"c", rep.c},
                 {"trunc", rep.trunc}};
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& chk : rep.checks) {
    j["checks"].push_back({{"name", chk.name},
                           {"max_residual", chk.max_residual},
                           {"gate", chk.gate},
                           {"pass", chk.pass},
                           {"runtime_ms", chk.runtime_ms}});
  }
  j["overall_pass"] = rep.overall_pass;
  return j;
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> out;
  if (count == 1) return {lo};
  for (int k = 0; k < count; ++k)
    out.push_back(lo + (hi - lo) * double(k) / double(count - 1));
  return out;
}

void apply_setting(ToolkitConfig& cfg, const std::string& key,
                   const std::string& value, const std::string& where) {
  if (key == "hbar") {
    cfg.hbar = parse_number(value, where);
  } else if (key == "eta") {
    cfg.eta = parse_number(value, where);
  } else if (key == "c") {
    cfg.c = parse_number(value, where);
    cfg.c_set = true;
  } else if (key == "trunc") {
    cfg.trunc = static_cast<int>(parse_number(value, where));
  } else if (key.rfind("tol.", 0) == 0) {
    const std::string name = key.substr(4);
    if (name.empty())
      throw std::runtime_error("config " + where + ": tol needs a name");
    cfg.tol_map[name] = parse_number(value, where);
  } else if (key == "grid") {
    std::istringstream ss(value);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
        !std::getline(ss, n))
      throw std::runtime_error("config " + where + ": grid wants lo:hi:count");
    cfg.grid.lo = parse_number(a, where);
    cfg.grid.hi = parse_number(b, where);
    cfg.grid.count = static_cast<int>(parse_number(n, where));
  } else if (key == "out") {
    cfg.out_path = value;
  } else if (key == "format") {
    cfg.format = value;
  } else {
    throw std::runtime_error("config " + where + ": unknown key '" + key + "'");
  }
}

ToolkitConfig parse_config(const std::string& path) {
  ToolkitConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config " + where + ": expected key=value");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                  where);
  }
  return cfg;
}

void validate_config(const ToolkitConfig& cfg) {
  // the parameter constraints themselves live in the AlgebraParams ctor
  AlgebraParams probe(cfg.hbar, cfg.eta, cfg.c_set ? cfg.c : 0.0);
  (void)probe;
  if (cfg.trunc < 1) throw std::invalid_argument("trunc must be >= 1");
  for (const auto& [name, tol] : cfg.tol_map)
    if (!(tol > 0.0))
      throw std::invalid_argument("tolerance '" + name + "' must be positive");
  if (cfg.grid.count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (!(cfg.grid.hi >= cfg.grid.lo))
    throw std::invalid_argument("grid needs hi >= lo");
  if (cfg.format != "json" && cfg.format != "csv")
    throw std::invalid_argument("format must be json or csv");
}

AlgebraParams suite_params(const ToolkitConfig& cfg, const std::string& suite) {
  double c = cfg.c_set ? cfg.c : 0.0;
  if (!cfg.c_set &&
      (suite == "freefield" || suite == "ordering" || suite == "riemann"))
    c = 1.0;
  return AlgebraParams(cfg.hbar, cfg.eta, c);
}

std::string report_json(const std::vector<SuiteReport>& reports) {
  nlohmann::ordered_json j;
  if (reports.size() == 1) {
    j = suite_to_json(reports.front());
  } else {
    j = nlohmann::ordered_json::array();
    for (const auto& rep : reports) j.push_back(suite_to_json(rep));
  }
  return j.dump(2) + "\n";
}

std::vector<std::string> emit_report(const std::vector<SuiteReport>& reports,
                                     const ToolkitConfig& cfg) {
  std::vector<std::string> written;
  if (cfg.format == "json") {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
    out << report_json(reports);
    written.push_back(cfg.out_path);
    return written;
  }
  std::string stem = cfg.out_path;
  for (const char* ext : {".csv", ".json"}) {
    const std::string e(ext);
    if (stem.size() > e.size() &&
        stem.compare(stem.size() - e.size(), e.size(), e) == 0)
      stem.erase(stem.size() - e.size());
  }
  for (const auto& rep : reports) {
    for (const auto& chk : rep.checks) {
      const std::string path =
          stem + "-" + rep.suite + "-" + slug(chk.name) + ".csv";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write '" + path + "'");
      out << "param,residual\n";
      char buf[64];
      for (const auto& pt : chk.samples) {
        std::snprintf(buf, sizeof buf, "%.17g", pt.param);
        out << buf << ",";
        if (pt.status.empty()) {
          std::snprintf(buf, sizeof buf, "%.17g", pt.residual);
          out << buf << "\n";
        } else {
          out << pt.status << "\n";
        }
      }
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace qalg
