// Command line driver: `qalg verify <suite>` runs a verification suite
// and emits a report, `qalg probe ordering` maps the resummability
// region, `qalg specfun eval` prints single special-function values.
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qalg/errors.hpp"
#include "qalg/ordering.hpp"
#include "qalg/report.hpp"
#include "qalg/specfun.hpp"
#include "qalg/suites.hpp"

namespace {

using qalg::cplx;

std::vector<double> parse_range(const std::string& text,
                                const std::string& flag) {
  qalg::GridSpec gs;
  qalg::ToolkitConfig tmp;
  qalg::apply_setting(tmp, "grid", text, "flag " + flag);
  gs = tmp.grid;
  if (gs.count < 1)
    throw std::runtime_error("config flag " + flag + ": count must be >= 1");
  return gs.points();
}

int run_verify(const std::string& suite, qalg::ToolkitConfig& cfg) {
  const auto reports = qalg::run_suites(suite, cfg);
  const auto paths = qalg::emit_report(reports, cfg);
  bool all_pass = true;
  for (const auto& rep : reports) {
    std::printf("suite %s: %s (%zu checks)\n", rep.suite.c_str(),
                rep.overall_pass ? "PASS" : "FAIL", rep.checks.size());
    all_pass = all_pass && rep.overall_pass;
  }
  for (const auto& path : paths) std::printf("wrote %s\n", path.c_str());
  return all_pass ? 0 : 1;
}

int run_probe(const std::string& hbar_range, const std::string& eta_range,
              double c) {
  const auto hbars = parse_range(hbar_range, "--hbar-range");
  const auto etas = parse_range(eta_range, "--eta-range");
  std::printf("hbar,eta,kind,sup,status\n");
  for (double h : hbars) {
    for (double e : etas) {
      const qalg::AlgebraParams p(h, e, c);
      std::vector<std::pair<qalg::KernelKind, const char*>> kinds = {
          {qalg::KernelKind::he, "he"}, {qalg::KernelKind::hf, "hf"}};
      if (h * c > 0.0) kinds.emplace_back(qalg::KernelKind::hh, "hh");
      for (auto [kind, name] : kinds) {
        double sup = std::nan("");
        const char* status = "skipped:error";
        try {
          sup = qalg::phi_hat_sup(kind, p);
          status = std::isfinite(sup) ? (sup < 1.0 ? "ok" : "divergent")
                                      : "divergent";
        } catch (const std::exception&) {
        }
        std::printf("%.17g,%.17g,%s,%.17g,%s\n", h, e, name, sup, status);
      }
    }
  }
  return 0;
}

int run_specfun_eval(const std::string& fn, const std::vector<double>& args) {
  cplx value;
  if (fn == "gamma") {
    if (args.size() != 1 && args.size() != 2)
      throw std::runtime_error("--fn gamma wants args: re [im]");
    value = qalg::log_gamma(cplx(args[0], args.size() == 2 ? args[1] : 0.0));
  } else if (fn == "gamma2") {
    if (args.size() != 3)
      throw std::runtime_error("--fn gamma2 wants args: x w1 w2");
    value = qalg::log_gamma2(cplx(args[0], 0.0), args[1], args[2],
                             qalg::HankelContour{})
                .value;
  } else {
    if (args.size() != 3)
      throw std::runtime_error("--fn b22 wants args: x w1 w2");
    value = qalg::bernoulli22(cplx(args[0], 0.0), cplx(args[1], 0.0),
                              cplx(args[2], 0.0));
  }
  std::printf("%.17g %.17g\n", value.real(), value.imag());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scaling-limit algebra toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  std::string config_path, s_hbar, s_eta, s_c, s_trunc, s_grid, s_out, s_fmt;
  std::vector<std::string> tols;
  verify->add_option("--config", config_path, "key=value config file");
  auto* o_hbar = verify->add_option("--hbar", s_hbar, "Planck constant");
  auto* o_eta = verify->add_option("--eta", s_eta, "coupling eta");
  auto* o_c = verify->add_option("--c", s_c, "central charge");
  auto* o_trunc = verify->add_option("--trunc", s_trunc, "series truncation");
  verify->add_option("--tol", tols, "gate override NAME=F");
  auto* o_grid = verify->add_option("--grid", s_grid, "sweep grid lo:hi:count");
  auto* o_out = verify->add_option("--out", s_out, "report path");
  auto* o_fmt = verify->add_option("--format", s_fmt, "json or csv");

  auto* probe = app.add_subcommand("probe", "map the resummability region");
  std::string target, hbar_range, eta_range;
  double probe_c = 1.0;
  probe->add_option("target", target, "only 'ordering' is mapped")->required();
  probe->add_option("--hbar-range", hbar_range, "lo:hi:count")->required();
  probe->add_option("--eta-range", eta_range, "lo:hi:count")->required();
  probe->add_option("--c", probe_c, "central charge");

  auto* specfun = app.add_subcommand("specfun", "special function utilities");
  auto* eval = specfun->add_subcommand("eval", "print one function value");
  std::string fn;
  std::vector<double> args;
  eval->add_option("--fn", fn, "gamma, gamma2 or b22")
      ->required()
      ->check(CLI::IsMember({"gamma", "gamma2", "b22"}));
  eval->add_option("--args", args, "numeric arguments")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      qalg::ToolkitConfig cfg = qalg::parse_config(config_path);
      if (o_hbar->count()) qalg::apply_setting(cfg, "hbar", s_hbar, "flag --hbar");
      if (o_eta->count()) qalg::apply_setting(cfg, "eta", s_eta, "flag --eta");
      if (o_c->count()) qalg::apply_setting(cfg, "c", s_c, "flag --c");
      if (o_trunc->count())
        qalg::apply_setting(cfg, "trunc", s_trunc, "flag --trunc");
      for (const auto& tol : tols) {
        const auto eq = tol.find('=');
        if (eq == std::string::npos)
          throw std::runtime_error("config flag --tol: expected NAME=F");
        qalg::apply_setting(cfg, "tol." + tol.substr(0, eq),
                            tol.substr(eq + 1), "flag --tol");
      }
      if (o_grid->count()) qalg::apply_setting(cfg, "grid", s_grid, "flag --grid");
      if (o_out->count()) qalg::apply_setting(cfg, "out", s_out, "flag --out");
      if (o_fmt->count())
        qalg::apply_setting(cfg, "format", s_fmt, "flag --format");
      return run_verify(suite, cfg);
    }
    if (probe->parsed()) {
      if (target != "ordering")
        throw std::runtime_error("probe target must be 'ordering'");
      return run_probe(hbar_range, eta_range, probe_c);
    }
    return run_specfun_eval(fn, args);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
}
