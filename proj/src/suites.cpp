// The six verification suites: every check wraps residual operations of
// one module and sweeps them over a parameter grid.  A point that lands
// on a pole, outside a strip, or in a divergent regime becomes a skipped
// sample; only genuine evaluation errors fail a check outright.
#include "qalg/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "qalg/currents.hpp"
#include "qalg/errors.hpp"
#include "qalg/evalrep.hpp"
#include "qalg/freefield.hpp"
#include "qalg/ordering.hpp"
#include "qalg/params.hpp"
#include "qalg/rmatrix.hpp"
#include "qalg/specfun.hpp"

namespace qalg {
namespace {

using cplx = std::complex<double>;

struct CheckDef {
  std::string name;
  double gate = 0.0;           // negative marks an informational check
  std::vector<double> params;  // empty: sweep the configured grid
  std::function<double(double)> residual;
};

std::string slug(const std::string& name) {
  std::string out;
  for (char ch : name) out.push_back(ch == ' ' ? '-' : ch);
  return out;
}

double mdiff(const MatX& a, const MatX& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

CheckResult run_check(const CheckDef& def, const std::string& suite,
                      const ToolkitConfig& cfg) {
  CheckResult out;
  out.name = def.name;
  const bool informational = def.gate < 0.0;
  double gate = def.gate;
  if (!informational) {
    if (auto it = cfg.tol_map.find(suite + "." + slug(def.name));
        it != cfg.tol_map.end())
      gate = it->second;
    else if (auto its = cfg.tol_map.find(suite); its != cfg.tol_map.end())
      gate = its->second;
  }
  out.gate = informational ? -1.0 : gate;

  const auto pts = def.params.empty() ? cfg.grid.points() : def.params;
  int evaluated = 0;
  bool hard_failure = false;
  for (double t : pts) {
    SamplePoint sp;
    sp.param = t;
    try {
      const double r = def.residual(t);
      if (std::isfinite(r)) {
        sp.residual = r;
        if (evaluated == 0 || r > out.max_residual) out.max_residual = r;
        ++evaluated;
      } else {
        sp.status = "skipped:nonfinite";
      }
    } catch (const pole_error&) {
      sp.status = "skipped:pole";
    } catch (const strip_error&) {
      sp.status = "skipped:strip";
    } catch (const convergence_error&) {
      sp.status = "skipped:divergent";
    } catch (const std::exception&) {
      sp.status = "skipped:error";
      hard_failure = true;
    }
    out.samples.push_back(sp);
  }
  if (evaluated == 0) out.max_residual = -1.0;
  out.pass = informational ||
             (!hard_failure && (evaluated == 0 || out.max_residual < gate));
  return out;
}

std::vector<CheckDef> specfun_defs(const AlgebraParams& p) {
  const HankelContour hc;
  std::vector<CheckDef> defs;
  defs.push_back(
      {"gamma loop identity", 1e-8, {}, [p, hc](double x) {
         const double w = 1.0 / p.eta;
         auto kern = [w](cplx lam) { return 1.0 / (1.0 - std::exp(-w * lam)); };
         const cplx got = hankel_log_integral(kern, cplx(x, 0.0), hc, 0.0).value;
         const cplx want = log_gamma(cplx(x / w, 0.0)) +
                           (x / w - 0.5) * (euler_gamma + std::log(w)) -
                           0.5 * std::log(2.0 * M_PI);
         return std::abs(got - want);
       }});
  defs.push_back(
      {"double gamma shift", 1e-8, {}, [p, hc](double x) {
         const double w1 = 2.0 * p.hbar, w2 = 1.0 / p.eta;
         const cplx lhs = log_gamma2(cplx(x + w1, 0.0), w1, w2, hc).value;
         const cplx rhs = log_gamma2(cplx(x, 0.0), w1, w2, hc).value -
                          log_gamma(cplx(x / w2, 0.0)) -
                          (x / w2 - 0.5) * std::log(w2) +
                          0.5 * std::log(2.0 * M_PI);
         return std::abs(lhs - rhs);
       }});
  defs.push_back(
      {"bernoulli reflection", 1e-12, {}, [p](double x) {
         const cplx w1(2.0 * p.hbar, 0.0), w2(1.0 / p.eta, 0.0);
         return std::abs(bernoulli22(cplx(x, 0.0), w1, w2) -
                         bernoulli22(w1 + w2 - x, w1, w2));
       }});
  return defs;
}

std::vector<CheckDef> rmatrix_defs(const AlgebraParams& p, int trunc) {
  std::vector<CheckDef> defs;
  defs.push_back({"unitarity", 1e-8, {}, [p, trunc](double t) {
                    return check_unitarity(cplx(t, 0.0), p, trunc);
                  }});
  const AlgebraParams pc(M_PI, p.eta, p.c);
  defs.push_back({"crossing", 1e-8, {}, [pc, trunc](double t) {
                    return check_crossing(cplx(t, 0.0), pc, trunc);
                  }});
  defs.push_back({"yang-baxter", 1e-8, {}, [p, trunc](double t) {
                    return check_ybe(cplx(t, 0.0), cplx(0.37 * t + 0.11, 0.0),
                                     cplx(-0.23 * t + 0.05, 0.0), p, trunc);
                  }});
  defs.push_back({"quasi-periodicity", 1e-7, {}, [p, trunc](double t) {
                    return check_quasiperiodicity(cplx(t, 0.0), p, trunc);
                  }});
  return defs;
}

std::vector<CheckDef> evalrep_defs(const AlgebraParams& p, int trunc) {
  std::vector<CheckDef> defs;
  defs.push_back(
      {"gauss coordinates", 1e-10, {}, [p, trunc](double t) {
         const cplx z(0.2, 0.0), u(0.5 * t, -0.1);
         const auto L = pi1_L(z, u, '+', p, trunc);
         const auto g = gauss_decompose(L, p);
         const auto m = build_module(1, p);
         double r = mdiff(g.e_coord, ev_generator('e', '+', u, z, m));
         r = std::max(r, mdiff(g.f_coord, ev_generator('f', '+', u, z, m)));
         r = std::max(r, mdiff(g.h_coord, ev_generator('h', '+', u, z, m)));
         return std::max(r, gauss_roundtrip_residual(L, p));
       }});
  defs.push_back(
      {"quantum determinant", 1e-6, {}, [p, trunc](double t) {
         const cplx z(0.0, 0.0);
         auto builder = [&](cplx uu) { return pi1_L(z, uu, '+', p, trunc); };
         const MatX q = qdet(builder, cplx(0.5 * t, -0.1), p);
         const MatX id = MatX::Identity(q.rows(), q.cols());
         return mdiff(q, -id);
       }});
  defs.push_back(
      {"rll spin half", 1e-8, {}, [p, trunc](double t) {
         double r = 0.0;
         for (const char* pair : {"++", "--", "+-"})
           r = std::max(r, rll_residual(cplx(0.3, 0.0), cplx(t, 0.0),
                                        cplx(0.3 * t - 0.25, 0.0), pair, 1, p,
                                        trunc));
         return r;
       }});
  defs.push_back(
      {"rll spin one", 1e-7, {}, [p, trunc](double t) {
         return rll_residual(cplx(0.1, 0.0), cplx(t, 0.0),
                             cplx(0.3 * t - 0.25, 0.0), "++", 2, p, trunc);
       }});
  defs.push_back({"sklyanin", 1e-11, {1.0, 2.0, 3.0, 4.0}, [p](double t) {
                    const int n = static_cast<int>(t + 0.5);
                    return sklyanin_residuals(n, cplx(0.0, 0.0), p).max();
                  }});
  defs.push_back(
      {"coproduct", 1e-6, {}, [p, trunc](double t) {
         const auto cr = coproduct_residuals(cplx(0.15, 0.0), cplx(-0.35, 0.0),
                                             cplx(t, 0.0),
                                             cplx(0.3 * t - 0.25, 0.0), p,
                                             trunc);
         return std::max({cr.rll, cr.qdet_prim, cr.coassoc});
       }});
  return defs;
}

std::vector<CheckDef> riemann_defs(const AlgebraParams& p) {
  const auto ge = gaussian_current('e');
  const auto gf = gaussian_current('f');
  const auto gh = gaussian_current('h');
  const auto se = sech_current(p.eta, 'e');
  std::vector<CheckDef> defs;
  defs.push_back(
      {"half-current agreement", 1e-8, {}, [p, ge, gf, se](double t) {
         double r = 0.0;
         for (const auto& cur : {ge, gf, se}) {
           for (char sgn : {'+', '-'}) {
             double lo = 0.0, hi = 0.0;
             channel_strip(cur.channel, sgn, p, lo, hi);
             const cplx u(t - 1.4, 0.5 * (lo + hi));
             const auto l = laplace_half_current(cur, u, sgn, p);
             const auto c = cauchy_half_current(cur, u, sgn, p);
             r = std::max(r, std::abs(l.value - c.value));
           }
         }
         return r;
       }});
  defs.push_back(
      {"ding-frenkel jump", 1e-6, {}, [p, ge, gf, se](double t) {
         double r = 0.0;
         for (const auto& cur : {ge, gf, se})
           r = std::max(r, ding_frenkel_residual(cur, t - 1.4, p));
         return r;
       }});
  defs.push_back({"boundary average", 1e-6, {}, [p, ge, se](double t) {
                    return std::max(boundary_sum_residual(ge, t - 1.4, p),
                                    boundary_sum_residual(se, t - 1.4, p));
                  }});
  defs.push_back({"boundary principal value", 1e-6, {}, [p, ge, se](double t) {
                    return std::max(boundary_pv_residual(ge, t - 1.4, p),
                                    boundary_pv_residual(se, t - 1.4, p));
                  }});
  defs.push_back(
      {"quasi-periodicity", 1e-7, {}, [p, ge, gf, gh, se](double t) {
         const cplx u(t - 1.4, 0.6);
         double r = 0.0;
         for (const auto& cur : {ge, gf, gh, se})
           r = std::max(r, quasiperiodicity_residual(cur, u, p));
         return r;
       }});
  defs.push_back({"kappa symmetry", 1e-10, {}, [p](double t) {
                    return std::abs(kappa_kernel(t, p) + kappa_kernel(-t, p)) +
                           std::abs(kappa_kernel_complex(t, p).imag());
                  }});
  return defs;
}

std::vector<CheckDef> ordering_defs(const AlgebraParams& p) {
  using enum KernelKind;
  std::vector<KernelKind> resummable = {he, hf};
  if (p.hbar * p.c > 0.0) resummable.push_back(hh);
  std::vector<KernelKind> all = {he, hf, ee, ff};
  if (p.hbar * p.c > 0.0) all.push_back(hh);
  std::vector<CheckDef> defs;
  defs.push_back(
      {"spectral symmetry", 1e-10, {}, [p, all](double w) {
         double r = 0.0;
         for (auto kind : all) {
           const cplx ph = phi_hat(kind, w, p);
           r = std::max(r, std::abs(ph.real()) +
                               std::abs(phi_hat(kind, -w, p) + ph));
         }
         return r;
       }});
  defs.push_back(
      {"series convergence", 1e-6, {}, [p, resummable](double tau) {
         double r = 0.0;
         bool certified = false;
         for (auto kind : resummable) {
           // the order-30 comparison only certifies the gate while the
           // geometric tail sup^31 / (1 - sup) stays under it
           const double sup = phi_hat_sup(kind, p);
           if (!(sup < 1.0) || !(std::pow(sup, 31) / (1.0 - sup) < 5e-7))
             continue;
           const auto res =
               ordering_kernel(kind, tau, p, OrderingMethod::resummed);
           const auto ser =
               ordering_kernel(kind, tau, p, OrderingMethod::series, 30);
           r = std::max(r, std::abs(res.value - ser.value));
           certified = true;
         }
         if (!certified)
           throw convergence_error("series order 30 cannot reach the gate");
         return r;
       }});
  defs.push_back(
      {"delta mass", 1e-12, {1.0}, [p, resummable](double tau) {
         double r = 0.0;
         for (auto kind : resummable) {
           const auto res =
               ordering_kernel(kind, tau, p, OrderingMethod::resummed);
           const cplx q = phi_hat_limit(kind, p);
           r = std::max(r,
                        std::abs(res.delta_mass - (q / (1.0 - q)).real()));
         }
         return r;
       }});
  defs.push_back({"resummability", -1.0, {0.0}, [p, resummable](double) {
                    double s = 0.0;
                    for (auto kind : resummable)
                      s = std::max(s, phi_hat_sup(kind, p));
                    return s;
                  }});
  defs.push_back(
      {"grid convolution", 1e-6, {0.0}, [p](double) {
         return std::max(grid_convolution_residual(KernelKind::he, p),
                         grid_convolution_residual(KernelKind::hf, p));
       }});
  defs.push_back({"cosine map", 1e-6, {}, [p](double w) {
                    return cosine_map_residual(KernelKind::he, w, 0.7, p);
                  }});
  // trend toward the one-sided rate hbar as eta shrinks, fixed probe point
  defs.push_back({"volterra rate", 0.05, {0.0}, [](double) {
                    return std::abs(volterra_decay_rate(0.5, 0.1) - 0.5);
                  }});
  return defs;
}

std::vector<CheckDef> freefield_defs(const AlgebraParams& p) {
  using enum Vertex;
  std::vector<CheckDef> defs;
  defs.push_back(
      {"contraction catalog", 1e-6, {}, [p](double t) {
         const std::pair<Vertex, Vertex> pairs[] = {
             {Z, E}, {E, F}, {Z, Zp}, {Hp, Hm}, {Z, Z}};
         double r = 0.0;
         for (auto [a, b] : pairs) {
           const double edge = contraction_strip_edge(a, b, p);
           const cplx w(0.3 * t - 0.4, edge + 0.8);
           const cplx quad = contraction_quadrature(a, b, w, cplx(0.0), p);
           const cplx closed = contraction_closed_form(a, b, w, cplx(0.0), p);
           r = std::max(r, std::abs(quad / closed - 1.0));
         }
         return r;
       }});
  defs.push_back(
      {"exchange relations", 1e-6, {}, [p](double t) {
         const std::pair<Vertex, Vertex> pairs[] = {
             {E, E}, {F, F}, {Hp, E}, {Hm, F}, {Hp, Hm}, {Hp, Hp}};
         double r = 0.0;
         for (auto [a, b] : pairs)
           r = std::max(r, exchange_ratio_residual(a, b, cplx(t, 0.0), p));
         return r;
       }});
  defs.push_back(
      {"ef pole structure", 1e-8, {0.0}, [p](double) {
         double r = 0.0;
         for (const auto& pole : ef_pole_check(p)) {
           const cplx half(0.0, 0.5 * p.hbar);
           r = std::max(r, std::min(std::abs(pole.position - half),
                                    std::abs(pole.position + half)) +
                               pole.exponent_residual);
         }
         return r;
       }});
  defs.push_back(
      {"intertwiner ratios", 1e-6, {}, [p](double t) {
         const cplx u(0.4 * t, 0.0), z(-0.2, 0.0);
         return std::max({intertwiner_ratio_residual('+', u, z, p),
                          intertwiner_ratio_residual('-', u, z, p),
                          fz_anticommutation_residual(u, z, p),
                          zzprime_exchange_residual(cplx(0.15 * t, 0.0),
                                                    cplx(-0.1, 0.0), p)});
       }});
  defs.push_back(
      {"normalization constants", 1e-5, {0.0}, [p](double) {
         const auto closed = zf_constants(p);
         const auto quad = zf_constants_quadrature(p);
         return std::max(std::abs(closed.g / quad.g - 1.0),
                         std::abs(closed.g_prime / quad.g_prime - 1.0));
       }});
  defs.push_back({"lukyanov exponents", 1e-12, {}, [p](double t) {
                    return luk_exponent_residual(0.6 * t - 0.8, p);
                  }});
  defs.push_back({"lukyanov scalar", 1e-5, {0.0}, [p](double) {
                    return luk_scalar_residual(p);
                  }});
  defs.push_back({"miki composition", 1e-6, {0.0}, [p](double) {
                    return std::max(miki_diagonal_residual(p),
                                    std::abs(miki_prefactor(p) - 1.0));
                  }});
  return defs;
}

SuiteReport run_one(const std::string& suite, const ToolkitConfig& cfg) {
  const AlgebraParams p = suite_params(cfg, suite);
  std::vector<CheckDef> defs;
  if (suite == "specfun")
    defs = specfun_defs(p);
  else if (suite == "rmatrix")
    defs = rmatrix_defs(p, cfg.trunc);
  else if (suite == "evalrep")
    defs = evalrep_defs(p, cfg.trunc);
  else if (suite == "riemann")
    defs = riemann_defs(p);
  else if (suite == "ordering")
    defs = ordering_defs(p);
  else
    defs = freefield_defs(p);

  SuiteReport rep;
  rep.suite = suite;
  rep.hbar = p.hbar;
  rep.eta = p.eta;
  rep.eta_prime = p.eta_prime;
  rep.c = p.c;
  rep.trunc = cfg.trunc;
  for (const auto& def : defs) rep.checks.push_back(run_check(def, suite, cfg));
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.name < b.name;
            });
  rep.overall_pass = true;
  for (const auto& chk : rep.checks) rep.overall_pass &= chk.pass;
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "specfun", "rmatrix", "evalrep", "riemann", "ordering", "freefield"};
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& name,
                                    const ToolkitConfig& cfg) {
  validate_config(cfg);
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& suite : suite_names()) out.push_back(run_one(suite, cfg));
    return out;
  }
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown suite '" + name + "'");
  out.push_back(run_one(name, cfg));
  return out;
}

}  // namespace qalg
