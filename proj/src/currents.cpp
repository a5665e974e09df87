// Half-currents of scalar test currents on the two analyticity strips.
// Everything here reduces to one-dimensional quadrature: the Laplace side
// integrates the spectrum against Fermi-type weights, the Cauchy side
// integrates the boundary values against 1/sh or cth kernels, and the
// identities under test (boundary jump, strip sum/difference, shift
// between the strips) hold exactly at the integrand level, so their
// residuals probe only the quadrature and the eps extrapolation.
#include "qalg/currents.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qalg/errors.hpp"

namespace qalg {

namespace {

constexpr double kSuperExp = 1e8;  // spectrum_decay at or above: faster than any exponential
const cplx kI(0.0, 1.0);

// 1/(1+e^x) without overflow for large |x|
double fermi(double x) {
  if (x > 0.0) {
    double t = std::exp(-x);
    return t / (1.0 + t);
  }
  return 1.0 / (1.0 + std::exp(x));
}

// 1/(1-e^x); the lambda = 0 pole is handled by the caller's pairing
double bose(double x) {
  if (x > 0.0) {
    double t = std::exp(-x);
    return -t / (1.0 - t);
  }
  return 1.0 / (1.0 - std::exp(x));
}

double lattice_distance(double x, double spacing) {
  double r = std::remainder(x, spacing);
  return std::abs(r);
}

double default_margin(const AlgebraParams& p) { return 1e-3 / p.eta; }

// Cauchy-kernel quadrature along the real axis.  When the nearest kernel
// pole sits a small distance below or above the contour the integrand
// peaks sharply near Re u, so that neighborhood gets panels scaled to
// the pole distance.
cplx integrate_near_pole(const std::function<cplx(double)>& f, double cut,
                         double coarse, double center, double dist) {
  if (dist >= 0.35)
    return integrate_gl(f, -cut, cut, coarse);
  double lo = std::max(-cut, center - 2.0);
  double hi = std::min(cut, center + 2.0);
  double fine = std::max(dist / 2.0, 2e-4);
  cplx acc = integrate_gl(f, lo, hi, fine);
  if (lo > -cut) acc += integrate_gl(f, -cut, lo, coarse);
  if (hi < cut) acc += integrate_gl(f, hi, cut, coarse);
  return acc;
}

// truncation for a lambda tail whose integrand grows like e^{a |lambda|}
// against a spectrum bounded by e^{-beta |lambda|}
double lambda_cut_side(double a, double beta) {
  double cut = 2.0 * std::max(a, 0.0) + 16.0;
  if (beta < kSuperExp) {
    double dec = beta - a;
    if (dec < 0.05)
      throw convergence_error(
          "laplace_half_current: spectral decay cannot beat the weight "
          "growth at this point");
    cut = std::max(cut, 41.0 / dec + 2.0);
  }
  return cut;
}

struct LaplaceKernel {
  std::function<double(double)> weight;  // everything except e^{i lambda u} and the spectrum
  double prefactor = 0.0;
  double a_plus = 0.0;   // growth exponent of weight as lambda -> +inf
  double a_minus = 0.0;  // growth exponent as lambda -> -inf (coefficient of |lambda|)
  bool principal_value = false;
};

LaplaceKernel laplace_kernel(char channel, char sign, cplx u,
                             const AlgebraParams& p) {
  double sg = (sign == '+') ? 1.0 : -1.0;
  double im = u.imag();
  LaplaceKernel k;
  if (channel == 'e') {
    double w4 = p.c * p.hbar / 4.0;
    k.prefactor = sg * std::sin(M_PI * p.eta * p.hbar) / (M_PI * p.eta);
    k.weight = [sg, w4, eta = p.eta](double l) {
      return std::exp(-sg * w4 * l) * fermi(sg * l / eta);
    };
    k.a_plus = -im - sg * w4 - (sg > 0.0 ? 1.0 / p.eta : 0.0);
    k.a_minus = im + sg * w4 - (sg < 0.0 ? 1.0 / p.eta : 0.0);
  } else if (channel == 'f') {
    double w4 = p.c * p.hbar / 4.0;
    k.prefactor = sg * std::sin(M_PI * p.eta_prime * p.hbar) / (M_PI * p.eta_prime);
    k.weight = [sg, w4, etap = p.eta_prime](double l) {
      return std::exp(sg * w4 * l) * fermi(sg * l / etap);
    };
    k.a_plus = -im + sg * w4 - (sg > 0.0 ? 1.0 / p.eta_prime : 0.0);
    k.a_minus = im - sg * w4 - (sg < 0.0 ? 1.0 / p.eta_prime : 0.0);
  } else if (channel == 'h' && p.c != 0.0) {
    k.prefactor = -std::sin(M_PI * p.eta * p.hbar) / (2.0 * M_PI * p.eta);
    k.weight = [sg, etadp = p.eta_dprime](double l) {
      return std::exp(-sg * l / (2.0 * etadp));
    };
    k.a_plus = -im - sg / (2.0 * p.eta_dprime);
    k.a_minus = im + sg / (2.0 * p.eta_dprime);
  } else if (channel == 'h') {
    // c = 0: weight 1/(1 - e^{lambda/eta}) taken as a principal value at
    // lambda = 0; the '-' family picks up -1/(1 - e^{-lambda/eta})
    k.prefactor = std::sin(M_PI * p.eta * p.hbar) / (M_PI * p.eta);
    k.weight = [sg, eta = p.eta](double l) { return sg * bose(sg * l / eta); };
    k.principal_value = true;
    if (sign == '+') {
      k.a_plus = -im - 1.0 / p.eta;
      k.a_minus = im;
    } else {
      k.a_plus = -im;
      k.a_minus = im - 1.0 / p.eta;
    }
  } else {
    throw std::invalid_argument("laplace_half_current: unknown channel");
  }
  return k;
}

double estimate_csv_decay(const std::vector<double>& v,
                          const std::vector<cplx>& e) {
  // slope of log|E| over the outer quarter of the sample range
  std::size_t n = v.size();
  std::size_t m = n - n / 4;
  double a1 = std::abs(e[m - 1]), a2 = std::abs(e[n - 1]);
  if (a2 <= 0.0) a2 = 1e-300;
  if (a1 <= a2) return 0.0;
  return std::log(a1 / a2) / (v[n - 1] - v[m - 1]);
}

}  // namespace

TestCurrent gaussian_current(char channel) {
  TestCurrent c;
  c.values = [](double v) { return cplx(std::exp(-v * v), 0.0); };
  c.spectrum = [](double l) {
    return cplx(std::sqrt(M_PI) * std::exp(-l * l / 4.0), 0.0);
  };
  c.decay_rate = 4.0;  // exp(-v^2) <= e^4 exp(-4|v|)
  c.spectrum_decay = kSuperExp;
  c.support = 6.5;
  c.channel = channel;
  return c;
}

TestCurrent sech_current(double eta, char channel) {
  if (eta <= 0.0) throw std::invalid_argument("sech_current: eta must be positive");
  TestCurrent c;
  double a = M_PI * eta;
  c.values = [a](double v) { return cplx(1.0 / std::cosh(a * v), 0.0); };
  c.spectrum = [eta](double l) {
    return cplx(1.0 / (eta * std::cosh(l / (2.0 * eta))), 0.0);
  };
  c.decay_rate = a;
  c.spectrum_decay = 1.0 / (2.0 * eta);
  c.support = 41.0 / a;
  c.channel = channel;
  return c;
}

TestCurrent rational_current(char channel) {
  TestCurrent c;
  c.values = [](double v) { return cplx(1.0 / (1.0 + v * v), 0.0); };
  c.spectrum = [](double l) { return cplx(M_PI * std::exp(-std::abs(l)), 0.0); };
  c.decay_rate = 0.0;  // polynomial tail, deliberately violates the precondition
  c.spectrum_decay = 1.0;
  c.support = 1e6;
  c.channel = channel;
  return c;
}

TestCurrent csv_current(const std::string& path, char channel,
                        double spectrum_decay) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("csv_current: cannot open " + path);
  std::vector<double> vs;
  std::vector<cplx> es;
  std::string line;
  while (std::getline(in, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == ';') ch = ' ';
    std::istringstream row(line);
    double v, re, im;
    if (row >> v >> re >> im) {
      vs.push_back(v);
      es.emplace_back(re, im);
    }
  }
  if (vs.size() < 8)
    throw std::invalid_argument("csv_current: need at least 8 sample rows");
  double dv = vs[1] - vs[0];
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (std::abs(vs[i] - vs[i - 1] - dv) > 1e-9 * std::max(1.0, std::abs(dv)))
      throw std::invalid_argument("csv_current: sample spacing must be uniform");

  TestCurrent c;
  c.values = [vs, es, dv](double v) -> cplx {
    if (v <= vs.front() || v >= vs.back()) return 0.0;
    double t = (v - vs.front()) / dv;
    std::size_t i = static_cast<std::size_t>(t);
    double frac = t - static_cast<double>(i);
    return es[i] * (1.0 - frac) + es[i + 1] * frac;
  };
  c.spectrum = [vs, es, dv](double l) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      double w = (i == 0 || i + 1 == vs.size()) ? 0.5 : 1.0;
      acc += w * es[i] * std::exp(-kI * l * vs[i]);
    }
    return acc * dv;
  };
  double est = estimate_csv_decay(vs, es);
  c.decay_rate = std::max(est, 0.5);
  c.spectrum_decay = spectrum_decay;
  c.support = std::max(std::abs(vs.front()), std::abs(vs.back()));
  c.channel = channel;
  return c;
}

void channel_strip(char channel, char sign, const AlgebraParams& p,
                   double& lo, double& hi) {
  double w4 = p.c * p.hbar / 4.0;
  if (channel == 'f') {
    if (sign == '+') {
      lo = w4 - 1.0 / p.eta_prime;
      hi = w4;
    } else {
      lo = -w4;
      hi = 1.0 / p.eta_prime - w4;
    }
    return;
  }
  // the h weights have no Fermi factor, so the h channel carries no sharp
  // strip of its own; it is gated by the same strips as e
  if (sign == '+') {
    lo = -1.0 / p.eta - w4;
    hi = -w4;
  } else {
    lo = w4;
    hi = 1.0 / p.eta + w4;
  }
}

HalfCurrentValue laplace_half_current(const TestCurrent& cur, cplx u,
                                      char sign, const AlgebraParams& p) {
  if (sign != '+' && sign != '-')
    throw std::invalid_argument("laplace_half_current: sign must be '+' or '-'");
  if (cur.decay_rate <= 0.0)
    throw convergence_error("laplace_half_current: current tail decays too slowly");
  double lo, hi;
  channel_strip(cur.channel, sign, p, lo, hi);
  if (!(u.imag() > lo && u.imag() < hi))
    throw strip_error("laplace_half_current: u outside the analyticity strip");

  LaplaceKernel k = laplace_kernel(cur.channel, sign, u, p);
  double cut = std::max(lambda_cut_side(k.a_plus, cur.spectrum_decay),
                        lambda_cut_side(k.a_minus, cur.spectrum_decay));
  double panel = std::min({1.0, 3.0 / (1.0 + std::abs(u.real())), 0.2 + 6.0 * p.eta});

  auto integrand = [&](double l) {
    return cur.spectrum(l) / (2.0 * M_PI) * std::exp(kI * l * u) * k.weight(l);
  };
  cplx total;
  if (k.principal_value) {
    auto paired = [&](double s) { return integrand(s) + integrand(-s); };
    total = integrate_gl(paired, 0.0, cut, panel);
  } else {
    total = integrate_gl(integrand, -cut, cut, panel);
  }
  return {k.prefactor * total, u, sign, 'l'};
}

HalfCurrentValue cauchy_half_current(const TestCurrent& cur, cplx u,
                                     char sign, const AlgebraParams& p,
                                     cplx s0) {
  if (sign != '+' && sign != '-')
    throw std::invalid_argument("cauchy_half_current: sign must be '+' or '-'");
  if (cur.decay_rate <= 0.0)
    throw convergence_error("cauchy_half_current: current tail decays too slowly");
  double sg = (sign == '+') ? 1.0 : -1.0;
  double margin = default_margin(p);
  double cut = std::max(cur.support, 41.0 / cur.decay_rate) + 2.0;
  double panel = std::min({1.0, 0.5 / p.eta, 0.5 / p.eta_prime});
  cplx value;
  if (cur.channel == 'e') {
    double dist = lattice_distance(u.imag() + sg * p.c * p.hbar / 4.0, 1.0 / p.eta);
    if (dist < margin)
      throw strip_error("cauchy_half_current: contour too close to a kernel pole");
    cplx shift = kI * sg * p.c * p.hbar / 4.0;
    auto f = [&](double v) {
      return cur.values(v) / std::sinh(M_PI * p.eta * (u - v + shift));
    };
    value = std::sin(M_PI * p.eta * p.hbar) / (2.0 * M_PI * kI) *
            integrate_near_pole(f, cut, panel, u.real(), dist);
  } else if (cur.channel == 'f') {
    double dist =
        lattice_distance(u.imag() - sg * p.c * p.hbar / 4.0, 1.0 / p.eta_prime);
    if (dist < margin)
      throw strip_error("cauchy_half_current: contour too close to a kernel pole");
    cplx shift = -kI * sg * p.c * p.hbar / 4.0;
    auto f = [&](double v) {
      return cur.values(v) / std::sinh(M_PI * p.eta_prime * (u - v + shift));
    };
    value = std::sin(M_PI * p.eta_prime * p.hbar) / (2.0 * M_PI * kI) *
            integrate_near_pole(f, cut, panel, u.real(), dist);
  } else if (cur.channel == 'h') {
    if (p.c != 0.0)
      throw std::invalid_argument(
          "cauchy_half_current: the cth form of the h channel requires c = 0");
    double dist = lattice_distance(u.imag(), 1.0 / p.eta);
    if (dist < margin)
      throw strip_error("cauchy_half_current: contour too close to a kernel pole");
    auto f = [&](double v) {
      cplx z = M_PI * p.eta * (v - u);
      return cur.values(v) * std::cosh(z) / std::sinh(z);
    };
    value = s0 + kI * std::sin(M_PI * p.eta * p.hbar) / (2.0 * M_PI) *
                     integrate_near_pole(f, cut, panel, u.real(), dist);
  } else {
    throw std::invalid_argument("cauchy_half_current: unknown channel");
  }
  return {value, u, sign, 'c'};
}

namespace {

// Richardson extrapolation to eps = 0 for a quantity with a smooth eps
// expansion; eps_seq must halve from term to term.
cplx extrapolate_eps(const std::function<cplx(double)>& g,
                     const std::vector<double>& eps_seq) {
  if (eps_seq.size() < 2)
    throw std::invalid_argument("eps extrapolation: need at least two eps values");
  for (std::size_t i = 0; i + 1 < eps_seq.size(); ++i) {
    if (!(eps_seq[i] > 0.0) || !(eps_seq[i + 1] > 0.0) ||
        std::abs(eps_seq[i + 1] / eps_seq[i] - 0.5) > 1e-9)
      throw std::invalid_argument("eps extrapolation: sequence must halve");
  }
  std::vector<cplx> r(eps_seq.size());
  for (std::size_t i = 0; i < eps_seq.size(); ++i) r[i] = g(eps_seq[i]);
  std::vector<cplx> lvl1(r.size() - 1);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) lvl1[i] = 2.0 * r[i + 1] - r[i];
  if (lvl1.size() == 1) return lvl1[0];
  std::vector<cplx> lvl2(lvl1.size() - 1);
  for (std::size_t i = 0; i + 1 < lvl1.size(); ++i)
    lvl2[i] = (4.0 * lvl1[i + 1] - lvl1[i]) / 3.0;
  return lvl2.back();
}

double jump_target_scale(const TestCurrent& cur, const AlgebraParams& p) {
  return cur.channel == 'f'
             ? std::sin(M_PI * p.eta_prime * p.hbar) / (M_PI * p.eta_prime)
             : std::sin(M_PI * p.eta * p.hbar) / (M_PI * p.eta);
}

}  // namespace

double ding_frenkel_residual(const TestCurrent& cur, double u_real,
                             const AlgebraParams& p,
                             const std::vector<double>& eps_seq) {
  if (cur.channel == 'h')
    throw std::invalid_argument(
        "ding_frenkel_residual: the jump relation pairs e or f half-currents");
  double w4 = p.c * p.hbar / 4.0;
  auto jump = [&](double eps) {
    cplx up, un;
    if (cur.channel == 'e') {
      up = cplx(u_real, -(w4 + eps));
      un = cplx(u_real, w4 + eps);
    } else {
      up = cplx(u_real, w4 - eps);
      un = cplx(u_real, -(w4 - eps));
    }
    return laplace_half_current(cur, up, '+', p).value -
           laplace_half_current(cur, un, '-', p).value;
  };
  cplx target = jump_target_scale(cur, p) * cur.values(u_real);
  cplx extrap = extrapolate_eps(jump, eps_seq);
  double direct = std::abs(jump(eps_seq.back()) - target);
  double res = std::abs(extrap - target);
  if (res > 1e-8 && res > 2.0 * direct)
    throw convergence_error("ding_frenkel_residual: extrapolation not converging");
  return res;
}

namespace {

// the two boundary approaches of e+ across its own strip
cplx eplus_top(const TestCurrent& cur, double u_real, double eps,
               const AlgebraParams& p) {
  double w4 = p.c * p.hbar / 4.0;
  return laplace_half_current(cur, cplx(u_real, -(w4 + eps)), '+', p).value;
}

cplx eplus_bottom(const TestCurrent& cur, double u_real, double eps,
                  const AlgebraParams& p) {
  double w4 = p.c * p.hbar / 4.0;
  return laplace_half_current(cur, cplx(u_real, -(1.0 / p.eta + w4) + eps), '+', p)
      .value;
}

}  // namespace

double boundary_sum_residual(const TestCurrent& cur, double u_real,
                             const AlgebraParams& p,
                             const std::vector<double>& eps_seq) {
  if (cur.channel != 'e')
    throw std::invalid_argument(
        "boundary_sum_residual: implemented for the e channel");
  auto g = [&](double eps) {
    return eplus_top(cur, u_real, eps, p) + eplus_bottom(cur, u_real, eps, p);
  };
  cplx target = jump_target_scale(cur, p) * cur.values(u_real);
  return std::abs(extrapolate_eps(g, eps_seq) - target);
}

double boundary_pv_residual(const TestCurrent& cur, double u_real,
                            const AlgebraParams& p,
                            const std::vector<double>& eps_seq) {
  if (cur.channel != 'e')
    throw std::invalid_argument(
        "boundary_pv_residual: implemented for the e channel");
  auto g = [&](double eps) {
    return eplus_top(cur, u_real, eps, p) - eplus_bottom(cur, u_real, eps, p);
  };
  cplx lhs = extrapolate_eps(g, eps_seq);

  // PV int E(v)/sh(pi eta (v-u)) dv by pairing v = u +- x
  double cut = cur.support + std::abs(u_real) + 41.0 / (M_PI * p.eta);
  auto paired = [&](double x) {
    return (cur.values(u_real + x) - cur.values(u_real - x)) /
           std::sinh(M_PI * p.eta * x);
  };
  cplx pv = integrate_gl(paired, 0.0, cut, std::min(1.0, 0.5 / p.eta));
  cplx rhs = kI * std::sin(M_PI * p.eta * p.hbar) / M_PI * pv;
  return std::abs(lhs - rhs);
}

double quasiperiodicity_residual(const TestCurrent& cur, cplx u,
                                 const AlgebraParams& p) {
  cplx shifted = u - kI / p.eta_dprime;
  cplx minus = laplace_half_current(cur, u, '-', p).value;
  cplx plus = laplace_half_current(cur, shifted, '+', p).value;
  // e and f flip sign across the period, h does not
  double flip = (cur.channel == 'h') ? -1.0 : 1.0;
  return std::abs(minus + flip * plus);
}

double analyticity_residual(const TestCurrent& cur, cplx u, char sign,
                            const AlgebraParams& p) {
  const double d = 2e-4;
  auto f = [&](cplx z) { return laplace_half_current(cur, z, sign, p).value; };
  cplx dre = (f(u + d) - f(u - d)) / (2.0 * d);
  cplx dim = (f(u + kI * d) - f(u - kI * d)) / (2.0 * kI * d);
  return std::abs(dre - dim);
}

double kappa_integrand_odd(double u, const AlgebraParams& p) {
  double t = std::tan(M_PI * p.eta * p.hbar);
  double tp = std::tan(M_PI * p.eta_prime * p.hbar);
  double c = 1.0 / std::tanh(M_PI * p.eta * u);
  double cp = 1.0 / std::tanh(M_PI * p.eta_prime * u);
  return (cp * tp - c * t) / (1.0 + cp * c * tp * t);
}

double kappa_integrand_limit(const AlgebraParams& p) {
  return std::tan(M_PI * (p.eta_prime - p.eta) * p.hbar);
}

double kappa_kernel(double tau, const AlgebraParams& p) {
  if (p.hbar * p.c <= 0.0)
    throw std::domain_error("kappa_kernel: defined for hbar*c > 0 only");
  if (tau == 0.0) return 0.0;
  double cut = 41.0 / (2.0 * M_PI * p.eta_prime) + 1.0;
  double panel = std::min(0.5 / p.eta_prime, 3.0 / (1.0 + std::abs(tau)));
  auto f = [&](double u) {
    return cplx(kappa_integrand_odd(u, p) * std::sin(tau * u), 0.0);
  };
  double body = integrate_gl(f, 0.0, cut, panel).real();
  double tail = kappa_integrand_limit(p) * std::cos(tau * cut) / tau;
  return (body + tail) / M_PI;
}

cplx kappa_kernel_complex(double tau, const AlgebraParams& p) {
  if (p.hbar * p.c <= 0.0)
    throw std::domain_error("kappa_kernel_complex: defined for hbar*c > 0 only");
  if (tau == 0.0) return 0.0;
  cplx th(0.0, std::tan(M_PI * p.eta * p.hbar));
  cplx thp(0.0, std::tan(M_PI * p.eta_prime * p.hbar));
  auto g = [&](double u) {
    cplx c = 1.0 / std::tanh(cplx(M_PI * p.eta * u, 0.0));
    cplx cp = 1.0 / std::tanh(cplx(M_PI * p.eta_prime * u, 0.0));
    return std::exp(-kI * tau * u) * (cp * thp - c * th) /
           (1.0 - cp * c * thp * th);
  };
  double cut = 41.0 / (2.0 * M_PI * p.eta_prime) + 1.0;
  double panel = std::min(0.5 / p.eta_prime, 3.0 / (1.0 + std::abs(tau)));
  cplx body = integrate_gl(g, -cut, 0.0, panel) + integrate_gl(g, 0.0, cut, panel);
  double tail = kappa_integrand_limit(p) * std::cos(tau * cut) / tau;
  return body / (2.0 * M_PI) + tail / M_PI;
}

}  // namespace qalg
