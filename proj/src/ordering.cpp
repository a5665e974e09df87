// Ordering kernels and their iterated convolutions.  The convolution
// theorem turns the n-fold PV convolutions into powers of the spectra,
// which are elementary th/cth expressions; pointwise values come back
// through one Fourier integral after the constant-plus-step part of the
// spectrum (which carries the delta mass and the 1/tau tail) is removed
// analytically.
#include "qalg/ordering.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qalg/errors.hpp"
#include "qalg/specfun.hpp"

namespace qalg {

namespace {

const cplx kI(0.0, 1.0);

double coth(double x) { return 1.0 / std::tanh(x); }

// kernel-family scale: the spectra approach their limits at rate
// 2 pi (this eta)
double kind_eta(KernelKind kind, const AlgebraParams& p) {
  switch (kind) {
    case KernelKind::he:
    case KernelKind::ee:
      return p.eta;
    default:
      return p.eta_prime;
  }
}

void require_hh_domain(KernelKind kind, const AlgebraParams& p) {
  if (kind == KernelKind::hh && p.hbar * p.c <= 0.0)
    throw std::domain_error("ordering kernel hh: defined for hbar*c > 0 only");
}

}  // namespace

double phi_tau(KernelKind kind, double tau, const AlgebraParams& p) {
  require_hh_domain(kind, p);
  if (kind == KernelKind::hh) return -kappa_kernel(tau, p);
  if (std::abs(tau) < 1e-12)
    throw pole_error("phi_tau: kernel has a pole at tau = 0");
  double t = std::tanh(M_PI * p.eta * p.hbar);
  double tp = std::tanh(M_PI * p.eta_prime * p.hbar);
  switch (kind) {
    case KernelKind::he:
      return t / (2.0 * M_PI * p.eta * std::sinh(tau / (2.0 * p.eta)));
    case KernelKind::hf:
      return -tp / (2.0 * M_PI * p.eta_prime * std::sinh(tau / (2.0 * p.eta_prime)));
    case KernelKind::ee:
      return -t * coth(tau / (2.0 * p.eta)) / (2.0 * M_PI * p.eta);
    default:
      return tp * coth(tau / (2.0 * p.eta_prime)) / (2.0 * M_PI * p.eta_prime);
  }
}

cplx phi_hat(KernelKind kind, double omega, const AlgebraParams& p) {
  require_hh_domain(kind, p);
  double t = std::tanh(M_PI * p.eta * p.hbar);
  double tp = std::tanh(M_PI * p.eta_prime * p.hbar);
  switch (kind) {
    case KernelKind::he:
      return -kI * t * std::tanh(M_PI * p.eta * omega);
    case KernelKind::hf:
      return kI * tp * std::tanh(M_PI * p.eta_prime * omega);
    case KernelKind::ee:
      if (omega == 0.0) throw pole_error("phi_hat: ee spectrum has a pole at 0");
      return kI * t * coth(M_PI * p.eta * omega);
    case KernelKind::ff:
      if (omega == 0.0) throw pole_error("phi_hat: ff spectrum has a pole at 0");
      return -kI * tp * coth(M_PI * p.eta_prime * omega);
    default:
      return kI * kappa_integrand_odd(omega, p);
  }
}

cplx phi_hat_limit(KernelKind kind, const AlgebraParams& p) {
  require_hh_domain(kind, p);
  double t = std::tanh(M_PI * p.eta * p.hbar);
  double tp = std::tanh(M_PI * p.eta_prime * p.hbar);
  switch (kind) {
    case KernelKind::he:
      return -kI * t;
    case KernelKind::hf:
      return kI * tp;
    case KernelKind::ee:
      return kI * t;
    case KernelKind::ff:
      return -kI * tp;
    default:
      return kI * kappa_integrand_limit(p);
  }
}

double phi_hat_sup(KernelKind kind, const AlgebraParams& p) {
  require_hh_domain(kind, p);
  switch (kind) {
    case KernelKind::he:
      return std::tanh(M_PI * p.eta * p.hbar);
    case KernelKind::hf:
      return std::tanh(M_PI * p.eta_prime * p.hbar);
    case KernelKind::ee:
    case KernelKind::ff:
      return std::numeric_limits<double>::infinity();
    default:
      break;
  }
  // hh: bounded spectrum, located by scan plus parabolic refinement
  double hi = 20.0 / p.eta_prime;
  int n = 4000;
  double best = std::abs(kappa_integrand_limit(p)), best_w = hi;
  for (int j = 1; j <= n; ++j) {
    double w = hi * j / n;
    double v = std::abs(kappa_integrand_odd(w, p));
    if (v > best) {
      best = v;
      best_w = w;
    }
  }
  double step = hi / n;
  for (double w = best_w - step; w <= best_w + step; w += step / 50.0)
    if (w > 0.0) best = std::max(best, std::abs(kappa_integrand_odd(w, p)));
  return best;
}

namespace {

// (1/2pi) int (Bhat(omega) - step) e^{i omega tau} d omega plus the
// closed-form transform -beta/(pi tau) of the step; the split integration
// keeps mirrored nodes so odd poles at omega = 0 cancel pairwise
double pointwise_ift(const std::function<cplx(double)>& bhat, cplx a_inf,
                     double tau, double eta_scale, double slack) {
  double alpha = a_inf.real(), beta = a_inf.imag();
  double cut = (44.0 + slack) / (2.0 * M_PI * eta_scale) + 2.0;
  double panel = std::min(0.6 / eta_scale, 3.0 / (1.0 + std::abs(tau)));
  auto f = [&](double w) {
    cplx step(alpha, w >= 0.0 ? beta : -beta);
    return (bhat(w) - step) * std::exp(kI * w * tau);
  };
  cplx body = integrate_gl(f, -cut, 0.0, panel) + integrate_gl(f, 0.0, cut, panel);
  return body.real() / (2.0 * M_PI) - beta / (M_PI * tau);
}

}  // namespace

OrderingValue ordering_kernel(KernelKind kind, double tau,
                              const AlgebraParams& p, OrderingMethod method,
                              int order) {
  require_hh_domain(kind, p);
  if (order < 0) throw std::invalid_argument("ordering_kernel: order < 0");
  if (std::abs(tau) < 1e-12)
    throw pole_error(
        "ordering_kernel: pointwise value undefined at tau = 0; the delta "
        "mass is reported separately");

  OrderingValue r;
  r.sup_phi_hat = phi_hat_sup(kind, p);
  cplx q_inf = phi_hat_limit(kind, p);

  if (method == OrderingMethod::resummed) {
    if (r.sup_phi_hat >= 1.0)
      throw convergence_error(
          "ordering_kernel: sup|phi_hat| >= 1, the iterated series does not "
          "converge to the resummed kernel");
    cplx a_inf = q_inf / (1.0 - q_inf);
    r.delta_mass = a_inf.real();
    auto bhat = [&](double w) {
      cplx q = phi_hat(kind, w, p);
      return q / (1.0 - q);
    };
    double slack = 2.0 * std::log(1.0 / (1.0 - r.sup_phi_hat) + 1.0) + 4.0;
    r.value = pointwise_ift(bhat, a_inf, tau, kind_eta(kind, p), slack);
    return r;
  }

  cplx a_inf = 0.0, pw = 1.0;
  for (int m = 0; m <= order; ++m) {
    pw *= q_inf;
    a_inf += pw;
  }
  r.delta_mass = a_inf.real();
  if (!std::isfinite(r.sup_phi_hat) && order >= 1) {
    // powers of the cth pole are no longer principal-value integrable
    r.divergent = true;
    r.value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  auto bhat = [&](double w) {
    cplx q = phi_hat(kind, w, p), acc = 0.0, qp = 1.0;
    for (int m = 0; m <= order; ++m) {
      qp *= q;
      acc += qp;
    }
    return acc;
  };
  double slack = 2.0 * std::log(static_cast<double>(order) + 2.0) + 4.0;
  r.value = pointwise_ift(bhat, a_inf, tau, kind_eta(kind, p), slack);
  return r;
}

double grid_convolution_residual(KernelKind kind, const AlgebraParams& p,
                                 int grid_size) {
  if (kind != KernelKind::he && kind != KernelKind::hf)
    throw std::invalid_argument(
        "grid_convolution_residual: needs a decaying kernel (he or hf)");
  int n = grid_size;
  double ek = kind_eta(kind, p);
  double half = 40.0 * 2.0 * ek;
  double dt = 2.0 * half / n;

  int m = 2 * n;  // zero-padded once to keep the convolution linear
  std::vector<fftw_complex> in(m), freq(m);
  for (int j = 0; j < m; ++j) {
    cplx v = 0.0;
    if (j < n) {
      double tau = -half + (j + 0.5) * dt;
      v = phi_tau(kind, tau, p);
    }
    in[j][0] = v.real();
    in[j][1] = v.imag();
  }
  fftw_plan fwd = fftw_plan_dft_1d(m, in.data(), freq.data(), FFTW_FORWARD,
                                   FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  for (int j = 0; j < m; ++j) {
    cplx v(freq[j][0], freq[j][1]);
    v *= v;
    freq[j][0] = v.real();
    freq[j][1] = v.imag();
  }
  fftw_plan bwd = fftw_plan_dft_1d(m, freq.data(), in.data(), FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);
  // linear convolution index k corresponds to tau = -2 half + (k+1) dt
  auto conv_at = [&](int k) { return cplx(in[k][0], in[k][1]) * dt / double(m); };

  auto bhat2 = [&](double w) {
    cplx q = phi_hat(kind, w, p);
    return q * q;
  };
  cplx a_inf = phi_hat_limit(kind, p) * phi_hat_limit(kind, p);

  double worst = 0.0;
  for (double tau_target = -half / 3.0; tau_target <= half / 3.0;
       tau_target += half / 9.0) {
    if (std::abs(tau_target) < 0.3) continue;  // delta mass smears over the origin
    int k = static_cast<int>(std::lround((tau_target + 2.0 * half) / dt - 1.0));
    double tau = -2.0 * half + (k + 1) * dt;
    double ref = pointwise_ift(bhat2, a_inf, tau, ek, 6.0);
    worst = std::max(worst, std::abs(conv_at(k) - ref));
  }
  return worst;
}

double cosine_map_residual(KernelKind kind, double omega, double s,
                           const AlgebraParams& p) {
  require_hh_domain(kind, p);
  if (s <= 0.0 || omega == 0.0)
    throw std::invalid_argument("cosine_map_residual: need s > 0, omega != 0");
  double ek = kind_eta(kind, p);
  double d = std::min(s / 2.0, 1.0);
  double horizon = s + 88.0 * ek + 6.0;
  double panel = std::min(0.6 / ek + 0.2, 3.0 / (1.0 + std::abs(omega)));
  auto ph = [&](double x) { return phi_tau(kind, x, p); };
  auto direct = [&](double t) {
    return cplx((ph(s - t) + ph(s + t)) * std::cos(omega * t), 0.0);
  };
  // window around the t = s pole, folded so the odd singularity cancels
  auto folded = [&](double x) {
    double a = ph(x) * (std::cos(omega * (s - x)) - std::cos(omega * (s + x)));
    double b = ph(2.0 * s + x) * std::cos(omega * (s + x)) +
               ph(2.0 * s - x) * std::cos(omega * (s - x));
    return cplx(a + b, 0.0);
  };
  cplx acc = integrate_gl(folded, 0.0, d, panel);
  if (s - d > 1e-12) acc += integrate_gl(direct, 0.0, s - d, panel);
  acc += integrate_gl(direct, s + d, horizon, panel);

  double target = (kI * phi_hat(kind, omega, p)).real() * std::sin(omega * s);
  return std::abs(acc.real() - target);
}

double volterra_decay_rate(double hbar, double eta, double horizon) {
  AlgebraParams p(hbar, eta, 0.0);
  double dt = std::min(eta / 2.0, 0.02);
  int n = static_cast<int>(horizon / dt) + 1;
  std::vector<double> s(n), w(n, dt);
  for (int i = 0; i < n; ++i) s[i] = i * dt;
  w[0] = w[n - 1] = dt / 2.0;

  Eigen::MatrixXd K(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // the odd diagonal singularity of phi(s-t) integrates to zero
      double v = (i == j) ? 0.0 : phi_tau(KernelKind::ee, s[i] - s[j], p);
      double x = s[i] + s[j];
      v += (x < 1e-12) ? 0.0 : phi_tau(KernelKind::ee, x, p);
      K(i, j) = v * w[j];
    }
  Eigen::MatrixXd R =
      (Eigen::MatrixXd::Identity(n, n) - K).partialPivLu().solve(K);

  // fit ln|R(s, t0)| against s on the causal side
  int j0 = static_cast<int>(0.15 * horizon / dt);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int i = 0; i < n; ++i) {
    if (s[i] < s[j0] + 0.8 || s[i] > horizon - 0.3) continue;
    double y = std::log(std::abs(R(i, j0) / w[j0]));
    sx += s[i];
    sy += y;
    sxx += s[i] * s[i];
    sxy += s[i] * y;
    ++cnt;
  }
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return -slope;
}

}  // namespace qalg
