// Ordering kernels: closed spectra against quadrature, the spectral
// series against direct convolution, divergence reporting, and the
// small-eta resolvent trend.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qalg/errors.hpp"
#include "qalg/ordering.hpp"
#include "qalg/specfun.hpp"

using namespace qalg;

namespace {

// spectrum by sine quadrature with an Abel tail for the cth kernels
cplx phi_hat_oracle(KernelKind kind, double omega, const AlgebraParams& p) {
  double ek = (kind == KernelKind::he || kind == KernelKind::ee) ? p.eta
                                                                 : p.eta_prime;
  double horizon = 88.0 * ek + 8.0;
  auto f = [&](double tau) {
    return cplx(phi_tau(kind, tau, p) * std::sin(omega * tau), 0.0);
  };
  cplx body = integrate_gl(f, 0.0, horizon, std::min(0.6 * ek + 0.2, 2.0 / (1.0 + omega)));
  double t = std::tanh(M_PI * p.eta * p.hbar);
  double tp = std::tanh(M_PI * p.eta_prime * p.hbar);
  double phi_inf = 0.0;
  if (kind == KernelKind::ee) phi_inf = -t / (2.0 * M_PI * p.eta);
  if (kind == KernelKind::ff) phi_inf = tp / (2.0 * M_PI * p.eta_prime);
  cplx tail = phi_inf * std::cos(omega * horizon) / omega;
  return -2.0 * cplx(0.0, 1.0) * (body + tail);
}

// PV int phi(tau - sigma) phi(sigma) d sigma, poles at sigma = 0 and
// sigma = tau removed by pairing
double pv_convolution_oracle(KernelKind kind, double tau, const AlgebraParams& p) {
  REQUIRE(tau > 0.0);
  auto ph = [&](double x) { return phi_tau(kind, x, p); };
  auto J = [&](double s) {
    return cplx(ph(s) * (ph(tau - s) - ph(tau + s)), 0.0);
  };
  double d = std::min(tau / 2.0, 1.0);
  double horizon = tau + 88.0 * p.eta + 8.0;
  double panel = 0.5;
  auto folded = [&](double x) {
    double v = ph(x) * (ph(tau - x) - ph(tau + x)) -
               (ph(tau - x) * ph(2.0 * tau - x) + ph(tau + x) * ph(2.0 * tau + x));
    return cplx(v, 0.0);
  };
  cplx acc = integrate_gl(folded, 0.0, d, panel);
  if (tau - d > 1e-12) acc += integrate_gl(J, 0.0, tau - d, panel);
  acc += integrate_gl(J, tau + d, horizon, panel);
  return acc.real();
}

}  // namespace

TEST_CASE("closed spectra match their sine transforms") {
  AlgebraParams p(0.3, 0.7, 1.0);
  for (auto kind : {KernelKind::he, KernelKind::hf, KernelKind::ee, KernelKind::ff}) {
    for (double omega : {0.3, 1.1}) {
      cplx closed = phi_hat(kind, omega, p);
      cplx oracle = phi_hat_oracle(kind, omega, p);
      CHECK(std::abs(closed - oracle) < 1e-8);
      // real odd kernels have purely imaginary hermitian spectra
      CHECK(std::abs(closed.real()) < 1e-14);
      CHECK(std::abs(phi_hat(kind, -omega, p) + closed) < 1e-14);
    }
  }
}

TEST_CASE("spectral round trip reproduces the bare kernels pointwise") {
  AlgebraParams p(0.3, 0.7, 1.0);
  for (auto kind : {KernelKind::he, KernelKind::hf, KernelKind::ee,
                    KernelKind::ff, KernelKind::hh}) {
    for (double tau : {0.5, 0.9, -1.3}) {
      auto v = ordering_kernel(kind, tau, p, OrderingMethod::series, 0);
      CHECK(std::abs(v.value - phi_tau(kind, tau, p)) < 1e-10);
      CHECK(v.delta_mass == 0.0);
      CHECK_FALSE(v.divergent);
    }
  }
}

TEST_CASE("one convolution order matches direct principal-value quadrature") {
  AlgebraParams p(0.3, 0.7, 1.0);
  for (double tau : {0.9, 1.7}) {
    double direct = phi_tau(KernelKind::he, tau, p) +
                    pv_convolution_oracle(KernelKind::he, tau, p);
    auto v = ordering_kernel(KernelKind::he, tau, p, OrderingMethod::series, 1);
    CHECK(std::abs(v.value - direct) < 1e-8);
  }
}

TEST_CASE("the series converges to the resummed kernel when sup < 1") {
  AlgebraParams pe(0.1, 1.0, 1.0);
  auto res = ordering_kernel(KernelKind::he, 0.7, pe, OrderingMethod::resummed);
  CHECK(res.sup_phi_hat < 1.0);
  auto s20 = ordering_kernel(KernelKind::he, 0.7, pe, OrderingMethod::series, 20);
  CHECK(std::abs(s20.value - res.value) < 1e-6);
  // delta mass of the geometric limit
  cplx q = phi_hat_limit(KernelKind::he, pe);
  CHECK(std::abs(res.delta_mass - (q / (1.0 - q)).real()) < 1e-12);
}

TEST_CASE("partial sums form a Cauchy sequence at the default parameters") {
  AlgebraParams p(0.3, 0.7, 1.0);
  double prev = 1e300;
  for (int n : {2, 4, 8}) {
    auto a = ordering_kernel(KernelKind::he, 0.9, p, OrderingMethod::series, n);
    auto b = ordering_kernel(KernelKind::he, 0.9, p, OrderingMethod::series, 2 * n);
    double gap = std::abs(a.value - b.value);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("cth spectra diverge: flagged in series form, fatal when resummed") {
  AlgebraParams p(0.3, 0.7, 1.0);
  for (auto kind : {KernelKind::ee, KernelKind::ff}) {
    CHECK(std::isinf(phi_hat_sup(kind, p)));
    auto v = ordering_kernel(kind, 0.9, p, OrderingMethod::series, 2);
    CHECK(v.divergent);
    CHECK(std::isnan(v.value));
    CHECK_THROWS_AS(ordering_kernel(kind, 0.9, p, OrderingMethod::resummed),
                    convergence_error);
  }
}

TEST_CASE("the hh kernel resums at the default parameters") {
  AlgebraParams p(0.3, 0.7, 1.0);
  double sup = phi_hat_sup(KernelKind::hh, p);
  CHECK(sup < 1.0);
  CHECK(sup > 0.0);
  auto v = ordering_kernel(KernelKind::hh, 0.9, p, OrderingMethod::resummed);
  CHECK(std::isfinite(v.value));
  cplx q = phi_hat_limit(KernelKind::hh, p);
  CHECK(std::abs(v.delta_mass - (q / (1.0 - q)).real()) < 1e-12);
  AlgebraParams p0(0.3, 0.7, 0.0);
  CHECK_THROWS_AS(ordering_kernel(KernelKind::hh, 0.9, p0, OrderingMethod::series, 0),
                  std::domain_error);
}

TEST_CASE("staggered-grid fft convolution agrees with the spectral route") {
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK(grid_convolution_residual(KernelKind::he, p) < 1e-6);
  CHECK(grid_convolution_residual(KernelKind::hf, p) < 1e-6);
  CHECK_THROWS_AS(grid_convolution_residual(KernelKind::ee, p),
                  std::invalid_argument);
}

TEST_CASE("the symmetrized kernel maps cosines to sines") {
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK(cosine_map_residual(KernelKind::he, 0.8, 1.1, p) < 1e-8);
  CHECK(cosine_map_residual(KernelKind::ee, 1.3, 0.7, p) < 1e-8);
  CHECK(cosine_map_residual(KernelKind::hf, 0.5, 0.9, p) < 1e-8);
}

TEST_CASE("small eta: the resolvent decays at the one-sided exponential rate") {
  double r20 = volterra_decay_rate(0.5, 0.2);
  double r10 = volterra_decay_rate(0.5, 0.1);
  double r05 = volterra_decay_rate(0.5, 0.05);
  CHECK(std::abs(r10 - 0.5) / 0.5 < 0.05);
  CHECK(std::abs(r05 - 0.5) / 0.5 < 0.02);
  CHECK(std::abs(r10 - 0.5) < std::abs(r20 - 0.5));
  CHECK(std::abs(r05 - 0.5) < std::abs(r10 - 0.5));
}

TEST_CASE("poles and the excluded origin") {
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK_THROWS_AS(phi_tau(KernelKind::he, 0.0, p), pole_error);
  CHECK_THROWS_AS(phi_hat(KernelKind::ee, 0.0, p), pole_error);
  CHECK_THROWS_AS(ordering_kernel(KernelKind::he, 0.0, p, OrderingMethod::resummed),
                  pole_error);
  // hh vanishes at the origin in tau space but the machinery still
  // reports the delta mass separately
  CHECK(phi_tau(KernelKind::hh, 0.0, p) == 0.0);
}
