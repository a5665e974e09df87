// Half-current transforms: Laplace against Cauchy representations, the
// boundary jump and strip relations, quasi-periodicity, and the kappa
// kernel, all on scalar test currents.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "qalg/currents.hpp"
#include "qalg/errors.hpp"

using namespace qalg;

namespace {

TestCurrent zero_current(char channel) {
  TestCurrent z;
  z.values = [](double) { return cplx(0.0); };
  z.spectrum = [](double) { return cplx(0.0); };
  z.decay_rate = 1.0;
  z.spectrum_decay = 1e9;
  z.support = 1.0;
  z.channel = channel;
  return z;
}

}  // namespace

TEST_CASE("laplace and cauchy representations agree on the gaussian current") {
  AlgebraParams p(0.3, 0.7, 1.0);
  auto ge = gaussian_current('e');
  for (cplx u : {cplx(0.4, -0.5), cplx(-1.1, -0.2), cplx(0.0, -1.3)}) {
    auto l = laplace_half_current(ge, u, '+', p);
    auto c = cauchy_half_current(ge, u, '+', p);
    CHECK(std::abs(l.value - c.value) < 1e-8);
    CHECK(l.sign == '+');
    CHECK(l.method == 'l');
    CHECK(c.method == 'c');
  }
  for (cplx u : {cplx(0.3, 0.6), cplx(-0.7, 1.2)}) {
    auto l = laplace_half_current(ge, u, '-', p);
    auto c = cauchy_half_current(ge, u, '-', p);
    CHECK(std::abs(l.value - c.value) < 1e-8);
  }
}

TEST_CASE("f channel carries its own strips and weights") {
  AlgebraParams p(0.3, 0.7, 1.0);
  auto gf = gaussian_current('f');
  // the f+ strip sits above the e+ strip; a point just above the real
  // axis is legal for f+ but not for e+
  double lo, hi;
  channel_strip('f', '+', p, lo, hi);
  CHECK(lo == doctest::Approx(p.c * p.hbar / 4.0 - 1.0 / p.eta_prime).epsilon(1e-14));
  CHECK(hi == doctest::Approx(p.c * p.hbar / 4.0).epsilon(1e-14));
  for (cplx u : {cplx(0.4, -0.5), cplx(0.2, 0.02)}) {
    auto l = laplace_half_current(gf, u, '+', p);
    auto c = cauchy_half_current(gf, u, '+', p);
    CHECK(std::abs(l.value - c.value) < 1e-8);
  }
  auto l = laplace_half_current(gf, cplx(0.5, 0.4), '-', p);
  auto c = cauchy_half_current(gf, cplx(0.5, 0.4), '-', p);
  CHECK(std::abs(l.value - c.value) < 1e-8);
  CHECK_THROWS_AS(laplace_half_current(gaussian_current('e'), cplx(0.2, 0.02), '+', p),
                  strip_error);
}

TEST_CASE("h channel at c=0: principal-value laplace matches the cth kernel") {
  AlgebraParams p0(0.3, 0.7, 0.0);
  auto gh = gaussian_current('h');
  for (cplx u : {cplx(0.4, -0.5), cplx(0.1, -1.0)}) {
    auto l = laplace_half_current(gh, u, '+', p0);
    auto c = cauchy_half_current(gh, u, '+', p0);
    CHECK(std::abs(l.value - c.value) < 1e-8);
  }
  auto l = laplace_half_current(gh, cplx(0.2, 0.8), '-', p0);
  auto c = cauchy_half_current(gh, cplx(0.2, 0.8), '-', p0);
  CHECK(std::abs(l.value - c.value) < 1e-8);
  // the additive constant enters the cth form untouched
  cplx s0(0.25, -0.125);
  auto cs = cauchy_half_current(gh, cplx(0.4, -0.5), '+', p0, s0);
  auto c0 = cauchy_half_current(gh, cplx(0.4, -0.5), '+', p0);
  CHECK(std::abs(cs.value - c0.value - s0) < 1e-14);
  // the cth form is tied to c = 0
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK_THROWS_AS(cauchy_half_current(gh, cplx(0.4, -0.5), '+', p),
                  std::invalid_argument);
}

TEST_CASE("boundary jump recovers the current") {
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK(ding_frenkel_residual(gaussian_current('e'), 0.5, p) < 1e-6);
  CHECK(ding_frenkel_residual(gaussian_current('f'), 0.5, p) < 1e-6);
  CHECK(ding_frenkel_residual(gaussian_current('e'), -1.2, p) < 1e-6);
  CHECK(ding_frenkel_residual(sech_current(0.7, 'e'), 0.5, p) < 1e-6);
  AlgebraParams p0(0.3, 0.7, 0.0);
  CHECK(ding_frenkel_residual(gaussian_current('e'), 0.5, p0) < 1e-6);
  CHECK_THROWS_AS(ding_frenkel_residual(gaussian_current('h'), 0.5, p),
                  std::invalid_argument);
}

TEST_CASE("zero current gives a vanishing jump residual") {
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK(ding_frenkel_residual(zero_current('e'), 0.5, p) == 0.0);
}

TEST_CASE("eps sequences must halve") {
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK_THROWS_AS(ding_frenkel_residual(gaussian_current('e'), 0.5, p, {1e-2, 4e-3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ding_frenkel_residual(gaussian_current('e'), 0.5, p, {1e-2}),
                  std::invalid_argument);
}

TEST_CASE("both boundary values of e+ close the strip relations") {
  AlgebraParams p(0.3, 0.7, 1.0);
  auto ge = gaussian_current('e');
  CHECK(boundary_sum_residual(ge, 0.5, p) < 1e-6);
  CHECK(boundary_pv_residual(ge, 0.5, p) < 1e-6);
  CHECK(boundary_sum_residual(ge, -0.3, p) < 1e-6);
  CHECK(boundary_pv_residual(ge, -0.3, p) < 1e-6);
  AlgebraParams p0(0.3, 0.7, 0.0);
  CHECK(boundary_sum_residual(ge, 0.5, p0) < 1e-6);
  CHECK_THROWS_AS(boundary_sum_residual(gaussian_current('f'), 0.5, p),
                  std::invalid_argument);
}

TEST_CASE("shift by i/eta'' maps one strip family onto the other") {
  AlgebraParams p(0.3, 0.7, 1.0);
  cplx u(0.3, 0.6);
  CHECK(quasiperiodicity_residual(gaussian_current('e'), u, p) < 1e-7);
  CHECK(quasiperiodicity_residual(gaussian_current('f'), u, p) < 1e-7);
  CHECK(quasiperiodicity_residual(gaussian_current('h'), u, p) < 1e-7);
  CHECK(quasiperiodicity_residual(sech_current(0.7, 'e'), u, p) < 1e-7);
  AlgebraParams p0(0.3, 0.7, 0.0);
  CHECK(quasiperiodicity_residual(gaussian_current('e'), u, p0) < 1e-7);
  CHECK(quasiperiodicity_residual(gaussian_current('h'), u, p0) < 1e-7);
}

TEST_CASE("the h family shifts without the sign flip of e and f") {
  // gluing h with the e/f sign convention must visibly fail
  AlgebraParams p(0.3, 0.7, 1.0);
  auto gh = gaussian_current('h');
  cplx u(0.3, 0.6);
  cplx minus = laplace_half_current(gh, u, '-', p).value;
  cplx plus = laplace_half_current(gh, u - cplx(0.0, 1.0 / p.eta_dprime), '+', p).value;
  CHECK(std::abs(minus - plus) < 1e-12);
  CHECK(std::abs(minus + plus) > 1e-3);
}

TEST_CASE("breaking the eta' constraint breaks the strip gluing") {
  auto pb = AlgebraParams::perturbed(0.3, 0.7, 1.0, 1.01);
  cplx u(0.3, 0.6);
  CHECK(quasiperiodicity_residual(gaussian_current('e'), u, pb) > 1e-5);
  CHECK(quasiperiodicity_residual(gaussian_current('f'), u, pb) > 1e-5);
}

TEST_CASE("half-currents are analytic inside their strips") {
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK(analyticity_residual(gaussian_current('e'), cplx(0.4, -0.5), '+', p) < 1e-6);
  CHECK(analyticity_residual(gaussian_current('f'), cplx(0.1, 0.8), '-', p) < 1e-6);
}

TEST_CASE("domain errors: strips, contours and weak decay") {
  AlgebraParams p(0.3, 0.7, 1.0);
  auto ge = gaussian_current('e');
  CHECK_THROWS_AS(laplace_half_current(ge, cplx(0.0, 0.5), '+', p), strip_error);
  CHECK_THROWS_AS(laplace_half_current(ge, cplx(0.0, -0.5), '-', p), strip_error);
  // cauchy contour pinched against a kernel pole
  CHECK_THROWS_AS(cauchy_half_current(ge, cplx(0.0, -p.c * p.hbar / 4.0 + 1e-5), '+', p),
                  strip_error);
  // polynomial decay violates the fixture precondition
  CHECK_THROWS_AS(laplace_half_current(rational_current('e'), cplx(0.0, -0.5), '+', p),
                  convergence_error);
  CHECK_THROWS_AS(cauchy_half_current(rational_current('e'), cplx(0.0, -0.5), '+', p),
                  convergence_error);
}

TEST_CASE("the h weight needs superexponential spectra near the real axis") {
  // without a Fermi factor the h weight grows like e^{|lambda|/2eta''};
  // the sech spectrum decays only like e^{-|lambda|/2eta} and loses
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK_THROWS_AS(laplace_half_current(sech_current(0.7, 'h'), cplx(0.0, -0.1), '+', p),
                  convergence_error);
  // the gaussian spectrum wins everywhere in the strip
  auto v = laplace_half_current(gaussian_current('h'), cplx(0.0, -0.1), '+', p);
  CHECK(std::isfinite(v.value.real()));
}

TEST_CASE("csv samples reproduce the closed-form current") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "qalg_test_gaussian.csv";
  {
    std::ofstream out(path);
    out.precision(17);
    out << "v,re,im\n";
    for (int i = -400; i <= 400; ++i) {
      double v = 0.02 * i;
      out << v << "," << std::exp(-v * v) << "," << 0.0 << "\n";
    }
  }
  auto csv = csv_current(path.string(), 'e');
  auto ge = gaussian_current('e');
  CHECK(std::abs(csv.values(0.37) - ge.values(0.37)) < 1e-4);  // linear interpolation
  CHECK(std::abs(csv.spectrum(1.3) - ge.spectrum(1.3)) < 1e-10);
  AlgebraParams p(0.3, 0.7, 1.0);
  cplx u(0.4, -0.5);
  auto lc = laplace_half_current(csv, u, '+', p);
  auto lg = laplace_half_current(ge, u, '+', p);
  CHECK(std::abs(lc.value - lg.value) < 1e-9);
  CHECK(ding_frenkel_residual(csv, 0.5, p) < 1e-5);
  fs::remove(path);
  CHECK_THROWS_AS(csv_current((fs::temp_directory_path() / "no_such.csv").string(), 'e'),
                  std::invalid_argument);
}

TEST_CASE("kappa kernel is real, odd and vanishes at the origin") {
  AlgebraParams p(0.3, 0.7, 1.0);
  CHECK(kappa_kernel(0.0, p) == 0.0);
  for (double tau : {0.2, 0.7, 1.3, 4.0}) {
    double k = kappa_kernel(tau, p);
    CHECK(std::abs(k + kappa_kernel(-tau, p)) < 1e-10);
    cplx kc = kappa_kernel_complex(tau, p);
    CHECK(std::abs(kc.imag()) < 1e-10);
    CHECK(std::abs(kc.real() - k) < 1e-9);
  }
  // integrand limit: the tail does not decay, it oscillates at this level
  CHECK(kappa_integrand_limit(p) ==
        doctest::Approx(std::tan(M_PI * (p.eta_prime - p.eta) * p.hbar)).epsilon(1e-14));
  AlgebraParams p0(0.3, 0.7, 0.0);
  CHECK_THROWS_AS(kappa_kernel(1.0, p0), std::domain_error);
  CHECK_THROWS_AS(kappa_kernel_complex(1.0, p0), std::domain_error);
}
