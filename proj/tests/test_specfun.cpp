#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qalg/specfun.hpp"

using namespace qalg;

TEST_CASE("log_gamma classical values") {
  CHECK(std::abs(log_gamma(cplx(1.0, 0.0))) < 1e-14);
  CHECK(std::abs(log_gamma(cplx(2.0, 0.0))) < 1e-14);
  CHECK(std::abs(log_gamma(cplx(0.5, 0.0)) - 0.5 * std::log(M_PI)) < 1e-14);
  // against the libm real-axis implementation
  for (double x : {0.1, 0.7, 1.9, 3.3, 7.5, 21.0, 44.5}) {
    CHECK(std::abs(log_gamma(cplx(x, 0.0)).real() - std::lgamma(x)) <
          1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
    CHECK(log_gamma(cplx(x, 0.0)).imag() == 0.0);
  }
}

TEST_CASE("log_gamma recursion residual on a complex grid") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ur(-44.0, 44.0);
  int tested = 0;
  while (tested < 100) {
    cplx z(ur(rng), ur(rng));
    if (std::abs(z) > 49.0) continue;
    if (z.real() < 0.5 && std::abs(z.imag()) < 0.5) continue;  // keep off the cut
    cplx res = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    CHECK(std::abs(res) < 1e-12);
    ++tested;
  }
  cplx z(3.7, 1.2);
  CHECK(std::abs(log_gamma(z + 1.0) - log_gamma(z) - std::log(z)) < 1e-12);
}

TEST_CASE("log_gamma reflection (branch-free form)") {
  std::mt19937 rng(999);
  std::uniform_real_distribution<double> ur(-8.0, 8.0);
  for (int i = 0; i < 40; ++i) {
    cplx z(ur(rng), ur(rng));
    if (std::abs(z.imag()) < 0.3) continue;  // stay away from real poles
    cplx lhs = std::exp(log_gamma(z) + log_gamma(1.0 - z));
    cplx rhs = M_PI / std::sin(M_PI * z);
    CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(rhs));
  }
}

TEST_CASE("log_gamma pole errors") {
  CHECK_THROWS_AS(log_gamma(cplx(0.0, 0.0)), pole_error);
  CHECK_THROWS_AS(log_gamma(cplx(-3.0, 0.0)), pole_error);
  CHECK_NOTHROW(log_gamma(cplx(-3.0, 1e-6)));
}

TEST_CASE("bernoulli22 basic identities") {
  CHECK(std::abs(bernoulli22(0.0, 1.0, 1.0) - cplx(5.0 / 6.0, 0.0)) < 1e-15);
  cplx x(0.3, 0.2), w1(0.6, 0.0), w2(1.1, 0.0);
  CHECK(std::abs(bernoulli22(x, w1, w2) - bernoulli22(w1 + w2 - x, w1, w2)) <
        1e-14);
  CHECK(std::abs(bernoulli22(x, w1, w2) - bernoulli22(x, w2, w1)) < 1e-15);
  CHECK_THROWS_AS(bernoulli22(x, 0.0, 1.0), std::invalid_argument);
}

namespace {

double gamma_identity_residual(double x, double eta, const HankelContour& ct) {
  auto kernel = [eta](cplx lam) { return 1.0 / (1.0 - std::exp(-lam / eta)); };
  SpecialValue s = hankel_log_integral(kernel, cplx(x, 0.0), ct);
  cplx rhs = log_gamma(cplx(eta * x, 0.0)) +
             (eta * x - 0.5) * (euler_gamma - std::log(eta)) -
             0.5 * std::log(2.0 * M_PI);
  return std::abs(s.value - rhs);
}

}  // namespace

TEST_CASE("loop integral reproduces the log-Gamma identity") {
  for (double eta : {0.5, 0.7, 1.0}) {
    HankelContour ct;
    ct.truncation = 80.0 / std::min(1.0, 1.0 / eta);  // 80/min(omega), omega=1/eta
    for (double x : {0.5, 1.3, 2.7}) {
      CAPTURE(x);
      CAPTURE(eta);
      CHECK(gamma_identity_residual(x, eta, ct) < 1e-8);
    }
  }
}

TEST_CASE("loop integral of the zero kernel vanishes") {
  HankelContour ct;
  SpecialValue s = hankel_log_integral([](cplx) { return cplx(0.0); },
                                       cplx(1.0, 0.0), ct);
  CHECK(std::abs(s.value) == 0.0);
}

TEST_CASE("loop integral is contour-deformation invariant") {
  auto kernel = [](cplx lam) { return 1.0 / (1.0 - std::exp(-lam)); };
  HankelContour a, b;
  a.radius = 0.5;
  a.ray_offset = 0.125;
  b.radius = 1.0;
  b.ray_offset = 0.25;
  SpecialValue va = hankel_log_integral(kernel, cplx(1.3, 0.0), a);
  SpecialValue vb = hankel_log_integral(kernel, cplx(1.3, 0.0), b);
  CHECK(std::abs(va.value - vb.value) <=
        va.est_error + vb.est_error + 1e-12);
}

TEST_CASE("non-decaying integrand is rejected") {
  HankelContour ct;
  auto growing = [](cplx lam) { return std::exp(2.0 * lam); };
  CHECK_THROWS_AS(hankel_log_integral(growing, cplx(1.0, 0.0), ct),
                  convergence_error);
}

TEST_CASE("log_gamma2 period symmetry and self-convergence") {
  HankelContour ct;
  ct.truncation = 80.0 / 0.6;
  SpecialValue a = log_gamma2(cplx(1.0, 0.0), 0.6, 1.1, ct);
  SpecialValue b = log_gamma2(cplx(1.0, 0.0), 1.1, 0.6, ct);
  CHECK(std::abs(a.value - b.value) < 1e-12);

  HankelContour fine = ct;
  fine.nodes_per_unit = 2 * ct.nodes_per_unit;
  SpecialValue c = log_gamma2(cplx(1.0, 0.0), 0.6, 1.1, fine);
  CHECK(std::abs(a.value - c.value) < 1e-9);

  CHECK_THROWS_AS(log_gamma2(cplx(-1.0, 0.0), 0.6, 1.1, ct),
                  std::invalid_argument);
}
