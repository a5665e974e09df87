// Tests for the six-vertex R-matrix, its scalar normalization, and the
// derived sine-Gordon S-matrix.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "qalg/errors.hpp"
#include "qalg/rmatrix.hpp"

using namespace qalg;

namespace {
const AlgebraParams kP(0.3, 0.7, 0.0);

cplx sh(cplx z) { return std::sinh(z); }
}  // namespace

TEST_CASE("rbar entries at distinguished points") {
  auto [b0, c0] = rbar_entries(cplx(0.0, 0.0), kP);
  CHECK(std::abs(b0) == 0.0);
  CHECK(std::abs(c0 - 1.0) < 1e-14);

  // at u = i hbar / 2 the b weight is -1 and c = 2 cos(pi eta hbar / 2)
  auto [bh, ch] = rbar_entries(cplx(0.0, kP.hbar / 2.0), kP);
  CHECK(std::abs(bh + 1.0) < 1e-14);
  CHECK(std::abs(ch - 2.0 * std::cos(M_PI * kP.eta * kP.hbar / 2.0)) < 1e-14);
}

TEST_CASE("rbar matrix layout and ice rule") {
  cplx u(0.37, 0.11);
  Mat4 m = rbar_matrix(u, kP);
  auto [b, c] = rbar_entries(u, kP);
  CHECK(m(0, 0) == cplx(1.0, 0.0));
  CHECK(m(3, 3) == cplx(1.0, 0.0));
  CHECK(m(1, 1) == b);
  CHECK(m(2, 2) == b);
  CHECK(m(1, 2) == c);
  CHECK(m(2, 1) == c);
  // every entry off the six-vertex pattern vanishes identically
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool pattern = (i == j) || (i + j == 3 && i != j && i != 0 && i != 3);
      if (!pattern) CHECK(m(i, j) == cplx(0.0, 0.0));
    }
}

TEST_CASE("rbar at u=0 is the permutation matrix") {
  Mat4 m = rbar_matrix(cplx(0.0, 0.0), kP);
  Mat4 perm = Mat4::Zero();
  perm(0, 0) = perm(3, 3) = perm(1, 2) = perm(2, 1) = 1.0;
  CHECK((m - perm).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rbar pole at u = i hbar") {
  CHECK_THROWS_AS(rbar_matrix(cplx(0.0, kP.hbar), kP), pole_error);
}

TEST_CASE("weight identity b^2 - c^2") {
  for (cplx u : {cplx(0.4, 0.0), cplx(-1.3, 0.25), cplx(0.05, -0.6)}) {
    auto [b, c] = rbar_entries(u, kP);
    cplx ih(0.0, kP.hbar);
    cplx want = sh(M_PI * kP.eta * (u + ih)) / sh(M_PI * kP.eta * (u - ih));
    CHECK(std::abs(b * b - c * c - want) < 1e-12);
  }
}

TEST_CASE("scalar factor normalization at u=0") {
  CHECK(std::abs(r_scalar(cplx(0.0, 0.0), kP, 200) - 1.0) < 1e-13);
}

TEST_CASE("scalar factor is converged at the default truncation") {
  cplx u(0.4, 0.0);
  cplx a = r_scalar(u, kP, 200);
  cplx b = r_scalar(u, kP, 400);
  CHECK(std::abs(a - b) < 1e-10);
  // modulus one on the real axis
  CHECK(std::abs(std::abs(a) - 1.0) < 1e-12);

  cplx uc(0.3, 0.1);
  CHECK(std::abs(r_scalar(uc, kP, 200) - r_scalar(uc, kP, 400)) < 1e-10);
}

TEST_CASE("bare product error decreases monotonically in the truncation") {
  cplx u(0.4, 0.0);
  cplx ref = r_scalar(u, kP, 400);
  double prev = 1e9;
  for (int n : {25, 50, 100, 200}) {
    double err = std::abs(r_scalar_bare(u, kP, n) - ref);
    CHECK(err < prev);
    prev = err;
  }
  // the raw product at 200 terms is still far from the converged value
  CHECK(prev > 1e-7);
}

TEST_CASE("unitarity of the normalized R-matrix") {
  double res = check_unitarity(cplx(0.8, 0.0), kP, 200);
  CHECK(res < 1e-8);
  // truncating the scalar product early degrades the residual
  CHECK(check_unitarity(cplx(0.8, 0.0), kP, 25) > 10.0 * res);
}

TEST_CASE("crossing at hbar = pi") {
  AlgebraParams p(M_PI, 0.25, 0.0);
  CHECK(check_crossing(cplx(0.9, 0.3), p, 200) < 1e-8);

  Eigen::Matrix2cd ct;
  ct << 0.0, 1.0, -1.0, 0.0;
  CHECK(((ct * ct) + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("Yang-Baxter residuals") {
  cplx u1(0.9, 0.0), u2(0.4, 0.0), u3(-0.2, 0.0);
  CHECK(check_ybe(u1, u2, u3, kP, 120) < 1e-8);
  CHECK(check_ybe(u1, u1, u3, kP, 120) < 1e-10);
  // the bare six-vertex matrix satisfies the equation on its own
  CHECK(check_ybe_bare(u1, u2, u3, kP) < 1e-12);
  CHECK(check_ybe_bare(cplx(0.3, 0.2), cplx(-0.1, 0.4), cplx(0.7, -0.3), kP) <
        1e-12);
}

TEST_CASE("quasi-periodicity in steps of i/eta") {
  CHECK(check_quasiperiodicity(cplx(0.5, -0.2), kP, 200) < 1e-7);
  // the bare matrix itself has period 2i/eta exactly
  cplx z(0.5, -0.2);
  Mat4 a = rbar_matrix(z, kP);
  Mat4 b = rbar_matrix(z - cplx(0.0, 2.0 / kP.eta), kP);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("twist prefactors of the two analytic branches") {
  cplx u(0.45, -0.15);
  Mat4 base = r_untwisted(u, kP, 120);
  cplx arg = M_PI * u / (2.0 * kP.hbar);
  RMatrixValue plus = r_full(u, '+', kP, 120);
  RMatrixValue minus = r_full(u, '-', kP, 120);
  CHECK((plus.entries - std::cosh(arg) / std::sinh(arg) * base)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((minus.entries - std::sinh(arg) / std::cosh(arg) * base)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK_THROWS_AS(r_full(cplx(0.0, 0.0), '+', kP, 120), pole_error);
}

TEST_CASE("sine-Gordon S-matrix") {
  double xi = 1.4;
  cplx beta(0.6, 0.0);
  RMatrixValue s = smatrix_zz(beta, xi, 200);

  // unitarity S(beta) S(-beta) = 1
  Mat4 u = s.entries * smatrix_zz(-beta, xi, 200).entries;
  CHECK((u - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-8);

  // the twist is conjugation by sigma_z factors and a global sign
  AlgebraParams p(M_PI, 1.0 / xi, 0.0);
  Mat4 r = r_untwisted(beta, p, 200);
  double szl[4] = {1.0, 1.0, -1.0, -1.0};
  double szr[4] = {1.0, -1.0, 1.0, -1.0};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst,
                       std::abs(s.entries(i, j) + szl[i] * r(i, j) * szr[j]));
  CHECK(worst < 1e-14);

  // six-vertex zero pattern survives the twist
  CHECK(std::abs(s.entries(0, 1)) == 0.0);
  CHECK(std::abs(s.entries(2, 0)) == 0.0);
  CHECK(std::abs(s.entries(3, 1)) == 0.0);
}
