#pragma once
#include <Eigen/Dense>
#include <utility>

#include "qalg/params.hpp"
#include "qalg/specfun.hpp"

namespace qalg {

using Mat4 = Eigen::Matrix4cd;

// 4x4 value in the basis (++, +-, -+, --), with normalization metadata.
struct RMatrixValue {
  Mat4 entries;
  cplx u;
  char sign;  // '+', '-', or 'b' for the untwisted r*Rbar
  int truncation;
};

// Entries b, c of the bare six-vertex matrix Rbar.
std::pair<cplx, cplx> rbar_entries(cplx u, const AlgebraParams& p);
Mat4 rbar_matrix(cplx u, const AlgebraParams& p);

// Scalar normalization r(u, eta): Gamma prefactor times the product over
// p = 1..trunc of R_p ratios, all in log space.  The tail p > trunc is
// restored by an Euler-Maclaurin estimate, so values are converged far
// beyond the bare 1/trunc truncation error.
cplx r_scalar(cplx u, const AlgebraParams& p, int trunc);
// Bare truncated product, kept for truncation-convergence studies.
cplx r_scalar_bare(cplx u, const AlgebraParams& p, int trunc);

// r(u) * Rbar(u): the matrix whose unitarity/YBE/crossing the checks probe.
Mat4 r_untwisted(cplx u, const AlgebraParams& p, int trunc);

// tau^+(u) = cth(pi u/2hbar), tau^-(u) = th(pi u/2hbar) on top of r*Rbar.
RMatrixValue r_full(cplx u, char sign, const AlgebraParams& p, int trunc);

// Soliton-antisoliton S-matrix: -(sz x 1) R(beta, 1/xi) (1 x sz) at hbar=pi.
RMatrixValue smatrix_zz(cplx beta, double xi, int trunc);

// max-norm residuals
double check_unitarity(cplx u, const AlgebraParams& p, int trunc);
double check_crossing(cplx u, const AlgebraParams& p, int trunc);
double check_ybe(cplx u1, cplx u2, cplx u3, const AlgebraParams& p, int trunc);
double check_ybe_bare(cplx u1, cplx u2, cplx u3, const AlgebraParams& p);
double check_quasiperiodicity(cplx z, const AlgebraParams& p, int trunc);

}  // namespace qalg
