// Finite-dimensional modules of the trigonometric quantum algebra, the
// evaluation map onto them, L-operator assembly / Gauss decomposition,
// quantum determinant, RLL residuals, the matrix coproduct at c = 0 and
// the degenerate Sklyanin subalgebra checks.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "qalg/params.hpp"
#include "qalg/rmatrix.hpp"

namespace qalg {

using MatX = Eigen::MatrixXcd;

// [p] = sin(pi eta hbar p) / sin(pi eta hbar)
double q_bracket(double p, const AlgebraParams& par);

// (n+1)-dimensional module in the basis (v_0, ..., v_n):
//   h v_k = (n-2k) v_k,  e v_k = [k] v_{k-1},  f v_k = [n-k] v_{k+1}
// so that [h,e] = 2e, [h,f] = -2f, [e,f] = [h].
struct UqSl2Module {
  int n = 0;
  MatX h_mat, e_mat, f_mat;
  AlgebraParams params{1.0, 1.0, 0.0};
};

UqSl2Module build_module(int n, const AlgebraParams& p);

// Matrix of a generating function of the algebra on V_n placed at
// evaluation point z.  kind is one of 'e', 'f', 'h'.  The '-' family is
// evaluated through the shift relations e^-(u) = -e^+(u - i/eta'') etc.;
// on a finite-dimensional module both families are values of the same
// meromorphic function.
MatX ev_generator(char kind, char sign, cplx u, cplx z, const UqSl2Module& m);

// true when u lies inside the analyticity strip of the requested family
// (at c=0: -1/eta < Im u < 0 for '+', 0 < Im u < 1/eta for '-').
bool strip_ok(char sign, cplx u, const AlgebraParams& p);

// 2x2 auxiliary-space block matrix of operators on the module;
// blocks[0][*] is the '+' row, blocks[1][*] the '-' row.
struct LOperatorRep {
  MatX blocks[2][2];
  cplx u{}, z{};
  char sign = '+';
};

// Two-dimensional evaluation representation: the blocks of the full
// normalized R-matrix R^sign(u - z), auxiliary space first.
LOperatorRep pi1_L(cplx z, cplx u, char sign, const AlgebraParams& p,
                   int trunc);

// L-operator on V_n assembled from the Gauss coordinates of the
// evaluation images.  Normalized only up to an overall scalar in u
// (exact for the homogeneous relations; use pi1_L when the scalar
// normalization matters).
LOperatorRep ev_L(cplx z, cplx u, char sign, const UqSl2Module& m);

struct GaussCoords {
  MatX e_coord, f_coord, k1, k2;
  MatX h_coord;   // k2^-1 k1
  MatX h_tilde;   // (eta/eta') (sin pi eta' hbar / sin pi eta hbar) h_coord
};

GaussCoords gauss_decompose(const LOperatorRep& L, const AlgebraParams& p);

// reassemble (1 f; 0 1)(k1 0; 0 k2)(1 0; e 1) and compare with L
double gauss_roundtrip_residual(const LOperatorRep& L,
                                const AlgebraParams& p);

// L_{++}(u - i hbar) L_{--}(u) - L_{+-}(u - i hbar) L_{-+}(u)
MatX qdet(const std::function<LOperatorRep(cplx)>& L_builder, cplx u,
          const AlgebraParams& p);

// max-norm residual of R(u1-u2) L1(u1) L2(u2) = L2(u2) L1(u1) R(u1-u2)
// on aux (x) aux (x) V_n, normalized by the larger side.  sign_pair is
// "++", "--" or "+-".
double rll_residual(cplx z1, cplx u1, cplx u2, const char* sign_pair, int n,
                    const AlgebraParams& p, int trunc);

// || L^+(u - i/eta'') - sigma_z L^-(u) sigma_z || on the two-dimensional
// module (sigma_z acts in the auxiliary space)
double loperator_shift_residual(cplx u, cplx z, const AlgebraParams& p,
                                int trunc);

struct CoproductResiduals {
  double rll = 0.0;        // RLL for the coproduct L-operator
  double qdet_prim = 0.0;  // || qdet(Delta L) - Id ||
  double coassoc = 0.0;    // two bracketings of the double coproduct
};

CoproductResiduals coproduct_residuals(cplx z1, cplx z2, cplx u1, cplx u2,
                                       const AlgebraParams& p, int trunc);

// Residuals of the zero-mode (Sklyanin-type) subalgebra relations on V_n,
// with S0 -> cos(pi eta hbar h), e0 -> e, f0 -> f, h0 -> ef - fe.
struct SklyaninResiduals {
  double ef_vs_h0 = 0.0;      // [e0, f0] = h0
  double s0_h0 = 0.0;         // [S0, h0] = 0
  double casimir = 0.0;       // S0^2 + sin^2(pi eta hbar) h0^2 = 1
  double s0_e0 = 0.0;         // [S0, e0] = -sin tg {h0, e0}
  double h0_e0 = 0.0;         // [h0, e0] = (tg/sin) {S0, e0}
  double s0_f0 = 0.0;         // [S0, f0] = sin tg {h0, f0}
  double h0_f0 = 0.0;         // [h0, f0] = -(tg/sin) {S0, f0}
  double h0_vs_qnumber = 0.0; // h0 = [h] entrywise on the h-eigenbasis
  double max() const;
};

SklyaninResiduals sklyanin_residuals(int n, cplx z, const AlgebraParams& p);

// Exchange relations of the Gauss-coordinate generating functions as
// matrix identities on V_n at c = 0 (u = u1 - u2 generic).
struct ExchangeResiduals {
  double ef = 0.0, he = 0.0, hf = 0.0, ee = 0.0, ff = 0.0, hh = 0.0;
  double max() const;
};

ExchangeResiduals exchange_residuals(cplx u1, cplx u2, cplx z,
                                     const UqSl2Module& m);

}  // namespace qalg
