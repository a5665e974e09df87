#pragma once
// Free-field side of the level-1 module: the boson measure, vertex
// exponents, pairwise contractions by loop-integral quadrature and by
// Gamma / double-Gamma closed forms, exchange factors for the current
// relations, and the scalar constants of the Zamolodchikov-Faddeev
// normalization.  Everything here lives at c = 1.
#include <complex>
#include <vector>

#include "qalg/params.hpp"
#include "qalg/specfun.hpp"

namespace qalg {

enum class Vertex { E, F, Hp, Hm, Z, Zp, Id };

// spectral density of the boson commutator; odd in lambda with a
// removable zero at the origin
cplx boson_measure(cplx lambda, const AlgebraParams& p);

// coefficient of a_lambda in the exponent of the vertex operator at the
// given position (Id carries the empty exponent)
cplx vertex_exponent(Vertex v, cplx lambda, cplx position,
                     const AlgebraParams& p);

// Contractions return the scalar coefficient of the combined
// normal-ordered exponential in A(pos_a) B(pos_b).  The e^gamma
// dressings of E and F are not part of this coefficient; they cancel in
// every ratio and are reinstated explicitly where a full product is
// needed.
cplx contraction_quadrature(Vertex a, Vertex b, cplx pos_a, cplx pos_b,
                            const AlgebraParams& p,
                            const HankelContour& contour = {});
cplx contraction_closed_form(Vertex a, Vertex b, cplx pos_a, cplx pos_b,
                             const AlgebraParams& p);

// lower edge of the Im(pos_a - pos_b) half-plane on which the defining
// integral of the ordered contraction converges
double contraction_strip_edge(Vertex a, Vertex b, const AlgebraParams& p);

// scalar factor in A(u) B(v) = factor * B(v) A(u) for the current pairs,
// as a function of w = u - v
cplx exchange_factor(Vertex a, Vertex b, cplx w, const AlgebraParams& p);

// |C_AB(w) / C_BA(-w) - exchange_factor(w)| through the closed forms,
// which continue both orderings to a common separation
double exchange_ratio_residual(Vertex a, Vertex b, cplx w,
                               const AlgebraParams& p);

struct EfPole {
  cplx position;             // separation u - v of the pole
  Vertex channel;            // residue channel, Hp or Hm
  cplx channel_shift;        // offset of the channel argument
  double exponent_residual;  // channel identity on a lambda grid
};

// locates the poles of the full E-F contraction and verifies that the
// residue channels carry the H^{+-} exponents
std::vector<EfPole> ef_pole_check(const AlgebraParams& p);

// commutation of h^{+-}(u) with Z(z): contraction ratio against the
// printed sh ratio; sign is '+' or '-'
double intertwiner_ratio_residual(char sign, cplx u, cplx z,
                                  const AlgebraParams& p);
// F and Z anticommute: contraction ratio + 1
double fz_anticommutation_residual(cplx u, cplx z, const AlgebraParams& p);
// scalar Z / Z' exchange against tg(pi/4 + i pi (z1 - z2) / 2 hbar)
double zzprime_exchange_residual(cplx z1, cplx z2, const AlgebraParams& p);

struct ZfConstants {
  cplx g;
  cplx g_prime;
};

// the printed double-Gamma displays for the orthogonality constants
ZfConstants zf_constants(const AlgebraParams& p);
// the same two constants rebuilt from contraction quadrature at shifted
// separations, with the double-Gamma displays bypassed entirely
ZfConstants zf_constants_quadrature(const AlgebraParams& p);

// max over a lambda grid of the E = (Z Z)^{-1} and F = (Z' Z')^{-1}
// exponent identities
double luk_exponent_residual(double u, const AlgebraParams& p);
// e^gamma recovered from the Z-Z contraction at separation i hbar and
// from the E-F polynomial; worse relative error of the two
double luk_scalar_residual(const AlgebraParams& p);

// shift identity between the two diagonal L-operator exponents; with
// swap_eta the shift is rebuilt from eta' in place of eta, which is the
// control that must fail
double miki_diagonal_residual(const AlgebraParams& p, bool swap_eta = false);
// sqrt(2 hbar e^gamma / pi) times the Z-Z' contraction at i hbar / 2;
// equals 1 when the normalization constant cancels as claimed
cplx miki_prefactor(const AlgebraParams& p);

}  // namespace qalg
