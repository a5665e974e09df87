// Riemann problem on a strip for scalar test currents: deformed Laplace
// and Cauchy-kernel half-currents, the boundary jump and principal-value
// relations, quasi-periodicity between the two analyticity strips, and
// the kappa kernel of the h-channel commutator.
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qalg/params.hpp"
#include "qalg/specfun.hpp"

namespace qalg {

// Scalar stand-in for a current: the transforms under test are linear and
// channel-diagonal, so scalar functions exercise the full analysis.
struct TestCurrent {
  std::function<cplx(double)> values;    // E(v), v real
  std::function<cplx(double)> spectrum;  // int E(v) e^{-i lambda v} dv
  double decay_rate = 0.0;      // alpha: |E(v)| <= C e^{-alpha |v|}
  double spectrum_decay = 0.0;  // beta: |spectrum| <= C e^{-beta |lambda|}
  double support = 0.0;         // |E| below 1e-18 outside [-support, support]
  char channel = 'e';
};

// E(v) = exp(-v^2), spectrum sqrt(pi) exp(-lambda^2/4)
TestCurrent gaussian_current(char channel = 'e');
// E(v) = sech(pi eta v), spectrum (1/eta) sech(lambda / 2 eta)
TestCurrent sech_current(double eta, char channel = 'e');
// E(v) = 1/(1+v^2): polynomial decay, fails the decay precondition
TestCurrent rational_current(char channel = 'e');
// uniform samples from CSV rows "v,re,im"; spectrum by discrete transform
TestCurrent csv_current(const std::string& path, char channel = 'e',
                        double spectrum_decay = 20.0);

struct HalfCurrentValue {
  cplx value;
  cplx u;
  char sign = '+';
  char method = 'l';  // 'l' laplace, 'c' cauchy
};

// analyticity strip of the requested channel and family; the f strips are
// shifted against the e strips by the weight asymptotics
void channel_strip(char channel, char sign, const AlgebraParams& p,
                   double& lo, double& hi);

// lambda-integral with the Fermi-type weights; throws strip_error outside
// the open strip and convergence_error when the spectral decay cannot
// beat the weight growth
HalfCurrentValue laplace_half_current(const TestCurrent& cur, cplx u,
                                      char sign, const AlgebraParams& p);

// v-integral against the sh (channels e, f; any c) or cth (channel h,
// c = 0 only) kernel; s0 is the additive constant of the h channel
HalfCurrentValue cauchy_half_current(const TestCurrent& cur, cplx u,
                                     char sign, const AlgebraParams& p,
                                     cplx s0 = cplx(0.0, 0.0));

// |e+(u - i c hbar/4 - i eps) - e-(u + i c hbar/4 + i eps) -
//  (sin pi eta hbar / pi eta) E(u)| extrapolated in eps (the f channel
// uses the mirrored boundary points and eta'); eps_seq must decrease by
// a fixed ratio for the Richardson step
double ding_frenkel_residual(const TestCurrent& cur, double u_real,
                             const AlgebraParams& p,
                             const std::vector<double>& eps_seq = {
                                 0.02, 0.01, 0.005});

// sum of the two boundary values of e+ across its own strip against
// (sin pi eta hbar / pi eta) E(u), extrapolated in eps like the jump
double boundary_sum_residual(const TestCurrent& cur, double u_real,
                             const AlgebraParams& p,
                             const std::vector<double>& eps_seq = {
                                 0.02, 0.01, 0.005});

// difference of the same boundary values against the principal-value
// transform (i sin pi eta hbar / pi) PV int E(v) / sh pi eta (v - u) dv,
// the PV taken by odd symmetrization around u
double boundary_pv_residual(const TestCurrent& cur, double u_real,
                            const AlgebraParams& p,
                            const std::vector<double>& eps_seq = {
                                0.02, 0.01, 0.005});

// e-(u) = -e+(u - i/eta''), f-(u) = -f+(u - i/eta''), h-(u) = h+(u - i/eta'')
double quasiperiodicity_residual(const TestCurrent& cur, cplx u,
                                 const AlgebraParams& p);

// Cauchy-Riemann stencil residual of the half-current at an interior point
double analyticity_residual(const TestCurrent& cur, cplx u, char sign,
                            const AlgebraParams& p);

// real odd kernel of the h-channel commutator; defined for hbar c > 0
double kappa_kernel(double tau, const AlgebraParams& p);
// same via the two-sided complex integrand (oracle for real/odd checks)
cplx kappa_kernel_complex(double tau, const AlgebraParams& p);

// real odd integrand of kappa's sine transform (the full complex
// integrand is i times this on the real axis)
double kappa_integrand_odd(double u, const AlgebraParams& p);

// limit of the kappa integrand as u -> +infinity: tan(pi (eta'-eta) hbar)
double kappa_integrand_limit(const AlgebraParams& p);

}  // namespace qalg
