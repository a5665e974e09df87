// Ordering corrections between half-current products: the five exchange
// kernels, their exact spectra, and the iterated-convolution series that
// re-expresses one operator order through the other.  All convolutions
// are done in the spectral domain; pointwise values come back through a
// Fourier integral with the non-decaying step part split off in closed
// form.
#pragma once

#include <complex>

#include "qalg/currents.hpp"
#include "qalg/params.hpp"

namespace qalg {

enum class KernelKind { he, hf, ee, ff, hh };
enum class OrderingMethod { series, resummed };

// tau-space kernels: 1/sh for he and hf, cth for ee and ff, -kappa for
// hh (so hh needs hbar c > 0); all are odd with a simple pole at tau=0
// except hh, which vanishes there
double phi_tau(KernelKind kind, double tau, const AlgebraParams& p);

// spectra int phi(tau) e^{-i omega tau} d tau, principal values giving
// th/cth multiples of i; kind hh reuses the kappa integrand
cplx phi_hat(KernelKind kind, double omega, const AlgebraParams& p);

// omega -> +infinity limit of phi_hat
cplx phi_hat_limit(KernelKind kind, const AlgebraParams& p);

// sup over omega of |phi_hat|; +infinity for ee and ff whose spectra
// blow up at omega = 0
double phi_hat_sup(KernelKind kind, const AlgebraParams& p);

struct OrderingValue {
  double value = 0.0;        // pointwise kernel value at tau (NaN if divergent)
  double sup_phi_hat = 0.0;  // convergence indicator of the series
  double delta_mass = 0.0;   // coefficient of the delta(tau) term, kept separate
  bool divergent = false;    // series truncation left a non-integrable spectrum
};

// series: sum of phi_hat^m for m = 1 .. order+1 (order 0 is the bare
// kernel, each further order adds one convolution); resummed:
// phi_hat/(1-phi_hat), which throws convergence_error when
// sup|phi_hat| >= 1 since the geometric series no longer converges.
// tau must be nonzero; the delta mass at tau = 0 is reported separately.
OrderingValue ordering_kernel(KernelKind kind, double tau,
                              const AlgebraParams& p, OrderingMethod method,
                              int order = 8);

// first convolution computed on a staggered uniform grid with FFTs
// (zero-padded once, the half-sample offset keeps the odd pole balanced)
// against the spectral-domain result; returns the largest mismatch over
// the central third of the grid
double grid_convolution_residual(KernelKind kind, const AlgebraParams& p,
                                 int grid_size = 16384);

// | int_0^inf [phi(s-t) + phi(s+t)] cos(omega t) dt  -
//   i phi_hat(omega) sin(omega s) |: the symmetrized kernel maps the
// cosine family onto the sine family with multiplier i phi_hat
double cosine_map_residual(KernelKind kind, double omega, double s,
                           const AlgebraParams& p);

// decay rate fitted from the resolvent of the symmetrized ee kernel on
// [0, horizon]; as eta -> 0 the kernel degenerates to a one-sided step
// of height hbar and the rate approaches hbar.  The mesh is uniform and
// fine enough to resolve the eta-smoothed jump, which a panel quadrature
// cannot represent in the hard-step limit.
double volterra_decay_rate(double hbar, double eta, double horizon = 6.0);

}  // namespace qalg
