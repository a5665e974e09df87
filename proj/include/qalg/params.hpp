#pragma once
#include <stdexcept>

namespace qalg {

// Parameter tuple (hbar, eta, c) with the two derived deformation
// parameters.  The constraint 1/eta' - 1/eta = hbar*c is enforced by
// construction, and 1/eta'' = (1/eta + 1/eta')/2, so that
// 1/eta'' = 1/eta + hbar*c/2 exactly.
struct AlgebraParams {
  double hbar;
  double eta;
  double c;
  double eta_prime;
  double eta_dprime;

  AlgebraParams(double hbar_, double eta_, double c_ = 0.0)
      : hbar(hbar_), eta(eta_), c(c_) {
    if (hbar <= 0.0 || eta <= 0.0)
      throw std::invalid_argument("AlgebraParams: hbar and eta must be positive");
    if (hbar * c < 0.0)
      throw std::invalid_argument("AlgebraParams: hbar*c must be nonnegative");
    eta_prime = eta / (1.0 + eta * hbar * c);
    eta_dprime = 2.0 * eta * eta_prime / (eta + eta_prime);
  }

  // Deliberately breaks the eta' constraint (eta' scaled by `scale`,
  // eta'' recomputed from the broken eta').  Only used by the negative
  // sensitivity controls; every identity suite must detect the mismatch.
  static AlgebraParams perturbed(double hbar_, double eta_, double c_,
                                 double scale) {
    AlgebraParams p(hbar_, eta_, c_);
    p.eta_prime *= scale;
    p.eta_dprime = 2.0 * p.eta * p.eta_prime / (p.eta + p.eta_prime);
    return p;
  }
};

}  // namespace qalg
