#pragma once
#include <complex>
#include <functional>

#include "qalg/errors.hpp"

namespace qalg {

using cplx = std::complex<double>;

inline constexpr double euler_gamma = 0.5772156649015328606065121;

// Principal branch of ln Gamma(z) on the plane cut along (-inf, 0].
// Lanczos sum for Re z >= 1/2, pushed there by the downward recursion
// ln Gamma(z) = ln Gamma(z+n) - sum_j Log(z+j); both pieces share the
// standard cut, so the branch stays principal.  Throws pole_error at
// nonpositive integers.
cplx log_gamma(cplx z);

struct SpecialValue {
  cplx value = 0.0;
  double est_error = 0.0;
};

// Loop coming in from Re lambda = +infinity above the positive real axis,
// encircling lambda = 0 once counterclockwise, and going back out below
// the axis.  The two horizontal rays sit at Im lambda = +-ray_offset and
// join a circular arc of the given radius.
struct HankelContour {
  double radius = 0.75;
  double ray_offset = 0.1875;
  double truncation = 120.0;
  int nodes_per_unit = 64;

  void validate() const {
    if (radius <= 0.0 || ray_offset <= 0.0 || ray_offset >= radius)
      throw std::invalid_argument("HankelContour: need 0 < ray_offset < radius");
    if (truncation <= 10.0 * radius)
      throw std::invalid_argument("HankelContour: truncation too small");
    if (nodes_per_unit < 1)
      throw std::invalid_argument("HankelContour: nodes_per_unit < 1");
  }
};

// integral over the loop of
//   d(lambda) ln(-lambda)/(2 pi i lambda) e^{-x lambda} kernel(lambda),
// with ln(-lambda) on the principal branch (cut along the positive real
// axis, real for lambda < 0; the contour never touches the cut).
// `tol` > 0 turns the error estimate into a hard bound: if est_error
// exceeds it a convergence_error is thrown.  A kernel that fails to decay
// along the rays (after the e^{-x lambda} weight) also raises
// convergence_error.
SpecialValue hankel_log_integral(const std::function<cplx(cplx)>& kernel,
                                 cplx x, const HankelContour& contour,
                                 double tol = 0.0);

// [x^2 - x(w1+w2) + (w1^2 + 3 w1 w2 + w2^2)/6] / (w1 w2)
cplx bernoulli22(cplx x, cplx w1, cplx w2);

// ln Gamma_2(x | w1, w2): the loop integral with kernel
// 1/((1-e^{-w1 lambda})(1-e^{-w2 lambda})) plus (gamma/2) B_{2,2}.
// Requires Re x > 0.
SpecialValue log_gamma2(cplx x, double w1, double w2,
                        const HankelContour& contour, double tol = 0.0);

// Composite Gauss-Legendre helpers shared by the quadrature-heavy
// modules.  integrate_gl integrates f over [a,b] with panels of width at
// most `max_panel`; 16 nodes per panel.
cplx integrate_gl(const std::function<cplx(double)>& f, double a, double b,
                  double max_panel);

}  // namespace qalg
