#pragma once
#include <stdexcept>

namespace qalg {

// Numeric failure taxonomy shared by all modules.  A pole_error means an
// evaluation point sits on (or numerically too close to) a pole or branch
// point of the requested function; strip_error means an argument violates
// the horizontal-strip domain of a half-current or contraction; a
// convergence_error is raised when a truncated sum, quadrature or
// extrapolation cannot reach the requested accuracy.
struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct strip_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qalg
