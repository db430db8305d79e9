#pragma once

#include "annuli/errors.hpp"

namespace annuli {

/// The four positive constants parameterizing every functional:
/// w_a weights the normal derivative, w_b the tangential one, and
/// (alpha, beta) mix the energy and distortion parts of the total energy.
struct Weights {
  double w_a = 1.0;
  double w_b = 1.0;
  double alpha = 1.0;
  double beta = 1.0;

  Weights() = default;
  Weights(double wa, double wb, double al = 1.0, double be = 1.0)
      : w_a(wa), w_b(wb), alpha(al), beta(be) {
    if (!(w_a > 0.0) || !(w_b > 0.0) || !(alpha > 0.0) || !(beta > 0.0))
      throw domain_error("Weights: all four constants must be positive");
  }

  /// Ratio of derivative weights; derived, never stored.
  double c() const { return w_a / w_b; }
  /// Ratio of the mixing constants; derived, never stored.
  double gamma() const { return alpha / beta; }
};

/// Inner-normalized annuli: domain A(1, r), target B(1, R).
struct AnnulusPair {
  double r;
  double R;

  AnnulusPair(double r_, double R_) : r(r_), R(R_) {
    if (!(r > 1.0) || !(R > 1.0))
      throw domain_error("AnnulusPair: both outer radii must exceed 1");
  }
};

}  // namespace annuli
