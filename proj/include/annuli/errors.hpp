#pragma once

#include <stdexcept>
#include <string>

namespace annuli {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct domain_error : error {
  using error::error;
};

/// Evaluation point outside the interval covered by a profile or curve.
struct out_of_domain : domain_error {
  using domain_error::domain_error;
};

/// Discrete Jacobian non-positive at a grid node.
struct non_positive_jacobian : error {
  non_positive_jacobian(std::size_t it, std::size_t jtheta, double jac)
      : error("non-positive Jacobian at node (" + std::to_string(it) + "," +
              std::to_string(jtheta) + "): J=" + std::to_string(jac)),
        i_t(it), j_theta(jtheta), value(jac) {}
  std::size_t i_t, j_theta;
  double value;
};

/// Target annulus too thin: the feasibility threshold is not met.
struct below_nitsche : error {
  below_nitsche(double value, double threshold)
      : error("infeasible: " + std::to_string(value) +
              " is below the feasibility threshold " + std::to_string(threshold)),
        value(value), threshold(threshold) {}
  double value, threshold;
};

/// Adaptive step control failed to meet its tolerance.
struct step_failure : error {
  using error::error;
};

/// Integrated trajectory lost positivity of the slope (integrator bug).
struct negative_slope : error {
  using error::error;
};

/// Shooting bracket expansion exceeded its configured bound.
struct bracket_failure : error {
  using error::error;
};

/// The reduced first-order equation cannot be started at q = 1.
struct singular_start : domain_error {
  using domain_error::domain_error;
};

/// Radial Jacobian H*Hdot vanishes or changes sign inside the interval.
struct degenerate_jacobian : error {
  using error::error;
};

/// Profile inversion failed (input not strictly monotone).
struct inversion_failure : error {
  using error::error;
};

/// Requested proof branch does not match the solution's regime.
struct regime_mismatch : error {
  using error::error;
};

/// Pointwise regime certificate contradicts the parameter classification.
struct inconsistent_certificate : error {
  using error::error;
};

/// Minimality certificate hypotheses are not satisfied by this instance.
struct certificate_unavailable : error {
  using error::error;
};

/// Perturbation amplitude damping could not restore a positive Jacobian.
struct cannot_satisfy_jacobian : error {
  using error::error;
};

/// Map is outside the admissible homotopy class (winding / boundary order).
struct class_violation : error {
  using error::error;
};

/// Operation precondition not met by the supplied instance.
struct precondition_unmet : error {
  using error::error;
};

/// Input file malformed or schema mismatch.
struct parse_error : error {
  using error::error;
};

}  // namespace annuli
