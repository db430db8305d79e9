#pragma once

#include <string>
#include <vector>

#include "annuli/radial_profile.hpp"
#include "annuli/rk45.hpp"
#include "annuli/types.hpp"

namespace annuli {

enum class ShootCase { Balanced, Expanding, Contracting };
enum class ConcavityVerdict { ConcavityCase, ConvexityCase, Balanced, Neither };

const char* to_string(ShootCase c);
const char* to_string(ConcavityVerdict v);

/// Radial total-energy minimizer found by shooting on the initial slope.
struct ShootResult {
  double r, R, c, gamma;
  double q;  // Hdot(1)
  RadialProfile profile;
  ShootCase case_label;          // sign of q - 1/c
  ConcavityVerdict concavity;    // sign pattern of c^2 t Hdot - H
  double ode_residual_sup;       // sup interior residual of the profile
  double concavity_margin_min;   // min over nodes of c^2 t Hdot - H
  double concavity_margin_max;

  std::string to_json() const;
};

/// Right-hand side of the second-order Euler-Lagrange equation
/// H'' = H'^2 (H - c^2 t H') (t + g H H') / (t H (H + c^2 g t H'^3)).
double el_rhs(double t, double H, double Hd, double c, double gamma);

/// Trajectory of the Euler-Lagrange equation from H(1) = 1, H'(1) = q on
/// [1, t_max], sampled at n_nodes uniform nodes. The denominator stays
/// positive while H, H' > 0; a non-positive slope aborts with
/// negative_slope (it cannot occur for admissible parameters).
RadialProfile integrate_el_ode(double q, double c, double gamma, double t_max,
                               std::size_t n_nodes = 1025,
                               const OdeOptions& opt = {});

/// H_q(t_max) only (used by the shooting bracket).
double el_ode_endpoint(double q, double c, double gamma, double t_max,
                       const OdeOptions& opt = {});

/// One solution curve of the reduced slope equation, extracted
/// parametrically from the trajectory: s = H/t, Phi = t Hdot / H. The
/// parametric route stays regular where the reduced equation's (Phi - 1)
/// denominator vanishes; only the start value q = 1 is rejected.
struct PhiCurve {
  double q = 0.0;
  std::vector<double> s_nodes;
  std::vector<double> phi_values;
  double left_endpoint_hint = 0.0;   // a(q), 1, or 0 by branch
  double right_endpoint_hint = 0.0;  // +inf marker

  void write_csv(const std::string& path) const;
};

PhiCurve phi_curve(double q, double c, double gamma, double s_max,
                   std::size_t n_samples = 257, double s_min = 0.0);

/// Phi_q(s) by trajectory crossing; NaN when s is outside the branch's
/// maximal interval.
double phi_at(double q, double c, double gamma, double s);

/// Find q = q(r, R, c) by bisection on the strictly increasing map
/// q -> H_q(r); |H_q(r) - R| <= tol * R on return.
ShootResult shoot(const AnnulusPair& pair, double c, double gamma,
                  double tol = 1e-8, std::size_t n_nodes = 1025);

/// Case trichotomy from the sign of q - 1/c, with the monotonicity of
/// s(t) = H(t) / t^{1/c} it implies.
struct CaseInfo {
  ShootCase label;
  const char* s_monotonicity;  // "constant" / "increasing" / "decreasing"
};
CaseInfo case_classify(double q, double c);

/// Analytic parameter bounds for certified concave instances, evaluated
/// and reported; a violation on a certified instance flags the bound
/// expression itself as inconsistent, not the instance.
struct ConcaveCaseBounds {
  double q, c, r, R;
  double bound1_rhs;       // log(q c^2) / log(1/c^2 - 1)
  bool bound1_meaningful;  // the logarithm base must be positive and != 1
  bool bound1_satisfied;
  double bound2_lo, bound2_hi;  // r^{1/c^2} <= R <= r q c^2
  bool bound2_satisfied;
  double bound3_rhs;  // r < 1/(1 - c^2 + c^2/R)
  bool bound3_satisfied;
  bool alarm;

  std::string to_json() const;
};
ConcaveCaseBounds concave_case_bounds(const ShootResult& res, double c);

/// Empirical limit behavior of q -> Phi_q(s) along sequences approaching
/// 0, 1, 1/c and infinity, plus the non-crossing monotonicity in q.
///
/// Each sequence is checked for monotone convergence (trend + shrinking
/// increments). The claimed limit is recorded alongside; near q = 1 the
/// measured limits are separatrix values well away from 1, so claim
/// consistency is reported, never asserted.
struct LimitSequence {
  std::string name;
  double s;
  double claimed_target;  // +inf allowed
  std::vector<double> qs;
  std::vector<double> phis;
  bool monotone_trend;
  bool increments_shrink;
  double final_gap;        // |phi_last - claimed_target| (finite targets)
  bool claim_consistent;   // measured limit compatible with the claim
  bool pass;               // monotone empirical convergence
};
struct LimitReport {
  std::vector<LimitSequence> sequences;
  bool q_monotonicity;  // Phi_q(s) increasing in q at every probe
  bool pass;

  std::string to_json() const;
};
LimitReport phi_limit_suite(double c, double gamma, std::vector<double> s_probe);

}  // namespace annuli
