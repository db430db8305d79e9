#pragma once

#include <cstddef>

#include "annuli/radial_profile.hpp"
#include "annuli/types.hpp"

namespace annuli {

enum class Regime { Elastic, NonElastic, Boundary };

const char* to_string(Regime r);

/// Closed-form combined-energy minimizer for one (r, R, c) instance.
/// closed_form_energy is normalized per unit w_a * w_b: the functional is
/// homogeneous of degree one in that product at fixed c = w_a / w_b, so the
/// caller scales by its own weights.
struct EnergySolution {
  double r, R, c;
  double mu;
  Regime regime;
  double closed_form_energy;
  RadialProfile profile;
};

/// Closed-form combined-distortion minimizer. nu comes from root-finding on
/// the boundary condition H(r) = R; two closed-form candidates for it,
/// differing in a single exponent, are evaluated alongside as diagnostics
/// (only the R-exponent one agrees with the boundary condition).
/// closed_form_distortion is normalized per unit w_b^2 (see EnergySolution
/// for the convention).
struct DistortionSolution {
  double r, R, c;
  double nu;
  double nu_formula_r_exponent;  // (1 + r^{2/c} - 2 r R^{1/c}) / (1 - R^{2/c})
  double nu_formula_R_exponent;  // same with r^{2/c} replaced by R^{2/c}
  double closed_form_distortion;
  RadialProfile profile;
};

/// Feasibility threshold R* = (1 + r^{2/c}) / (2 r^{1/c}): a diffeomorphic
/// radial energy minimizer exists iff R >= R*. Equals cosh(log(r)/c).
double nitsche_threshold_energy(double r, double c);

/// Dual threshold for the combined distortion: feasibility iff r >= the
/// same expression with R in place of r.
double nitsche_threshold_distortion(double R, double c);

/// Radial combined-energy minimizer; throws below_nitsche when R is below
/// the threshold (mu < 0).
EnergySolution solve_combined_energy(const AnnulusPair& pair, double c,
                                     std::size_t n_nodes = 513);

/// Inverse map F of the energy minimizer, sampled on [1, R]. Requires
/// mu > 0 (at mu = 0 the inverse has an infinite derivative at s = 1).
RadialProfile inverse_profile(const EnergySolution& sol, std::size_t n_nodes = 513);

/// Elasticity classification with a pointwise certificate: the sign of
/// c t Hdot - H over the nodes must match the mu-based regime.
struct RegimeReport {
  Regime regime;
  double mu;
  double min_margin;  // min over nodes of c t Hdot - H
  double max_margin;
};
RegimeReport elasticity_regime(const EnergySolution& sol, double c);

/// Radial combined-distortion minimizer; throws below_nitsche when r is
/// below the dual threshold.
DistortionSolution solve_combined_distortion(const AnnulusPair& pair, double c,
                                             std::size_t n_nodes = 513);

}  // namespace annuli
