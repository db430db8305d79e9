#pragma once

#include <string>

#include "annuli/polar_grid.hpp"
#include "annuli/radial_profile.hpp"
#include "annuli/types.hpp"

namespace annuli {

/// Evaluated functionals of one map. The two total forms coincide on
/// radial maps but differ off them (the quadratic forms regroup the
/// gradient differently); both are reported.
struct EnergyReport {
  double combined_energy = 0.0;      // integral of a^2|h_N|^2 + b^2|h_T|^2
  double combined_distortion = 0.0;  // same integrand divided by J
  double grad_distortion = 0.0;      // (a^2 rho^2|grad Th|^2 + b^2|grad rho|^2)/J
  double total_hnht = 0.0;           // alpha * energy + beta * combined_distortion
  double total_dual = 0.0;           // alpha * energy + beta * inverse-map energy
  double integrand_min_jacobian = 0.0;
  bool distortion_divergent = false;
  std::size_t n_t = 0, n_theta = 0;

  std::string to_json() const;
};

/// 2 pi Int t (a^2 Hdot^2 + b^2 H^2/t^2) dt by composite Gauss quadrature.
double radial_combined_energy(const RadialProfile& p, const Weights& w);

/// 2 pi Int t (b^2 Hdot^2 + a^2 H^2/t^2) / (Hdot H / t) dt. Returns +inf for
/// profiles whose derivative vanishes at an endpoint (the integral
/// diverges there); throws degenerate_jacobian if Hdot H <= 0 inside.
double radial_distortion(const RadialProfile& p, const Weights& w);

/// 2 pi Int (alpha t + beta t^2/(H Hdot)) (a^2 Hdot^2 + b^2 H^2/t^2) dt.
double radial_total_energy(const RadialProfile& p, const Weights& w);

/// Inverse-map duality on radial maps: energy[w_a,w_b] of the numerically
/// inverted profile against distortion[w_b,w_a] of the original.
struct DualityReport {
  double energy_of_inverse;
  double distortion_of_profile;
  double relative_gap;
};
DualityReport duality_check(const RadialProfile& p, const Weights& w);

/// All functionals of a grid map by summation (trapezoid in theta,
/// fourth-order Simpson weights in t). Deterministic for a fixed grid.
EnergyReport grid_energy_report(const PolarGridMap& map, const Weights& w);

/// Report from a precomputed derivative field (avoids re-differentiation
/// in sweep loops).
EnergyReport grid_energy_report(const PolarGridMap& map, const DerivativeField& f,
                                const Weights& w);

}  // namespace annuli
