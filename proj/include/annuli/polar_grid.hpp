#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "annuli/radial_profile.hpp"

namespace annuli {

/// Sampled degree-1 annulus map h = rho e^{i Theta} on the uniform polar
/// grid t_i = 1 + i (r-1)/(n_t-1), theta_j = 2 pi j / n_theta (one period,
/// no duplicate seam column). Theta is stored unwrapped:
/// Theta(t, theta + 2 pi) = Theta(t, theta) + 2 pi is synthesized at the seam.
///
/// A target rotation is carried as a separate scalar offset instead of
/// being folded into the samples: every functional below depends on Theta
/// only through differences, so rotation invariance is exact by
/// construction. Serialization materializes the offset.
class PolarGridMap {
 public:
  PolarGridMap(std::size_t n_t, std::size_t n_theta, double r, double R,
               std::vector<double> rho, std::vector<double> theta);

  static PolarGridMap radial_lift(const RadialProfile& profile, std::size_t n_theta);

  std::size_t n_t() const { return n_t_; }
  std::size_t n_theta() const { return n_theta_; }
  double r() const { return r_; }
  double R() const { return R_; }
  double dt() const { return (r_ - 1.0) / static_cast<double>(n_t_ - 1); }
  double dtheta() const;
  double t_node(std::size_t i) const { return 1.0 + dt() * static_cast<double>(i); }
  double theta_node(std::size_t j) const;

  double rho(std::size_t i, std::size_t j) const { return rho_[i * n_theta_ + j]; }
  /// Theta including the rotation offset.
  double theta(std::size_t i, std::size_t j) const {
    return theta_[i * n_theta_ + j] + theta_shift_;
  }
  double theta_shift() const { return theta_shift_; }

  const double* rho_row(std::size_t i) const { return rho_.data() + i * n_theta_; }
  const double* theta_row(std::size_t i) const { return theta_.data() + i * n_theta_; }

  /// Map rotated by phi0 in the target: rho unchanged, Theta + phi0.
  PolarGridMap rotated(double phi0) const;

  void save_json(const std::string& path) const;
  static PolarGridMap load_json(const std::string& path);

 private:
  void validate() const;

  std::size_t n_t_, n_theta_;
  double r_, R_;
  std::vector<double> rho_, theta_;
  double theta_shift_ = 0.0;
};

/// First derivatives and derived pointwise quantities on the grid, all in
/// row-major t-major layout. Central differences in theta (periodic) and in
/// the t interior; second-order one-sided stencils at the t boundary rows.
struct DerivativeField {
  std::size_t n_t = 0, n_theta = 0;
  std::vector<double> rho_t, rho_theta, theta_t, theta_theta;
  std::vector<double> h_n_sq, h_t_sq, grad_rho_sq, rho_sq_grad_theta_sq, jac;

  std::size_t idx(std::size_t i, std::size_t j) const { return i * n_theta + j; }
};

/// Differentiate the map. Throws non_positive_jacobian if J <= 0 at an
/// interior node (boundary rows may degenerate to J = 0).
DerivativeField differentiate_grid(const PolarGridMap& map);

}  // namespace annuli
