#pragma once

#include <string>
#include <utility>
#include <vector>

#include "annuli/pchip.hpp"

namespace annuli {

/// A sampled strictly increasing map H : [1, r] -> [1, R] with derivative
/// samples. The minimizer representation used throughout.
///
/// Hdot must be positive at interior nodes; a vanishing derivative is
/// tolerated at the endpoints only (the feasibility-boundary minimizer has
/// Hdot(1) = 0 and is still a legitimate object).
struct RadialProfile {
  std::vector<double> t_nodes;
  std::vector<double> h_values;
  std::vector<double> hdot_values;

  RadialProfile() = default;
  RadialProfile(std::vector<double> t, std::vector<double> h, std::vector<double> hdot);

  double r() const { return t_nodes.back(); }
  double R() const { return h_values.back(); }
  std::size_t size() const { return t_nodes.size(); }

  /// Hdot vanishes at an endpoint (non-diffeomorphism there).
  bool endpoint_degenerate() const;

  void write_csv(const std::string& path) const;
  static RadialProfile read_csv(const std::string& path);

 private:
  void validate() const;
};

/// Monotone cubic interpolant of a profile; the stored derivative samples
/// are used as Hermite slopes so both H and Hdot are exact at nodes.
class ProfileInterpolant {
 public:
  explicit ProfileInterpolant(const RadialProfile& p);

  /// (H(t), Hdot(t)); Hdot is the derivative of the H interpolant.
  std::pair<double, double> operator()(double t) const;
  double h(double t) const { return curve_.eval(t); }
  double hdot(double t) const { return curve_.derivative(t); }
  double t_min() const { return curve_.x_front(); }
  double t_max() const { return curve_.x_back(); }

  /// Inverse value F(s) by monotone bracketing, |H(F) - s| driven to
  /// tolerance 1e-12 in the argument.
  double inverse(double s) const;

 private:
  Pchip curve_;
};

/// Sample (H(t), Hdot(t)) at one point; convenience wrapper.
std::pair<double, double> eval_profile(const RadialProfile& p, double t);

/// Numerically inverted profile F : [1, R] -> [1, r] on n_nodes uniform
/// s samples; Fdot = 1/Hdot(F). Throws inversion_failure when the input is
/// not strictly monotone.
RadialProfile invert_profile(const RadialProfile& p, std::size_t n_nodes = 513);

}  // namespace annuli
