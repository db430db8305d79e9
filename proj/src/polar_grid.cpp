#include "annuli/polar_grid.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "annuli/errors.hpp"
#include "annuli/kernels.hpp"

namespace annuli {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PolarGridMap::PolarGridMap(std::size_t n_t, std::size_t n_theta, double r, double R,
                           std::vector<double> rho, std::vector<double> theta)
    : n_t_(n_t), n_theta_(n_theta), r_(r), R_(R),
      rho_(std::move(rho)), theta_(std::move(theta)) {
  validate();
}

double PolarGridMap::dtheta() const {
  return kTwoPi / static_cast<double>(n_theta_);
}

double PolarGridMap::theta_node(std::size_t j) const {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(n_theta_);
}

void PolarGridMap::validate() const {
  if (n_t_ < 4 || n_theta_ < 8)
    throw domain_error("PolarGridMap: grid too small (need n_t >= 4, n_theta >= 8)");
  if (!(r_ > 1.0) || !(R_ > 1.0))
    throw domain_error("PolarGridMap: outer radii must exceed 1");
  if (rho_.size() != n_t_ * n_theta_ || theta_.size() != n_t_ * n_theta_)
    throw domain_error("PolarGridMap: array sizes do not match the grid");

  const double tol_inner = 1e-9;
  const double tol_outer = 1e-9 * R_;
  for (std::size_t j = 0; j < n_theta_; ++j) {
    if (std::abs(rho(0, j) - 1.0) > tol_inner)
      throw class_violation("PolarGridMap: inner boundary circle not preserved");
    if (std::abs(rho(n_t_ - 1, j) - R_) > tol_outer)
      throw class_violation("PolarGridMap: outer boundary circle not preserved");
  }
  for (double v : rho_)
    if (!(v > 0.0)) throw class_violation("PolarGridMap: rho must stay positive");

  // degree-1 check: within each row, Theta - theta deviates from its row
  // mean by less than pi, which pins the winding number to one.
  for (std::size_t i = 0; i < n_t_; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < n_theta_; ++j)
      mean += theta_[i * n_theta_ + j] - theta_node(j);
    mean /= static_cast<double>(n_theta_);
    for (std::size_t j = 0; j < n_theta_; ++j) {
      const double dev = theta_[i * n_theta_ + j] - theta_node(j) - mean;
      if (!(std::abs(dev) < 3.1))
        throw class_violation("PolarGridMap: winding/unwrapped-storage check failed");
    }
  }
}

PolarGridMap PolarGridMap::radial_lift(const RadialProfile& profile,
                                       std::size_t n_theta) {
  const std::size_t n_t = profile.size();
  std::vector<double> rho(n_t * n_theta), theta(n_t * n_theta);
  for (std::size_t i = 0; i < n_t; ++i)
    for (std::size_t j = 0; j < n_theta; ++j) {
      rho[i * n_theta + j] = profile.h_values[i];
      theta[i * n_theta + j] =
          kTwoPi * static_cast<double>(j) / static_cast<double>(n_theta);
    }
  // The lift lives on the uniform grid; reject profiles that are not.
  const double h = (profile.r() - 1.0) / static_cast<double>(n_t - 1);
  for (std::size_t i = 0; i < n_t; ++i)
    if (std::abs(profile.t_nodes[i] - (1.0 + h * static_cast<double>(i))) >
        1e-9 * profile.r())
      throw domain_error("radial_lift: profile nodes must be uniform in t");
  return PolarGridMap(n_t, n_theta, profile.r(), profile.R(),
                      std::move(rho), std::move(theta));
}

PolarGridMap PolarGridMap::rotated(double phi0) const {
  PolarGridMap copy = *this;
  copy.theta_shift_ += phi0;
  return copy;
}

void PolarGridMap::save_json(const std::string& path) const {
  nlohmann::json j;
  j["n_t"] = n_t_;
  j["n_theta"] = n_theta_;
  j["r"] = r_;
  j["R"] = R_;
  std::vector<double> theta_out(theta_);
  if (theta_shift_ != 0.0)
    for (double& v : theta_out) v += theta_shift_;
  j["rho"] = rho_;
  j["theta"] = theta_out;
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  out << j.dump() << '\n';
}

PolarGridMap PolarGridMap::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw parse_error(path + ": invalid JSON (" + e.what() + ")");
  }
  try {
    return PolarGridMap(j.at("n_t").get<std::size_t>(),
                        j.at("n_theta").get<std::size_t>(),
                        j.at("r").get<double>(), j.at("R").get<double>(),
                        j.at("rho").get<std::vector<double>>(),
                        j.at("theta").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": schema mismatch (" + e.what() + ")");
  }
}

DerivativeField differentiate_grid(const PolarGridMap& map) {
  const auto& K = kernels::ops();
  const std::size_t nt = map.n_t(), nth = map.n_theta();
  const std::size_t total = nt * nth;
  DerivativeField f;
  f.n_t = nt;
  f.n_theta = nth;
  f.rho_t.resize(total);
  f.rho_theta.resize(total);
  f.theta_t.resize(total);
  f.theta_theta.resize(total);
  f.h_n_sq.resize(total);
  f.h_t_sq.resize(total);
  f.grad_rho_sq.resize(total);
  f.rho_sq_grad_theta_sq.resize(total);
  f.jac.resize(total);

  const double inv2dth = 1.0 / (2.0 * map.dtheta());
  const double inv2dt = 1.0 / (2.0 * map.dt());

  for (std::size_t i = 0; i < nt; ++i) {
    K.central_diff_periodic(map.rho_row(i), f.rho_theta.data() + i * nth, nth,
                            inv2dth, 0.0);
    K.central_diff_periodic(map.theta_row(i), f.theta_theta.data() + i * nth, nth,
                            inv2dth, kTwoPi);
  }
  for (std::size_t i = 1; i + 1 < nt; ++i) {
    K.row_diff_scaled(map.rho_row(i + 1), map.rho_row(i - 1),
                      f.rho_t.data() + i * nth, nth, inv2dt);
    K.row_diff_scaled(map.theta_row(i + 1), map.theta_row(i - 1),
                      f.theta_t.data() + i * nth, nth, inv2dt);
  }
  K.row_onesided_diff(map.rho_row(0), map.rho_row(1), map.rho_row(2),
                      f.rho_t.data(), nth, inv2dt);
  K.row_onesided_diff(map.theta_row(0), map.theta_row(1), map.theta_row(2),
                      f.theta_t.data(), nth, inv2dt);
  K.row_onesided_diff(map.rho_row(nt - 1), map.rho_row(nt - 2), map.rho_row(nt - 3),
                      f.rho_t.data() + (nt - 1) * nth, nth, -inv2dt);
  K.row_onesided_diff(map.theta_row(nt - 1), map.theta_row(nt - 2),
                      map.theta_row(nt - 3), f.theta_t.data() + (nt - 1) * nth, nth,
                      -inv2dt);

  for (std::size_t i = 0; i < nt; ++i) {
    const std::size_t off = i * nth;
    K.field_row(map.t_node(i), map.rho_row(i), f.rho_t.data() + off,
                f.rho_theta.data() + off, f.theta_t.data() + off,
                f.theta_theta.data() + off, nth, f.h_n_sq.data() + off,
                f.h_t_sq.data() + off, f.grad_rho_sq.data() + off,
                f.rho_sq_grad_theta_sq.data() + off, f.jac.data() + off);
  }

  for (std::size_t i = 0; i < nt; ++i) {
    const bool boundary = (i == 0 || i + 1 == nt);
    for (std::size_t j = 0; j < nth; ++j) {
      const double J = f.jac[i * nth + j];
      if (boundary ? (J < -1e-12 * map.R()) : !(J > 0.0))
        throw non_positive_jacobian(i, j, J);
    }
  }
  return f;
}

}  // namespace annuli
