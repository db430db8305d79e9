#include "annuli/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "annuli/errors.hpp"
#include "annuli/quadrature.hpp"

namespace annuli {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_rc(double v, double c, const char* what) {
  if (!(v > 1.0)) throw domain_error(std::string(what) + ": radius must exceed 1");
  if (!(c > 0.0)) throw domain_error(std::string(what) + ": c must be positive");
}
}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Elastic: return "elastic";
    case Regime::NonElastic: return "non-elastic";
    case Regime::Boundary: return "boundary";
  }
  return "?";
}

double nitsche_threshold_energy(double r, double c) {
  check_rc(r, c, "nitsche_threshold_energy");
  const double x = std::pow(r, 1.0 / c);
  return (1.0 + x * x) / (2.0 * x);
}

double nitsche_threshold_distortion(double R, double c) {
  check_rc(R, c, "nitsche_threshold_distortion");
  const double y = std::pow(R, 1.0 / c);
  return (1.0 + y * y) / (2.0 * y);
}

EnergySolution solve_combined_energy(const AnnulusPair& pair, double c,
                                     std::size_t n_nodes) {
  check_rc(pair.r, c, "solve_combined_energy");
  if (n_nodes < 2) throw domain_error("solve_combined_energy: n_nodes too small");
  const double r = pair.r, R = pair.R;
  const double r1c = std::pow(r, 1.0 / c);
  const double r2c = r1c * r1c;
  double mu = (1.0 + r2c - 2.0 * r1c * R) / (1.0 - r2c);
  if (mu < -1e-12) throw below_nitsche(R, nitsche_threshold_energy(r, c));
  if (mu < 0.0) mu = 0.0;

  std::vector<double> t(n_nodes), h(n_nodes), hd(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const double ti =
        1.0 + (r - 1.0) * static_cast<double>(i) / static_cast<double>(n_nodes - 1);
    const double x = std::pow(ti, 1.0 / c);
    const double u = 0.5 * (1.0 + mu) * x;
    const double v = 0.5 * (1.0 - mu) / x;
    t[i] = ti;
    h[i] = u + v;              // cosh(log t / c) + mu sinh(log t / c)
    hd[i] = (u - v) / (c * ti);
  }
  h.front() = 1.0;
  if (mu == 0.0) hd.front() = 0.0;

  const double energy =
      2.0 * kPi *
      (1.0 - 4.0 * r1c * R + R * R + r2c * (1.0 + R * R)) / (r2c - 1.0);

  Regime regime = Regime::NonElastic;
  if (mu == 0.0) regime = Regime::Boundary;
  else if (mu >= 1.0) regime = Regime::Elastic;

  EnergySolution sol{r, R, c, mu, regime, energy,
                     RadialProfile(std::move(t), std::move(h), std::move(hd))};
  if (std::abs(sol.profile.R() - R) > 1e-9 * R)
    throw error("solve_combined_energy: boundary condition violated");
  return sol;
}

RadialProfile inverse_profile(const EnergySolution& sol, std::size_t n_nodes) {
  if (n_nodes < 2) throw domain_error("inverse_profile: n_nodes too small");
  const double mu = sol.mu, c = sol.c, R = sol.R;
  if (mu <= 1e-12)
    throw domain_error(
        "inverse_profile: mu = 0 boundary minimizer has an infinite inverse "
        "derivative at s = 1");
  std::vector<double> s(n_nodes), f(n_nodes), fd(n_nodes);
  for (std::size_t k = 0; k < n_nodes; ++k) {
    const double sk =
        1.0 + (R - 1.0) * static_cast<double>(k) / static_cast<double>(n_nodes - 1);
    const double w = std::sqrt(mu * mu - 1.0 + sk * sk);
    const double F = std::pow((sk + w) / (1.0 + mu), c);
    s[k] = sk;
    f[k] = F;
    fd[k] = c * F / w;
  }
  f.front() = 1.0;
  return RadialProfile(std::move(s), std::move(f), std::move(fd));
}

RegimeReport elasticity_regime(const EnergySolution& sol, double c) {
  const auto& p = sol.profile;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = c * p.t_nodes[i] * p.hdot_values[i] - p.h_values[i];
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  const double tol = 1e-10 * (1.0 + sol.R);
  RegimeReport rep{sol.regime, sol.mu, lo, hi};
  const bool pointwise_elastic = lo >= -tol;
  const bool pointwise_nonelastic = hi <= tol;
  const bool mu_elastic = sol.mu >= 1.0;
  if (mu_elastic && !pointwise_elastic)
    throw inconsistent_certificate(
        "elasticity_regime: mu >= 1 but c t Hdot - H dips negative");
  if (!mu_elastic && !pointwise_nonelastic)
    throw inconsistent_certificate(
        "elasticity_regime: mu < 1 but c t Hdot - H rises positive");
  rep.regime = mu_elastic ? Regime::Elastic
                          : (sol.mu == 0.0 ? Regime::Boundary : Regime::NonElastic);
  return rep;
}

DistortionSolution solve_combined_distortion(const AnnulusPair& pair, double c,
                                             std::size_t n_nodes) {
  check_rc(pair.R, c, "solve_combined_distortion");
  if (n_nodes < 2) throw domain_error("solve_combined_distortion: n_nodes too small");
  const double r = pair.r, R = pair.R;

  const auto h_of = [&](double nu, double t) {
    return std::pow((t + std::sqrt(nu * nu - 1.0 + t * t)) / (1.0 + nu), c);
  };
  // H_nu(r) decreases strictly in nu; bisect the boundary condition.
  if (h_of(0.0, r) < R)
    throw below_nitsche(r, nitsche_threshold_distortion(R, c));
  double lo = 0.0, hi = 1.0;
  while (h_of(hi, r) > R) {
    hi *= 2.0;
    if (hi > 1e12) throw bracket_failure("solve_combined_distortion: nu bracket");
  }
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    (h_of(mid, r) >= R ? lo : hi) = mid;
  }
  const double nu = 0.5 * (lo + hi);
  if (nu <= 1e-12)
    throw domain_error(
        "solve_combined_distortion: threshold-boundary instance has an "
        "infinite derivative at t = 1");

  const double y = std::pow(R, 1.0 / c);
  const double y2 = y * y;
  const double rr = std::pow(r, 1.0 / c);
  DistortionSolution sol;
  sol.r = r;
  sol.R = R;
  sol.c = c;
  sol.nu = nu;
  sol.nu_formula_r_exponent = (1.0 + rr * rr - 2.0 * y * r) / (1.0 - y2);
  sol.nu_formula_R_exponent = (2.0 * r * y - y2 - 1.0) / (y2 - 1.0);

  std::vector<double> t(n_nodes), h(n_nodes), hd(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const double ti =
        1.0 + (r - 1.0) * static_cast<double>(i) / static_cast<double>(n_nodes - 1);
    const double w = std::sqrt(nu * nu - 1.0 + ti * ti);
    const double H = h_of(nu, ti);
    t[i] = ti;
    h[i] = H;
    hd[i] = c * H / w;
  }
  h.front() = 1.0;
  sol.profile = RadialProfile(std::move(t), std::move(h), std::move(hd));

  // distortion value per unit w_b^2, by composite Gauss quadrature of the
  // radial integrand t (Hdot^2 + c^2 H^2/t^2) / (Hdot H / t)
  const double c2 = c * c;
  sol.closed_form_distortion =
      2.0 * kPi *
      integrate_gl(
          [&](double tt) {
            const double w = std::sqrt(nu * nu - 1.0 + tt * tt);
            const double H = h_of(nu, tt);
            const double Hd = c * H / w;
            return tt * (Hd * Hd + c2 * H * H / (tt * tt)) / (Hd * H / tt);
          },
          1.0, r);
  return sol;
}

}  // namespace annuli
