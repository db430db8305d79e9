#include "annuli/lagrangians.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "annuli/errors.hpp"
#include "annuli/kernels.hpp"
#include "annuli/quadrature.hpp"

namespace annuli {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sum of g(node) * t * dt * dtheta over the grid with deterministic order.
template <typename NodeFn>
double grid_integral(const PolarGridMap& map, NodeFn&& g) {
  const std::size_t nt = map.n_t(), nth = map.n_theta();
  const std::vector<double> tw = uniform_simpson_weights(nt, 1.0, map.r());
  const double dth = map.dtheta();
  double total = 0.0, comp = 0.0;
  std::vector<double> row(nth);
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < nth; ++j) row[j] = g(i, j);
    const double v = tw[i] * map.t_node(i) * dth *
                     kernels::ops().reduce_sum(row.data(), nth);
    const double t = total + v;
    comp += (std::abs(total) >= std::abs(v)) ? (total - t) + v : (v - t) + total;
    total = t;
  }
  return total + comp;
}

}  // namespace

FlResult fl_integral(const FreeLagrangianSpec& spec, const PolarGridMap& map,
                     const DerivativeField* precomputed) {
  DerivativeField local;
  const DerivativeField* f = precomputed;
  if (!f) {
    local = differentiate_grid(map);
    f = &local;
  }
  const double r = map.r(), R = map.R();
  FlResult res;
  res.note = "";

  switch (spec.kind) {
    case FreeLagrangianKind::RadialFunction: {
      res.computed = grid_integral(map, [&](std::size_t i, std::size_t) {
        return spec.density(map.t_node(i));
      });
      res.predicted =
          2.0 * kPi * integrate_gl([&](double t) { return t * spec.density(t); }, 1.0, r);
      break;
    }
    case FreeLagrangianKind::Pullback: {
      res.computed = grid_integral(map, [&](std::size_t i, std::size_t j) {
        return spec.density(map.rho(i, j)) * f->jac[f->idx(i, j)];
      });
      res.predicted =
          2.0 * kPi * integrate_gl([&](double s) { return s * spec.density(s); }, 1.0, R);
      break;
    }
    case FreeLagrangianKind::Radial: {
      res.computed = grid_integral(map, [&](std::size_t i, std::size_t j) {
        return spec.density(map.rho(i, j)) * f->rho_t[f->idx(i, j)] / map.t_node(i);
      });
      res.predicted = 2.0 * kPi * integrate_gl(spec.density, 1.0, R);
      break;
    }
    case FreeLagrangianKind::Angular: {
      res.computed = grid_integral(map, [&](std::size_t i, std::size_t j) {
        return spec.density(map.t_node(i)) * f->theta_theta[f->idx(i, j)] /
               map.t_node(i);
      });
      res.predicted = 2.0 * kPi * integrate_gl(spec.density, 1.0, r);
      res.note =
          "angular normalization: predicted = 2 pi Int B(t) dt, pairing "
          "Im[h_T/h] = Theta_theta/t with the area element t dt dtheta";
      break;
    }
    case FreeLagrangianKind::TwoVariable: {
      const double step = 1e-6;
      res.computed = grid_integral(map, [&](std::size_t i, std::size_t j) {
        const double t = map.t_node(i), s = map.rho(i, j);
        const double at = (spec.density2(t + step, s) - spec.density2(t - step, s)) /
                          (2.0 * step);
        const double as = (spec.density2(t, s + step) - spec.density2(t, s - step)) /
                          (2.0 * step);
        return (at + as * f->rho_t[f->idx(i, j)]) / t;
      });
      res.predicted = 2.0 * kPi * (spec.density2(r, R) - spec.density2(1.0, 1.0));
      break;
    }
    default:
      throw domain_error("fl_integral: unknown kind");
  }
  res.relative_gap =
      std::abs(res.computed - res.predicted) / std::max(1.0, std::abs(res.predicted));
  return res;
}

IneqMargin pointwise_ineq_general(double x, double y, const Weights& w, double p,
                                  double q) {
  if (x < 0.0 || y < 0.0)
    throw domain_error("pointwise_ineq_general: |h_N|, |h_T| must be nonnegative");
  const double wa = w.w_a, wb = w.w_b;
  const double root = p * wb * x - q * wa * y;
  IneqMargin m;
  m.direct = root * root;
  const double lhs = wa * wa * x * x + wb * wb * y * y;
  const double rhs = (wa * wa - wb * wb * p * p) * x * x +
                     (wb * wb - wa * wa * q * q) * y * y +
                     2.0 * p * q * wa * wb * x * y;
  m.lhs_minus_rhs = lhs - rhs;
  return m;
}

std::string LowerBoundCertificate::to_json() const {
  nlohmann::json j;
  j["instance"] = instance;
  j["pointwise_margin_min"] = std::isnan(pointwise_margin_min)
                                  ? nlohmann::json(nullptr)
                                  : nlohmann::json(pointwise_margin_min);
  j["bound_value"] = bound_value;
  j["integral_gap"] = integral_gap;
  j["equality_deviation"] = equality_locus_deviation;
  j["notes"] = notes;
  return j.dump();
}

LowerBoundCertificate verify_energy_lower_bound(const PolarGridMap& map,
                                                const EnergySolution& sol,
                                                const Weights& w,
                                                Regime expected_regime) {
  const bool mu_elastic = sol.mu >= 1.0;
  if ((expected_regime == Regime::Elastic) != mu_elastic)
    throw regime_mismatch("verify_energy_lower_bound: branch does not match mu");
  if (std::abs(w.c() - sol.c) > 1e-12 * (1.0 + sol.c))
    throw domain_error("verify_energy_lower_bound: weights ratio differs from sol.c");

  const double wa = w.w_a, wb = w.w_b, c = sol.c, mu = sol.mu;
  const double mu21 = mu * mu - 1.0;

  const DerivativeField f = differentiate_grid(map);
  const std::size_t nt = map.n_t(), nth = map.n_theta();

  // pointwise bound per node and margin statistics
  double margin_min = std::numeric_limits<double>::infinity();
  double margin_abs_max = 0.0;
  const auto bound_node = [&](std::size_t i, std::size_t j) {
    const double t = map.t_node(i);
    const double s = map.rho(i, j);
    const double J = f.jac[f.idx(i, j)];
    const double w_root = std::sqrt(std::max(0.0, mu21 + s * s));
    if (mu_elastic) {
      const double upsilon = 2.0 * wa * wb * mu21 / w_root;
      const double a_s = c * s / w_root;
      const double gamma_t = wb * wb * (1.0 - mu * mu) / (t * t);
      const double h_norm_n = f.rho_t[f.idx(i, j)];
      return upsilon * h_norm_n / t + 2.0 * wb * wb * a_s * J + gamma_t;
    }
    const double n_t = 2.0 * wb * wb * (1.0 - mu * mu) / t;
    const double jcoef = 2.0 * wa * wb * w_root / s;
    const double m_t = -wb * wb * (1.0 - mu * mu) / (t * t);
    const double im_ht_h = f.theta_theta[f.idx(i, j)] / t;
    return n_t * im_ht_h + jcoef * J + m_t;
  };

  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t j = 0; j < nth; ++j) {
      const double d = wa * wa * f.h_n_sq[f.idx(i, j)] + wb * wb * f.h_t_sq[f.idx(i, j)];
      const double m = d - bound_node(i, j);
      margin_min = std::min(margin_min, m);
      margin_abs_max = std::max(margin_abs_max, std::abs(m));
    }

  // map-independent value of the bound via the free-Lagrangian identities
  double predicted;
  const double R = sol.R, r = sol.r;
  if (mu_elastic) {
    predicted =
        2.0 * kPi *
        (integrate_gl(
             [&](double s) {
               const double w_root = std::sqrt(std::max(0.0, mu21 + s * s));
               return 2.0 * wa * wb * mu21 / w_root +
                      2.0 * wb * wb * (c * s / w_root) * s;
             },
             1.0, R) +
         integrate_gl([&](double t) { return wb * wb * (1.0 - mu * mu) / t; }, 1.0, r));
  } else {
    predicted =
        2.0 * kPi *
        (integrate_gl([&](double t) { return 2.0 * wb * wb * (1.0 - mu * mu) / t; },
                      1.0, r) +
         integrate_gl(
             [&](double s) {
               return 2.0 * wa * wb * std::sqrt(std::max(0.0, mu21 + s * s));
             },
             1.0, R) -
         integrate_gl([&](double t) { return wb * wb * (1.0 - mu * mu) / t; }, 1.0, r));
  }

  const EnergyReport rep = grid_energy_report(map, f, w);
  LowerBoundCertificate cert;
  cert.instance = "combined-energy r=" + std::to_string(r) + " R=" + std::to_string(R) +
                  " c=" + std::to_string(c) + " regime=" + to_string(sol.regime);
  cert.pointwise_margin_min = margin_min;
  cert.bound_value = predicted;
  cert.integral_gap = rep.combined_energy - predicted;
  cert.equality_locus_deviation = margin_abs_max;
  cert.notes.push_back(mu_elastic ? "elastic branch (p = w_b/w_a substitution)"
                                  : "non-elastic branch (q = w_a/w_b substitution)");
  return cert;
}

// ---------- total-energy machinery ----------

TotalBound::TotalBound(const RadialProfile& profile, const Weights& w)
    : H_(profile),
      F_(profile.h_values, profile.t_nodes,
         [&profile] {
           std::vector<double> s(profile.size());
           for (std::size_t i = 0; i < profile.size(); ++i)
             s[i] = 1.0 / profile.hdot_values[i];
           return s;
         }()),
      r_(profile.r()), R_(profile.R()),
      wa_(w.w_a), wb_(w.w_b), alpha_(w.alpha), beta_(w.beta) {}

double TotalBound::gamma_fn(double t, double s) const {
  const double Hd = H_.hdot(t);
  const double a_star = H_.h(t) / (t * Hd);
  const double g = std::sqrt(std::max(0.0, wa_ * wa_ - wb_ * wb_ * a_star * a_star));
  const double Fs = F_.eval(s);
  const double a_s = s * F_.derivative(s) / Fs;
  const double k = std::sqrt(std::max(0.0, wa_ * wa_ - wb_ * wb_ * a_s * a_s));
  return 2.0 * t * k * g * (alpha_ * Hd + beta_ * Fs / s);
}

double TotalBound::gamma_t(double t, double s) const {
  const double step = 1e-5;
  if (t - step >= 1.0 && t + step <= r_)
    return (gamma_fn(t + step, s) - gamma_fn(t - step, s)) / (2.0 * step);
  if (t + 2.0 * step <= r_)  // one-sided second order at the left edge
    return (-3.0 * gamma_fn(t, s) + 4.0 * gamma_fn(t + step, s) -
            gamma_fn(t + 2.0 * step, s)) /
           (2.0 * step);
  return (3.0 * gamma_fn(t, s) - 4.0 * gamma_fn(t - step, s) +
          gamma_fn(t - 2.0 * step, s)) /
         (2.0 * step);
}

double TotalBound::a_t(double t, double s) const {
  const double h_t = H_.h(t);
  if (s == h_t) return 0.0;
  return integrate_gl([&](double tau) { return gamma_t(t, tau); }, h_t, s, 8, 32);
}

double TotalBound::coeff_u(double s) const {
  const double Fs = F_.eval(s);
  const double a_s = s * F_.derivative(s) / Fs;
  const double k2 = wa_ * wa_ - wb_ * wb_ * a_s * a_s;
  return 2.0 * alpha_ * wb_ * wb_ * a_s - beta_ * (Fs / s) * (Fs / s) * k2;
}

double TotalBound::coeff_v(double t) const {
  const double Hd = H_.hdot(t);
  const double a_star = H_.h(t) / (t * Hd);
  const double g2 = wa_ * wa_ - wb_ * wb_ * a_star * a_star;
  return 2.0 * beta_ * wb_ * wb_ * a_star - alpha_ * Hd * Hd * g2;
}

double TotalBound::a_corner() const {
  // Scal(r, R) = Int_1^R Gamma(r, tau) dtau
  //            - Int_1^r Int_1^{H(sigma)} Gamma_sigma(sigma, tau) dtau dsigma
  const double first =
      integrate_gl([&](double tau) { return gamma_fn(r_, tau); }, 1.0, R_, 16, 32);
  const double second = integrate_gl(
      [&](double sigma) {
        return integrate_gl([&](double tau) { return gamma_t(sigma, tau); }, 1.0,
                            H_.h(sigma), 8, 32);
      },
      1.0, r_, 16, 32);
  return first - second;
}

double TotalBound::predicted_bound() const {
  const double su =
      integrate_gl([&](double s) { return s * coeff_u(s); }, 1.0, R_, 16, 32);
  const double tv =
      integrate_gl([&](double t) { return t * coeff_v(t); }, 1.0, r_, 16, 32);
  return 2.0 * kPi * (su + tv + a_corner());
}

double TotalBound::bound_at(double t, double s, double jac, double h_norm_n) const {
  return coeff_u(s) * jac + coeff_v(t) + gamma_fn(t, s) * h_norm_n / t;
}

LowerBoundCertificate verify_total_lower_bound(const PolarGridMap& map,
                                               const ShootResult& shoot,
                                               const Weights& w) {
  if (std::abs(w.c() - shoot.c) > 1e-12 * (1.0 + shoot.c))
    throw domain_error("verify_total_lower_bound: weights ratio differs from shoot.c");
  if (std::abs(w.gamma() - shoot.gamma) > 1e-12 * (1.0 + shoot.gamma))
    throw domain_error("verify_total_lower_bound: alpha/beta differs from shoot.gamma");

  const DerivativeField f = differentiate_grid(map);
  const EnergyReport rep = grid_energy_report(map, f, w);
  const std::size_t nt = map.n_t(), nth = map.n_theta();

  LowerBoundCertificate cert;
  cert.instance = "total-energy r=" + std::to_string(shoot.r) +
                  " R=" + std::to_string(shoot.R) + " c=" + std::to_string(shoot.c) +
                  " gamma=" + std::to_string(shoot.gamma) +
                  " case=" + to_string(shoot.concavity);

  if (shoot.concavity == ConcavityVerdict::Balanced) {
    const double ab2 = 2.0 * w.w_a * w.w_b;
    double margin_min = std::numeric_limits<double>::infinity();
    double margin_abs_max = 0.0;
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t j = 0; j < nth; ++j) {
        const std::size_t k = f.idx(i, j);
        const double d = w.w_a * w.w_a * f.h_n_sq[k] + w.w_b * w.w_b * f.h_t_sq[k];
        const double m = w.alpha * (d - ab2 * f.jac[k]) + w.beta * (d / f.jac[k] - ab2);
        margin_min = std::min(margin_min, m);
        margin_abs_max = std::max(margin_abs_max, std::abs(m));
      }
    const double predicted = ab2 * kPi * (w.alpha * (shoot.R * shoot.R - 1.0) +
                                          w.beta * (shoot.r * shoot.r - 1.0));
    cert.pointwise_margin_min = margin_min;
    cert.bound_value = predicted;
    cert.integral_gap = rep.total_hnht - predicted;
    cert.equality_locus_deviation = margin_abs_max;
    cert.notes.push_back("balanced case: pointwise bound 2 w_a w_b (alpha J + beta)");
    return cert;
  }

  if (shoot.concavity == ConcavityVerdict::ConcavityCase) {
    const TotalBound tb(shoot.profile, w);
    double margin_min = std::numeric_limits<double>::infinity();
    double margin_abs_max = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
      const double t = map.t_node(i);
      for (std::size_t j = 0; j < nth; ++j) {
        const std::size_t k = f.idx(i, j);
        const double d = w.w_a * w.w_a * f.h_n_sq[k] + w.w_b * w.w_b * f.h_t_sq[k];
        const double dd = w.alpha * d + w.beta * d / f.jac[k];
        const double m = dd - tb.bound_at(t, map.rho(i, j), f.jac[k], f.rho_t[k]);
        margin_min = std::min(margin_min, m);
        margin_abs_max = std::max(margin_abs_max, std::abs(m));
      }
    }
    cert.pointwise_margin_min = margin_min;
    cert.bound_value = tb.predicted_bound();
    cert.integral_gap = rep.total_hnht - cert.bound_value;
    cert.equality_locus_deviation = margin_abs_max;
    cert.notes.push_back("concavity case: two-variable coefficient machinery");
    return cert;
  }

  if (shoot.concavity == ConcavityVerdict::ConvexityCase) {
    // reduce to the concave problem of the inverse mappings
    const RadialProfile inv = invert_profile(shoot.profile,
                                             std::max<std::size_t>(shoot.profile.size(), 1025));
    const Weights w_sw(w.w_b, w.w_a, w.beta, w.alpha);
    const TotalBound tb(inv, w_sw);
    cert.pointwise_margin_min = kNaN;
    cert.bound_value = radial_total_energy(shoot.profile, w);
    cert.integral_gap = rep.total_hnht - cert.bound_value;
    cert.equality_locus_deviation = kNaN;
    cert.notes.push_back(
        "convexity case: certified via the inverse problem (weights and "
        "alpha/beta swapped); integral gap is the direct dominance check");
    // consistency of the two routes on the radial minimizer itself
    const double via_inverse = tb.predicted_bound();
    const double direct = radial_total_energy(shoot.profile, w);
    cert.notes.push_back("inverse-problem bound = " + std::to_string(via_inverse) +
                         ", radial value = " + std::to_string(direct));
    return cert;
  }

  throw certificate_unavailable(
      "verify_total_lower_bound: instance is neither balanced nor a certified "
      "concavity/convexity case");
}

GammaSignReport gamma_sign_checks(const ShootResult& shoot, const Weights& w,
                                  std::size_t n_grid) {
  if (shoot.concavity != ConcavityVerdict::ConcavityCase)
    throw precondition_unmet("gamma_sign_checks: requires a certified concavity case");
  const TotalBound tb(shoot.profile, w);
  const double r = shoot.r, R = shoot.R;

  GammaSignReport rep;
  rep.grid_n = n_grid;
  rep.band = 2.0 * (R - 1.0) / static_cast<double>(n_grid - 1);
  rep.max_a_t = -std::numeric_limits<double>::infinity();
  rep.sign_violations = 0;

  const GaussRule& rule = gauss_legendre(16);
  const std::size_t npts = rule.nodes.size();
  std::vector<double> cell_vals(npts);
  const auto panel = [&](double t, double a, double b) {
    for (std::size_t k = 0; k < npts; ++k)
      cell_vals[k] = tb.gamma_t(t, 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[k]);
    return 0.5 * (b - a) *
           kernels::ops().reduce_dot(rule.weights.data(), cell_vals.data(), npts);
  };

  for (std::size_t i = 0; i < n_grid; ++i) {
    const double t = 1.0 + (r - 1.0) * static_cast<double>(i) /
                               static_cast<double>(n_grid - 1);
    const double ht = tb.h(t);

    // cumulative prefix integrals of Gamma_t(t, .) over the s cells
    std::vector<double> prefix(n_grid, 0.0);
    std::vector<double> s_nodes(n_grid);
    for (std::size_t j = 0; j < n_grid; ++j)
      s_nodes[j] = 1.0 + (R - 1.0) * static_cast<double>(j) /
                             static_cast<double>(n_grid - 1);
    for (std::size_t j = 1; j < n_grid; ++j)
      prefix[j] = prefix[j - 1] + panel(t, s_nodes[j - 1], s_nodes[j]);
    const double base = panel(t, 1.0, ht);  // Int_1^{H(t)} Gamma_t(t, .)
    for (std::size_t j = 0; j < n_grid; ++j) {
      rep.max_a_t = std::max(rep.max_a_t, prefix[j] - base);  // A_t(t, s_j)
      const double s = s_nodes[j];
      if (std::abs(s - ht) <= rep.band) continue;
      const double g = tb.gamma_t(t, s);
      if ((s < ht && g <= 0.0) || (s > ht && g >= 0.0)) ++rep.sign_violations;
    }
  }
  rep.trichotomy_ok = rep.sign_violations == 0;
  return rep;
}

std::string GammaSignReport::to_json() const {
  nlohmann::json j;
  j["max_A_t"] = max_a_t;
  j["trichotomy_ok"] = trichotomy_ok;
  j["band"] = band;
  j["grid_n"] = grid_n;
  j["sign_violations"] = sign_violations;
  return j.dump();
}

}  // namespace annuli
