#include "annuli/competitors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include <json.hpp>

#include "annuli/errors.hpp"
#include "annuli/quadrature.hpp"

namespace annuli {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

const char* to_string(Functional f) {
  switch (f) {
    case Functional::CombinedEnergy: return "energy";
    case Functional::Distortion: return "distortion";
    case Functional::Total: return "total";
  }
  return "?";
}

CompetitorMap make_competitor_ex(const PerturbationSpec& spec, std::size_t n_t,
                                 std::size_t n_theta) {
  if (spec.mode_t < 1 || spec.mode_theta < 1)
    throw domain_error("make_competitor: modes must be >= 1");
  const double r = spec.base.r();
  const ProfileInterpolant interp(spec.base);

  // the twist amplitude rides on eps_angular so that a zero-amplitude spec
  // reproduces the radial lift exactly
  SplitMix64 rng(spec.seed);
  const double twist0 = spec.eps_angular * (2.0 * rng.uniform() - 1.0);

  double eps_r = spec.eps_radial, eps_a = spec.eps_angular, twist = twist0;
  const double log_r = std::log(r);
  for (int attempt = 0; attempt <= 20; ++attempt) {
    std::vector<double> rho(n_t * n_theta), theta(n_t * n_theta);
    for (std::size_t i = 0; i < n_t; ++i) {
      const double t = 1.0 + (r - 1.0) * static_cast<double>(i) /
                                 static_cast<double>(n_t - 1);
      const double x = (t - 1.0) / (r - 1.0);
      const double bump = std::sin(kPi * spec.mode_t * x);
      const double H = (i == 0) ? 1.0 : interp.h(t);
      for (std::size_t j = 0; j < n_theta; ++j) {
        const double th = kTwoPi * static_cast<double>(j) /
                          static_cast<double>(n_theta);
        rho[i * n_theta + j] =
            H + eps_r * bump * std::cos(spec.mode_theta * th);
        theta[i * n_theta + j] = th + eps_a * bump * std::sin(spec.mode_theta * th) +
                                 twist * std::log(t) / log_r;
      }
    }
    try {
      PolarGridMap map(n_t, n_theta, r, spec.base.R(), std::move(rho),
                       std::move(theta));
      differentiate_grid(map);  // J > 0 everywhere or throws
      return {std::move(map), eps_r, eps_a, twist, attempt};
    } catch (const non_positive_jacobian&) {
    } catch (const class_violation&) {
    }
    eps_r *= 0.5;
    eps_a *= 0.5;
    twist *= 0.5;
  }
  throw cannot_satisfy_jacobian(
      "make_competitor: positive Jacobian unreachable after 20 halvings");
}

PolarGridMap make_competitor(const PerturbationSpec& spec, std::size_t n_t,
                             std::size_t n_theta) {
  return make_competitor_ex(spec, n_t, n_theta).map;
}

PolarGridMap rotate(const PolarGridMap& map, double phi0) { return map.rotated(phi0); }

namespace {

double pick_value(const EnergyReport& rep, Functional f, const Weights& w) {
  switch (f) {
    case Functional::CombinedEnergy: return rep.combined_energy;
    case Functional::Distortion: return rep.grad_distortion;
    case Functional::Total:
      return w.alpha * rep.combined_energy + w.beta * rep.combined_distortion;
  }
  return 0.0;
}

}  // namespace

DominanceTable competitor_sweep(const RadialProfile& minimizer, const Weights& w,
                                Functional functional, std::size_t n,
                                std::uint64_t seed, std::size_t n_t,
                                std::size_t n_theta) {
  DominanceTable table;
  table.functional = functional;

  // resample the minimizer onto the sweep grid and take its lift as baseline
  const ProfileInterpolant interp(minimizer);
  std::vector<double> t(n_t), h(n_t), hd(n_t);
  for (std::size_t i = 0; i < n_t; ++i) {
    t[i] = 1.0 + (minimizer.r() - 1.0) * static_cast<double>(i) /
                     static_cast<double>(n_t - 1);
    const auto [H, Hd] = interp(t[i]);
    h[i] = H;
    hd[i] = Hd;
  }
  h.front() = 1.0;
  h.back() = minimizer.R();
  const RadialProfile base(std::move(t), std::move(h), std::move(hd));
  const PolarGridMap lift = PolarGridMap::radial_lift(base, n_theta);
  table.baseline = pick_value(grid_energy_report(lift, w), functional, w);

  table.min_gap = std::numeric_limits<double>::infinity();
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < n; ++k) {
    PerturbationSpec spec;
    spec.base = base;
    spec.eps_radial = 0.08 * rng.uniform();
    spec.eps_angular = 0.08 * rng.uniform();
    spec.mode_t = 1 + static_cast<int>(rng.next() % 3);
    spec.mode_theta = 1 + static_cast<int>(rng.next() % 4);
    spec.seed = rng.next();

    SweepRow row;
    row.index = k;
    row.eps_radial = spec.eps_radial;
    row.eps_angular = spec.eps_angular;
    row.mode_t = spec.mode_t;
    row.mode_theta = spec.mode_theta;
    row.halvings = 0;
    row.twist = 0.0;
    try {
      const CompetitorMap built = make_competitor_ex(spec, n_t, n_theta);
      row.eps_radial = built.eps_radial;
      row.eps_angular = built.eps_angular;
      row.twist = built.twist;
      row.halvings = built.halvings;
      row.value = pick_value(grid_energy_report(built.map, w), functional, w);
      row.gap = row.value - table.baseline;
      table.min_gap = std::min(table.min_gap, row.gap);
    } catch (const error& e) {
      row.value = std::numeric_limits<double>::quiet_NaN();
      row.gap = std::numeric_limits<double>::quiet_NaN();
      row.note = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void DominanceTable::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  out << "index,eps_r,eps_a,mode,energy,gap\n" << std::setprecision(17);
  for (const auto& row : rows)
    out << row.index << ',' << row.eps_radial << ',' << row.eps_angular << ','
        << row.mode_theta << ',' << row.value << ',' << row.gap << '\n';
}

std::string DominanceTable::to_json() const {
  nlohmann::json j;
  j["functional"] = annuli::to_string(functional);
  j["baseline"] = baseline;
  j["min_gap"] = min_gap;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json e;
    e["index"] = row.index;
    e["eps_r"] = row.eps_radial;
    e["eps_a"] = row.eps_angular;
    e["mode_t"] = row.mode_t;
    e["mode_theta"] = row.mode_theta;
    e["twist"] = row.twist;
    e["value"] = std::isnan(row.value) ? nlohmann::json(nullptr)
                                       : nlohmann::json(row.value);
    e["gap"] = std::isnan(row.gap) ? nlohmann::json(nullptr) : nlohmann::json(row.gap);
    e["halvings"] = row.halvings;
    if (!row.note.empty()) e["note"] = row.note;
    j["rows"].push_back(e);
  }
  return j.dump();
}

RadialProfile random_smooth_profile(double r, double R, std::uint64_t seed,
                                    std::size_t n_nodes) {
  if (!(r > 1.0) || !(R > 1.0))
    throw domain_error("random_smooth_profile: radii must exceed 1");
  SplitMix64 rng(seed);
  const double a1 = 0.8 * (2.0 * rng.uniform() - 1.0);
  const double a2 = 0.8 * (2.0 * rng.uniform() - 1.0);
  const double a3 = 0.5 * (2.0 * rng.uniform() - 1.0);
  const auto g = [&](double t) {
    const double x = (t - 1.0) / (r - 1.0);
    return a1 * std::sin(kPi * x) + a2 * std::sin(2.0 * kPi * x) +
           a3 * std::cos(kPi * x);
  };
  const auto speed = [&](double t) { return std::exp(g(t)); };

  std::vector<double> t(n_nodes), cum(n_nodes, 0.0);
  for (std::size_t i = 0; i < n_nodes; ++i)
    t[i] = 1.0 + (r - 1.0) * static_cast<double>(i) / static_cast<double>(n_nodes - 1);
  for (std::size_t i = 1; i < n_nodes; ++i)
    cum[i] = cum[i - 1] + integrate_gl(speed, t[i - 1], t[i], 1, 16);
  const double scale = (R - 1.0) / cum.back();

  std::vector<double> h(n_nodes), hd(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    h[i] = 1.0 + scale * cum[i];
    hd[i] = scale * speed(t[i]);
  }
  h.back() = R;
  return RadialProfile(std::move(t), std::move(h), std::move(hd));
}

}  // namespace annuli
