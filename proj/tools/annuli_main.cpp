// annuli: energy-minimal radial deformations between concentric annuli.
//
// Subcommands expose the closed-form and shooting minimizers, the
// feasibility thresholds, functional evaluation of map files, and the
// verification suites, all with machine-readable output. Data files get a
// <out>.manifest.json sidecar recording the full parameter set.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "annuli/closed_form.hpp"
#include "annuli/competitors.hpp"
#include "annuli/energy.hpp"
#include "annuli/errors.hpp"
#include "annuli/lagrangians.hpp"
#include "annuli/polar_grid.hpp"
#include "annuli/shooting.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

json number_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const json& params) {
  json m;
  m["tool"] = "annuli";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["params"] = params;
  std::ofstream f(out_path + ".manifest.json");
  if (!f) throw annuli::error("cannot write manifest for " + out_path);
  f << m.dump(2) << '\n';
}

// ---------------------------------------------------------------- nitsche
int cmd_nitsche(double r, double R, double c, const std::string& mode,
                bool has_r, bool has_R) {
  json out;
  out["mode"] = mode;
  out["c"] = c;
  if (mode == "energy") {
    if (!has_r) throw annuli::domain_error("nitsche: --r required in energy mode");
    const double thr = annuli::nitsche_threshold_energy(r, c);
    out["r"] = r;
    out["threshold"] = thr;
    if (has_R) {
      out["R"] = R;
      out["feasible"] = R >= thr;
    }
  } else if (mode == "distortion") {
    if (!has_R) throw annuli::domain_error("nitsche: --R required in distortion mode");
    const double thr = annuli::nitsche_threshold_distortion(R, c);
    out["R"] = R;
    out["threshold"] = thr;
    if (has_r) {
      out["r"] = r;
      out["feasible"] = r >= thr;
    }
  } else {
    throw annuli::domain_error("nitsche: --mode must be energy or distortion");
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

// --------------------------------------------------------------- minimize
int cmd_minimize(const std::string& functional, double r, double R, double c,
                 double gamma, double wa, double wb, double alpha, double beta,
                 std::size_t nodes, double shoot_tol, const std::string& out_path,
                 const json& params) {
  const annuli::AnnulusPair pair(r, R);
  const annuli::Weights w(wa, wb, alpha, beta);
  if (std::abs(w.c() - c) > 1e-12 * (1.0 + c))
    throw annuli::domain_error("minimize: --wa/--wb must satisfy wa/wb = c");

  json out;
  out["functional"] = functional;
  out["r"] = r;
  out["R"] = R;
  out["c"] = c;

  annuli::RadialProfile profile;
  if (functional == "energy") {
    const auto sol = annuli::solve_combined_energy(pair, c, nodes);
    profile = sol.profile;
    out["mu"] = sol.mu;
    out["regime"] = annuli::to_string(sol.regime);
    out["closed_form_energy"] = wa * wb * sol.closed_form_energy;
  } else if (functional == "distortion") {
    const auto sol = annuli::solve_combined_distortion(pair, c, nodes);
    profile = sol.profile;
    out["nu"] = sol.nu;
    out["nu_formula_r_exponent"] = sol.nu_formula_r_exponent;
    out["nu_formula_R_exponent"] = sol.nu_formula_R_exponent;
    out["closed_form_distortion"] = wb * wb * sol.closed_form_distortion;
  } else if (functional == "total") {
    const auto res = annuli::shoot(pair, c, gamma, shoot_tol, nodes);
    profile = res.profile;
    out["q"] = res.q;
    out["case"] = annuli::to_string(res.case_label);
    out["concavity"] = annuli::to_string(res.concavity);
    out["residual_sup"] = res.ode_residual_sup;
  } else {
    throw annuli::domain_error("minimize: --functional must be energy|distortion|total");
  }

  out["values"] = {
      {"combined_energy", number_or_null(annuli::radial_combined_energy(profile, w))},
      {"combined_distortion", number_or_null(annuli::radial_distortion(profile, w))},
      {"total_energy", number_or_null(annuli::radial_total_energy(profile, w))}};

  if (!out_path.empty()) {
    profile.write_csv(out_path);
    write_manifest(out_path, "minimize", params);
    out["profile_csv"] = out_path;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

// -------------------------------------------------------------- phi-curve
int cmd_phi_curve(double q, double c, double gamma, double s_max, double s_min,
                  std::size_t samples, const std::string& out_path,
                  const json& params) {
  const auto curve = annuli::phi_curve(q, c, gamma, s_max, samples, s_min);
  json out;
  out["q"] = q;
  out["c"] = c;
  out["gamma"] = gamma;
  out["samples"] = curve.s_nodes.size();
  out["s_range"] = {curve.s_nodes.front(), curve.s_nodes.back()};
  out["left_endpoint_hint"] = curve.left_endpoint_hint;
  if (!out_path.empty()) {
    curve.write_csv(out_path);
    write_manifest(out_path, "phi-curve", params);
    out["curve_csv"] = out_path;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

// ----------------------------------------------------------------- energy
int cmd_energy(const std::string& map_path, double wa, double wb, double alpha,
               double beta) {
  const annuli::Weights w(wa, wb, alpha, beta);
  const auto map = annuli::PolarGridMap::load_json(map_path);
  const auto rep = annuli::grid_energy_report(map, w);
  std::cout << rep.to_json() << '\n';
  return 0;
}

// ----------------------------------------------------------------- verify
struct VerifyArgs {
  std::string suite;
  std::string functional = "energy";
  double r = 2.0, R = 3.0, c = 1.0, gamma = 1.0;
  double wa = -1.0, wb = -1.0, alpha = 1.0, beta = 1.0;
  double q = 3.0, s_max = 50.0;
  double tol = -1.0;  // per-suite default when unset
  double endgap_tol = 1e-3;
  std::size_t n = 20, grid = 256, nodes = 1025;
  std::uint64_t seed = 7;
  std::string out_path;
  bool limits = false;
};

annuli::Weights verify_weights(const VerifyArgs& a) {
  const double wb = a.wb > 0.0 ? a.wb : 1.0;
  const double wa = a.wa > 0.0 ? a.wa : a.c * wb;
  return annuli::Weights(wa, wb, a.alpha, a.beta);
}

int suite_duality(const VerifyArgs& a, json& out) {
  const double tol = a.tol > 0.0 ? a.tol : 1e-7;
  const annuli::Weights w = verify_weights(a);
  bool pass = true;
  json rows = json::array();
  const auto check = [&](const annuli::RadialProfile& p, const std::string& label) {
    const auto rep = annuli::duality_check(p, w);
    rows.push_back({{"profile", label},
                    {"energy_of_inverse", rep.energy_of_inverse},
                    {"distortion", rep.distortion_of_profile},
                    {"relative_gap", rep.relative_gap}});
    pass = pass && rep.relative_gap <= tol;
  };
  try {
    const auto sol = annuli::solve_combined_energy(annuli::AnnulusPair(a.r, a.R), a.c);
    if (sol.mu > 1e-10) check(sol.profile, "energy-minimizer");
  } catch (const annuli::below_nitsche&) {
    rows.push_back({{"profile", "energy-minimizer"}, {"skipped", "below threshold"}});
  }
  for (std::size_t k = 0; k < a.n; ++k)
    check(annuli::random_smooth_profile(a.r, a.R, a.seed + k), "random-" + std::to_string(k));
  out["rows"] = rows;
  out["tolerance"] = tol;
  return pass ? 0 : 4;
}

int suite_lagrangian(const VerifyArgs& a, json& out) {
  // grid-limited accuracy: second-order stencils on an n x n grid
  const double scale = 256.0 / static_cast<double>(a.grid);
  const double tol = a.tol > 0.0 ? a.tol : 2e-3 * scale * scale;
  annuli::RadialProfile base;
  try {
    base = annuli::solve_combined_energy(annuli::AnnulusPair(a.r, a.R), a.c).profile;
  } catch (const annuli::below_nitsche&) {
    base = annuli::shoot(annuli::AnnulusPair(a.r, a.R), a.c, a.gamma).profile;
  }

  using K = annuli::FreeLagrangianKind;
  std::vector<annuli::FreeLagrangianSpec> specs;
  const auto one = [](double) { return 1.0; };
  specs.push_back({K::RadialFunction, one, nullptr, "M=1"});
  specs.push_back({K::RadialFunction, [](double t) { return t * t; }, nullptr, "M=t^2"});
  specs.push_back({K::RadialFunction, [](double t) { return 1.0 / t; }, nullptr, "M=1/t"});
  specs.push_back({K::Pullback, one, nullptr, "N=1"});
  specs.push_back({K::Pullback, [](double s) { return s; }, nullptr, "N=s"});
  specs.push_back({K::Pullback, [](double s) { return 1.0 / (s * s); }, nullptr, "N=1/s^2"});
  specs.push_back({K::Radial, one, nullptr, "A=1"});
  specs.push_back({K::Radial, [](double s) { return std::sqrt(s); }, nullptr, "A=sqrt"});
  specs.push_back({K::Radial, [](double s) { return s * s; }, nullptr, "A=s^2"});
  specs.push_back({K::Angular, one, nullptr, "B=1"});
  specs.push_back({K::Angular, [](double t) { return t; }, nullptr, "B=t"});
  specs.push_back({K::Angular, [](double t) { return 1.0 / t; }, nullptr, "B=1/t"});
  specs.push_back({K::TwoVariable, nullptr, [](double t, double s) { return t * s; },
                   "Scal=ts"});
  specs.push_back({K::TwoVariable, nullptr,
                   [](double t, double s) { return t * t + s * s; }, "Scal=t^2+s^2"});
  specs.push_back({K::TwoVariable, nullptr,
                   [](double t, double s) { return (t + 1.0) * (s + 1.0); },
                   "Scal=(t+1)(s+1)"});

  std::vector<annuli::PolarGridMap> maps;
  std::vector<std::string> labels;
  {
    const annuli::ProfileInterpolant interp(base);
    std::vector<double> t(a.grid), h(a.grid), hd(a.grid);
    for (std::size_t i = 0; i < a.grid; ++i) {
      t[i] = 1.0 + (base.r() - 1.0) * static_cast<double>(i) /
                       static_cast<double>(a.grid - 1);
      const auto [H, Hd] = interp(t[i]);
      h[i] = H;
      hd[i] = Hd;
    }
    h.front() = 1.0;
    h.back() = base.R();
    const annuli::RadialProfile grid_base(t, h, hd);
    maps.push_back(annuli::PolarGridMap::radial_lift(grid_base, a.grid));
    labels.push_back("lift");
    annuli::SplitMix64 rng(a.seed);
    for (std::size_t k = 0; k < a.n; ++k) {
      annuli::PerturbationSpec spec;
      spec.base = grid_base;
      spec.eps_radial = 0.06 * rng.uniform();
      spec.eps_angular = 0.06 * rng.uniform();
      spec.mode_t = 1 + static_cast<int>(rng.next() % 3);
      spec.mode_theta = 1 + static_cast<int>(rng.next() % 4);
      spec.seed = rng.next();
      maps.push_back(annuli::make_competitor(spec, a.grid, a.grid));
      labels.push_back("competitor-" + std::to_string(k));
    }
  }

  bool pass = true;
  double worst = 0.0;
  json rows = json::array();
  for (const auto& spec : specs) {
    for (std::size_t m = 0; m < maps.size(); ++m) {
      const auto res = annuli::fl_integral(spec, maps[m]);
      worst = std::max(worst, res.relative_gap);
      if (res.relative_gap > tol) {
        pass = false;
        rows.push_back({{"density", spec.label},
                        {"map", labels[m]},
                        {"computed", res.computed},
                        {"predicted", res.predicted},
                        {"relative_gap", res.relative_gap}});
      }
    }
  }
  out["worst_gap"] = worst;
  out["tolerance"] = tol;
  out["failures"] = rows;
  out["densities"] = specs.size();
  out["maps"] = maps.size();
  return pass ? 0 : 4;
}

int suite_lowerbound(const VerifyArgs& a, json& out) {
  const annuli::Weights w = verify_weights(a);
  const annuli::AnnulusPair pair(a.r, a.R);
  const double dth = 6.283185307179586 / static_cast<double>(a.grid);
  const double eps_grid = 10.0 * dth * dth;
  bool pass = true;
  json certs = json::array();

  const auto run_maps = [&](auto&& certify, const annuli::RadialProfile& base) {
    const annuli::ProfileInterpolant interp(base);
    std::vector<double> t(a.grid), h(a.grid), hd(a.grid);
    for (std::size_t i = 0; i < a.grid; ++i) {
      t[i] = 1.0 + (base.r() - 1.0) * static_cast<double>(i) /
                       static_cast<double>(a.grid - 1);
      const auto [H, Hd] = interp(t[i]);
      h[i] = H;
      hd[i] = Hd;
    }
    h.front() = 1.0;
    h.back() = base.R();
    const annuli::RadialProfile grid_base(t, h, hd);
    const auto lift = annuli::PolarGridMap::radial_lift(grid_base, a.grid);
    auto cert = certify(lift);
    // NaN margins mean "certified through the inverse problem" (convex
    // case); only finite margins are gated
    const auto ok_ge = [](double v, double lo) { return std::isnan(v) || v >= lo; };
    pass = pass && ok_ge(-cert.equality_locus_deviation, -0.05) &&
           std::abs(cert.integral_gap) <= eps_grid * 100.0;
    certs.push_back(json::parse(cert.to_json()));
    annuli::SplitMix64 rng(a.seed);
    for (std::size_t k = 0; k < a.n; ++k) {
      annuli::PerturbationSpec spec;
      spec.base = grid_base;
      spec.eps_radial = 0.06 * rng.uniform();
      spec.eps_angular = 0.06 * rng.uniform();
      spec.mode_t = 1 + static_cast<int>(rng.next() % 3);
      spec.mode_theta = 1 + static_cast<int>(rng.next() % 4);
      spec.seed = rng.next();
      const auto comp = annuli::make_competitor(spec, a.grid, a.grid);
      auto c2 = certify(comp);
      pass = pass && ok_ge(c2.pointwise_margin_min, -1e-6) &&
             c2.integral_gap >= -1e-6;
      certs.push_back(json::parse(c2.to_json()));
    }
  };

  if (a.functional == "energy") {
    const auto sol = annuli::solve_combined_energy(pair, a.c);
    const annuli::Regime regime =
        sol.mu >= 1.0 ? annuli::Regime::Elastic : annuli::Regime::NonElastic;
    run_maps(
        [&](const annuli::PolarGridMap& m) {
          return annuli::verify_energy_lower_bound(m, sol, w, regime);
        },
        sol.profile);
  } else if (a.functional == "total") {
    const auto res = annuli::shoot(pair, a.c, a.gamma);
    out["case"] = annuli::to_string(res.concavity);
    if (res.concavity == annuli::ConcavityVerdict::ConcavityCase) {
      const auto rep = annuli::gamma_sign_checks(res, w, 128);
      out["gamma_sign_checks"] = json::parse(rep.to_json());
      pass = pass && rep.max_a_t <= 1e-8 && rep.trichotomy_ok;
    }
    run_maps(
        [&](const annuli::PolarGridMap& m) {
          return annuli::verify_total_lower_bound(m, res, w);
        },
        res.profile);
  } else {
    throw annuli::domain_error("verify lowerbound: --functional must be energy|total");
  }
  out["certificates"] = certs;
  return pass ? 0 : 4;
}

int suite_dominance(const VerifyArgs& a, json& out) {
  const annuli::Weights w = verify_weights(a);
  const annuli::AnnulusPair pair(a.r, a.R);
  annuli::Functional f;
  annuli::RadialProfile minimizer;
  if (a.functional == "energy") {
    f = annuli::Functional::CombinedEnergy;
    minimizer = annuli::solve_combined_energy(pair, a.c).profile;
  } else if (a.functional == "distortion") {
    f = annuli::Functional::Distortion;
    minimizer = annuli::solve_combined_distortion(pair, a.c).profile;
  } else if (a.functional == "total") {
    f = annuli::Functional::Total;
    minimizer = annuli::shoot(pair, a.c, a.gamma).profile;
  } else {
    throw annuli::domain_error(
        "verify dominance: --functional must be energy|distortion|total");
  }
  const auto table =
      annuli::competitor_sweep(minimizer, w, f, a.n, a.seed, a.grid, a.grid);
  const double dt = (a.r - 1.0) / static_cast<double>(a.grid - 1);
  const double dth = 6.283185307179586 / static_cast<double>(a.grid);
  const double eps_grid =
      10.0 * std::max(dt, dth) * std::max(dt, dth) * std::abs(table.baseline);
  if (!a.out_path.empty()) {
    table.write_csv(a.out_path);
    json params;
    params["functional"] = a.functional;
    params["r"] = a.r;
    params["R"] = a.R;
    params["c"] = a.c;
    params["gamma"] = a.gamma;
    params["n"] = a.n;
    params["seed"] = a.seed;
    params["grid"] = a.grid;
    write_manifest(a.out_path, "verify-dominance", params);
  }
  out["table"] = json::parse(table.to_json());
  out["eps_grid"] = eps_grid;
  return table.min_gap >= -eps_grid ? 0 : 4;
}

int suite_phi_portrait(const VerifyArgs& a, json& out) {
  const double ic = 1.0 / a.c;
  const auto curve = annuli::phi_curve(a.q, a.c, a.gamma, a.s_max);
  bool monotone_ok = true;
  bool range_ok = true;
  std::string expected;
  double limit = 0.0;
  const bool constant = std::abs(a.q - ic) <= 1e-12 * std::max(1.0, ic);
  const auto& phi = curve.phi_values;
  if (constant) {
    expected = "constant";
    limit = ic;
    for (double v : phi) range_ok = range_ok && std::abs(v - a.q) <= 1e-6;
  } else if (a.q < 1.0) {
    expected = "decreasing to 0";
    limit = 0.0;
    for (std::size_t k = 1; k < phi.size(); ++k)
      monotone_ok = monotone_ok && phi[k] <= phi[k - 1] + 1e-12;
    for (double v : phi) range_ok = range_ok && v > 0.0 && v < 1.0;
  } else if (a.q < ic) {
    expected = "increasing bounded by 1/c";
    limit = ic;
    for (std::size_t k = 1; k < phi.size(); ++k)
      monotone_ok = monotone_ok && phi[k] >= phi[k - 1] - 1e-12;
    for (double v : phi) range_ok = range_ok && v >= a.q - 1e-9 && v < ic;
  } else {
    expected = "decreasing to 1/c";
    limit = ic;
    for (std::size_t k = 1; k < phi.size(); ++k)
      monotone_ok = monotone_ok && phi[k] <= phi[k - 1] + 1e-12;
    for (double v : phi) range_ok = range_ok && v > ic - 1e-9;
  }
  const double end_gap = std::abs(annuli::phi_at(a.q, a.c, a.gamma, a.s_max) - limit);
  out["expected"] = expected;
  out["monotone"] = monotone_ok;
  out["range_ok"] = range_ok;
  out["end_gap_at_s_max"] = end_gap;
  out["endgap_tol"] = a.endgap_tol;
  bool pass = monotone_ok && range_ok && end_gap <= a.endgap_tol;
  if (a.limits) {
    const auto rep = annuli::phi_limit_suite(a.c, a.gamma, {0.5, 2.0});
    out["limits"] = json::parse(rep.to_json());
    pass = pass && rep.pass;
  }
  if (!a.out_path.empty()) {
    curve.write_csv(a.out_path);
    json params;
    params["q"] = a.q;
    params["c"] = a.c;
    params["gamma"] = a.gamma;
    params["s_max"] = a.s_max;
    write_manifest(a.out_path, "verify-phi-portrait", params);
  }
  return pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-minimal radial deformations between concentric annuli"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // nitsche
  auto* nitsche = app.add_subcommand("nitsche", "feasibility threshold");
  double n_r = 0.0, n_R = 0.0, n_c = 1.0;
  std::string n_mode = "energy";
  auto* n_r_opt = nitsche->add_option("--r", n_r, "domain outer radius");
  auto* n_R_opt = nitsche->add_option("--R", n_R, "target outer radius");
  nitsche->add_option("--c", n_c, "weight ratio w_a/w_b")->required();
  nitsche->add_option("--mode", n_mode, "energy|distortion");

  // minimize
  auto* minimize = app.add_subcommand("minimize", "compute a radial minimizer");
  std::string m_functional = "energy", m_out;
  double m_r = 2.0, m_R = 3.0, m_c = 1.0, m_gamma = 1.0;
  double m_wa = -1.0, m_wb = -1.0, m_alpha = 1.0, m_beta = 1.0, m_shoot_tol = 1e-8;
  std::size_t m_nodes = 513;
  minimize->add_option("--functional", m_functional, "energy|distortion|total")
      ->required();
  minimize->add_option("--r", m_r)->required();
  minimize->add_option("--R", m_R)->required();
  minimize->add_option("--c", m_c)->required();
  minimize->add_option("--gamma", m_gamma, "alpha/beta (total only)");
  minimize->add_option("--wa", m_wa, "weight on the normal derivative");
  minimize->add_option("--wb", m_wb, "weight on the tangential derivative");
  minimize->add_option("--alpha", m_alpha);
  minimize->add_option("--beta", m_beta);
  minimize->add_option("--nodes", m_nodes, "profile sample count");
  minimize->add_option("--shoot-tol", m_shoot_tol, "|H(r)-R| <= tol*R");
  minimize->add_option("--out", m_out, "profile CSV path");

  // phi-curve
  auto* phic = app.add_subcommand("phi-curve", "slope-portrait curve CSV");
  double p_q = 3.0, p_c = 0.5, p_gamma = 1.0, p_smax = 50.0, p_smin = 0.0;
  std::size_t p_samples = 257;
  std::string p_out;
  phic->add_option("--q", p_q)->required();
  phic->add_option("--c", p_c)->required();
  phic->add_option("--gamma", p_gamma);
  phic->add_option("--s-max", p_smax);
  phic->add_option("--s-min", p_smin);
  phic->add_option("--samples", p_samples);
  phic->add_option("--out", p_out, "curve CSV path");

  // energy
  auto* energy = app.add_subcommand("energy", "evaluate a map JSON file");
  std::string e_map;
  double e_wa = 1.0, e_wb = 1.0, e_alpha = 1.0, e_beta = 1.0;
  energy->add_option("--map", e_map, "PolarGridMap JSON")->required();
  energy->add_option("--wa", e_wa);
  energy->add_option("--wb", e_wb);
  energy->add_option("--alpha", e_alpha);
  energy->add_option("--beta", e_beta);

  // verify
  auto* verify = app.add_subcommand("verify", "verification suites");
  VerifyArgs v;
  verify->add_option("--suite", v.suite,
                     "duality|lagrangian|lowerbound|dominance|phi-portrait")
      ->required();
  verify->add_option("--functional", v.functional, "energy|distortion|total");
  verify->add_option("--r", v.r);
  verify->add_option("--R", v.R);
  verify->add_option("--c", v.c);
  verify->add_option("--gamma", v.gamma);
  verify->add_option("--wa", v.wa);
  verify->add_option("--wb", v.wb);
  verify->add_option("--alpha", v.alpha);
  verify->add_option("--beta", v.beta);
  verify->add_option("--q", v.q);
  verify->add_option("--s-max", v.s_max);
  verify->add_option("--n", v.n);
  verify->add_option("--grid", v.grid);
  verify->add_option("--seed", v.seed);
  verify->add_option("--tol", v.tol);
  verify->add_option("--endgap-tol", v.endgap_tol);
  verify->add_option("--out", v.out_path);
  verify->add_flag("--limits", v.limits, "also run the limit suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*nitsche)
      return cmd_nitsche(n_r, n_R, n_c, n_mode, n_r_opt->count() > 0,
                         n_R_opt->count() > 0);
    if (*minimize) {
      json params;
      params["functional"] = m_functional;
      params["r"] = m_r;
      params["R"] = m_R;
      params["c"] = m_c;
      params["gamma"] = m_gamma;
      params["wa"] = m_wa > 0 ? m_wa : m_c;
      params["wb"] = m_wb > 0 ? m_wb : 1.0;
      params["alpha"] = m_alpha;
      params["beta"] = m_beta;
      params["nodes"] = m_nodes;
      params["shoot_tol"] = m_shoot_tol;
      return cmd_minimize(m_functional, m_r, m_R, m_c, m_gamma,
                          m_wa > 0 ? m_wa : m_c, m_wb > 0 ? m_wb : 1.0, m_alpha,
                          m_beta, m_nodes, m_shoot_tol, m_out, params);
    }
    if (*phic) {
      json params;
      params["q"] = p_q;
      params["c"] = p_c;
      params["gamma"] = p_gamma;
      params["s_max"] = p_smax;
      params["s_min"] = p_smin;
      params["samples"] = p_samples;
      return cmd_phi_curve(p_q, p_c, p_gamma, p_smax, p_smin, p_samples, p_out,
                           params);
    }
    if (*energy) return cmd_energy(e_map, e_wa, e_wb, e_alpha, e_beta);
    if (*verify) {
      json out;
      out["suite"] = v.suite;
      int code;
      if (v.suite == "duality") code = suite_duality(v, out);
      else if (v.suite == "lagrangian") code = suite_lagrangian(v, out);
      else if (v.suite == "lowerbound") code = suite_lowerbound(v, out);
      else if (v.suite == "dominance") code = suite_dominance(v, out);
      else if (v.suite == "phi-portrait") code = suite_phi_portrait(v, out);
      else throw annuli::domain_error("verify: unknown --suite " + v.suite);
      out["pass"] = code == 0;
      std::cout << out.dump(2) << '\n';
      return code;
    }
  } catch (const annuli::below_nitsche& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const annuli::non_positive_jacobian& e) {
    std::cerr << "invalid map: " << e.what() << '\n';
    return 5;
  } catch (const annuli::class_violation& e) {
    std::cerr << "invalid map: " << e.what() << '\n';
    return 5;
  } catch (const annuli::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const annuli::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const annuli::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
