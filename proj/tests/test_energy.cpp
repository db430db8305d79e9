#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "annuli/closed_form.hpp"
#include "annuli/competitors.hpp"
#include "annuli/energy.hpp"
#include "annuli/polar_grid.hpp"

using namespace annuli;

namespace {

constexpr double kPi = 3.14159265358979323846;

RadialProfile uniform_profile(double r, std::size_t n, double power) {
  std::vector<double> t(n), h(n), hd(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = 1.0 + (r - 1.0) * static_cast<double>(i) / static_cast<double>(n - 1);
    h[i] = std::pow(t[i], power);
    hd[i] = power * std::pow(t[i], power - 1.0);
  }
  h.front() = 1.0;
  return RadialProfile(t, h, hd);
}

}  // namespace

TEST_CASE("radial functionals of the identity map") {
  const auto id = uniform_profile(2.0, 257, 1.0);
  const Weights w(1.0, 1.0);
  // integrand is the constant 2: each functional equals twice the area 3 pi
  CHECK(radial_combined_energy(id, w) == doctest::Approx(6.0 * kPi).epsilon(1e-12));
  CHECK(radial_distortion(id, w) == doctest::Approx(6.0 * kPi).epsilon(1e-12));
  CHECK(radial_total_energy(id, w) == doctest::Approx(12.0 * kPi).epsilon(1e-12));
}

TEST_CASE("radial functionals of H = t^2 on [1,2]") {
  const auto p = uniform_profile(2.0, 257, 2.0);
  const Weights w(1.0, 1.0);
  // energy integrand 5 t^3, distortion integrand (5/2) t
  CHECK(radial_combined_energy(p, w) == doctest::Approx(37.5 * kPi).epsilon(1e-10));
  CHECK(radial_distortion(p, w) == doctest::Approx(7.5 * kPi).epsilon(1e-10));
}

TEST_CASE("balanced total-energy value (c = 1/2 weights)") {
  const auto p = uniform_profile(2.0, 257, 2.0);
  const Weights w(1.0, 2.0, 1.0, 1.0);
  // Lambda = (t + 1/(2t)) * 8 t^2 integrates to 36; total is 72 pi
  CHECK(radial_total_energy(p, w) == doctest::Approx(72.0 * kPi).epsilon(1e-10));
  // beta = 0 collapses exactly to alpha * combined energy
  const Weights w0(1.0, 2.0, 2.5, 1e-300);
  const auto combined = radial_combined_energy(p, Weights(1.0, 2.0));
  CHECK(radial_total_energy(p, w0) == doctest::Approx(2.5 * combined).epsilon(1e-12));
}

TEST_CASE("degenerate boundary profile has divergent distortion") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 2.125), 0.5);
  CHECK(std::isinf(radial_distortion(sol.profile, Weights(0.5, 1.0))));
  CHECK(std::isfinite(radial_combined_energy(sol.profile, Weights(0.5, 1.0))));
}

TEST_CASE("duality: inverse-map energy equals distortion") {
  const Weights w(1.0, 1.0);
  const auto id = uniform_profile(2.0, 257, 1.0);
  CHECK(duality_check(id, w).relative_gap <= 1e-10);

  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  CHECK(duality_check(sol.profile, w).relative_gap <= 1e-7);

  // H = t^2 against F = sqrt(s): both sides equal 7.5 pi by hand
  const auto p = uniform_profile(2.0, 257, 2.0);
  const auto rep = duality_check(p, w);
  CHECK(rep.distortion_of_profile == doctest::Approx(7.5 * kPi).epsilon(1e-9));
  CHECK(rep.energy_of_inverse == doctest::Approx(7.5 * kPi).epsilon(1e-8));
  CHECK(rep.relative_gap <= 1e-7);

  // anisotropic weights
  const auto q = solve_combined_energy(AnnulusPair(2.0, 4.2), 0.5);
  CHECK(duality_check(q.profile, Weights(0.5, 1.0)).relative_gap <= 1e-7);
}

TEST_CASE("grid report approaches the radial quadrature values") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  const Weights w(1.0, 1.0);
  const double target = 52.0 * kPi / 3.0;

  const auto resample = [&](std::size_t n) {
    const ProfileInterpolant interp(sol.profile);
    std::vector<double> t(n), h(n), hd(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n - 1);
      const auto [H, Hd] = interp(t[i]);
      h[i] = H;
      hd[i] = Hd;
    }
    h.front() = 1.0;
    h.back() = 3.0;
    return RadialProfile(t, h, hd);
  };

  double prev = 0.0;
  for (std::size_t n : {64u, 128u, 256u}) {
    const auto rep =
        grid_energy_report(PolarGridMap::radial_lift(resample(n), n), w);
    const double err = std::abs(rep.combined_energy - target) / target;
    if (prev > 0.0) CHECK(err < prev / 3.0);  // order >= 2 convergence
    prev = err;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("grid report on a radial lift: totals coincide, distortions relate") {
  const auto p = uniform_profile(2.0, 129, 1.7);
  const auto lift = PolarGridMap::radial_lift(p, 128);
  const Weights w(2.0, 1.0, 1.3, 0.8);
  const auto rep = grid_energy_report(lift, w);
  CHECK(rep.total_hnht == rep.total_dual);  // bitwise on radial lifts
  // grad-form distortion of the lift matches the radial quadrature
  CHECK(rep.grad_distortion ==
        doctest::Approx(radial_distortion(p, w)).epsilon(1e-3));
  // hnht-form distortion equals the grad form with swapped weights
  const auto rep_sw = grid_energy_report(lift, Weights(1.0, 2.0, 1.3, 0.8));
  CHECK(rep.combined_distortion == doctest::Approx(rep_sw.grad_distortion).epsilon(1e-12));
  // with equal weights the two distortion forms coincide
  const auto rep_eq = grid_energy_report(lift, Weights(1.0, 1.0));
  CHECK(rep_eq.combined_distortion ==
        doctest::Approx(rep_eq.grad_distortion).epsilon(1e-12));
}

TEST_CASE("rotation invariance of the report is exact") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  const auto base = [&] {
    const ProfileInterpolant interp(sol.profile);
    std::vector<double> t(128), h(128), hd(128);
    for (std::size_t i = 0; i < 128; ++i) {
      t[i] = 1.0 + static_cast<double>(i) / 127.0;
      const auto [H, Hd] = interp(t[i]);
      h[i] = H;
      hd[i] = Hd;
    }
    h.front() = 1.0;
    h.back() = 3.0;
    return PolarGridMap::radial_lift(RadialProfile(t, h, hd), 128);
  }();
  const Weights w(1.0, 1.0, 2.0, 1.0);
  const auto r0 = grid_energy_report(base, w);
  const auto r1 = grid_energy_report(base.rotated(kPi / 7.0), w);
  CHECK(r0.combined_energy == r1.combined_energy);
  CHECK(r0.combined_distortion == r1.combined_distortion);
  CHECK(r0.grad_distortion == r1.grad_distortion);
  CHECK(r0.total_hnht == r1.total_hnht);
  CHECK(r0.total_dual == r1.total_dual);
  CHECK(r0.integrand_min_jacobian == r1.integrand_min_jacobian);
}

TEST_CASE("twist competitor costs strictly more combined energy") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  PerturbationSpec spec;
  spec.base = sol.profile;
  spec.eps_radial = 0.0;
  spec.eps_angular = 0.05;
  spec.mode_t = 1;
  spec.mode_theta = 3;
  spec.seed = 5;
  const auto map = make_competitor(spec, 192, 192);
  const auto rep = grid_energy_report(map, Weights(1.0, 1.0));
  CHECK(rep.combined_energy > 52.0 * kPi / 3.0);
}

TEST_CASE("report json carries null for divergent integrals") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 2.125), 0.5);
  const auto lift = PolarGridMap::radial_lift(
      solve_combined_energy(AnnulusPair(2.0, 2.125), 0.5, 129).profile, 128);
  const auto rep = grid_energy_report(lift, Weights(0.5, 1.0));
  CHECK(rep.distortion_divergent);
  CHECK(std::isinf(rep.combined_distortion));
  CHECK(rep.to_json().find("\"combined_distortion\":null") != std::string::npos);
  CHECK(std::isfinite(rep.combined_energy));
  (void)sol;
}
