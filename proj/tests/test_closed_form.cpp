#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "annuli/closed_form.hpp"
#include "annuli/energy.hpp"
#include "annuli/quadrature.hpp"

using namespace annuli;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("feasibility thresholds") {
  CHECK(nitsche_threshold_energy(2.0, 0.5) == 2.125);  // 17/8, exact
  CHECK(nitsche_threshold_energy(2.0, 1.0) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(nitsche_threshold_energy(1.0 + 1e-12, 0.7) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(nitsche_threshold_distortion(2.0, 0.5) == 2.125);
  CHECK(nitsche_threshold_distortion(2.0, 1.0) == doctest::Approx(1.25));
  CHECK_THROWS_AS(nitsche_threshold_energy(0.9, 1.0), domain_error);
  CHECK_THROWS_AS(nitsche_threshold_energy(2.0, 0.0), domain_error);
}

TEST_CASE("combined-energy minimizer: reference instance r=2 R=3 c=1") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  CHECK(sol.mu == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
  CHECK(sol.regime == Regime::Elastic);
  CHECK(sol.profile.R() == doctest::Approx(3.0).epsilon(1e-14));
  const double target = 52.0 * kPi / 3.0;
  CHECK(sol.closed_form_energy == doctest::Approx(target).epsilon(1e-12));
  // independent oracle: H = (5/3) t - (2/3)/t, integrand 50 t/9 + 8/(9 t^3)
  const double oracle =
      2.0 * kPi *
      integrate_gl([](double t) { return 50.0 * t / 9.0 + 8.0 / (9.0 * t * t * t); },
                   1.0, 2.0);
  CHECK(sol.closed_form_energy == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(radial_combined_energy(sol.profile, Weights(1.0, 1.0)) ==
        doctest::Approx(target).epsilon(1e-9));
}

TEST_CASE("identity recovery at r = R, c = 1") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 2.0), 1.0);
  CHECK(std::abs(sol.mu - 1.0) <= 1e-14);
  double sup = 0.0;
  for (std::size_t i = 0; i < sol.profile.size(); ++i)
    sup = std::max(sup,
                   std::abs(sol.profile.h_values[i] - sol.profile.t_nodes[i]));
  CHECK(sup <= 1e-12);
}

TEST_CASE("threshold boundary behavior") {
  CHECK_THROWS_AS(solve_combined_energy(AnnulusPair(2.0, 2.124), 0.5), below_nitsche);
  const auto ok = solve_combined_energy(AnnulusPair(2.0, 2.126), 0.5);
  CHECK(ok.mu >= 0.0);
  const auto boundary = solve_combined_energy(AnnulusPair(2.0, 2.125), 0.5);
  CHECK(boundary.mu == 0.0);
  CHECK(boundary.regime == Regime::Boundary);
  CHECK(boundary.profile.hdot_values.front() == 0.0);  // Hdot(1) = mu / c
}

TEST_CASE("feasibility matches the threshold on a lattice") {
  for (double r : {1.5, 2.0, 3.0})
    for (double c : {0.5, 1.0, 2.0}) {
      const double thr = nitsche_threshold_energy(r, c);
      CHECK_THROWS_AS(solve_combined_energy(AnnulusPair(r, thr - 1e-6), c),
                      below_nitsche);
      CHECK_NOTHROW(solve_combined_energy(AnnulusPair(r, thr + 1e-6), c));
    }
}

TEST_CASE("closed-form energy equals quadrature across a feasible lattice") {
  for (double r : {1.5, 2.0, 2.5})
    for (double c : {0.5, 1.0, 1.6}) {
      const double thr = nitsche_threshold_energy(r, c);
      for (double f : {1.05, 1.5, 2.5}) {
        const auto sol = solve_combined_energy(AnnulusPair(r, thr * f), c);
        const double quad =
            radial_combined_energy(sol.profile, Weights(c, 1.0)) / c;
        CHECK(quad == doctest::Approx(sol.closed_form_energy).epsilon(1e-8));
      }
    }
}

TEST_CASE("mu is monotone in R at fixed r, c") {
  for (double c : {0.5, 1.0, 1.7}) {
    double prev = -1.0;
    for (double R = 2.5; R < 6.0; R += 0.5) {
      const auto sol = solve_combined_energy(AnnulusPair(2.0, R), c);
      CHECK(sol.mu > prev);
      prev = sol.mu;
    }
  }
}

TEST_CASE("minimizer satisfies its Euler-Lagrange equation") {
  // residual of H'' - (b^2 H - a^2 t H')/(a^2 t^2) with a 5-point second
  // derivative at step 1e-4. The naive difference quotient loses ~9 digits
  // to cancellation; computing the second differences of t^p through
  // expm1/log1p keeps full relative accuracy in plain double.
  const auto second_diff_pow = [](double t, double e, double p) {
    return std::pow(t, p) * (std::expm1(p * std::log1p(e / t)) +
                             std::expm1(p * std::log1p(-e / t)));
  };
  for (double c : {0.5, 1.0, 1.5}) {
    const auto sol = solve_combined_energy(AnnulusPair(2.0, 4.5), c);
    const double mu = sol.mu, d = 1e-4;
    const auto S = [&](double t, double e) {
      return 0.5 * (1.0 + mu) * second_diff_pow(t, e, 1.0 / c) +
             0.5 * (1.0 - mu) * second_diff_pow(t, e, -1.0 / c);
    };
    for (double t = 1.05; t < 1.99; t += 0.05) {
      const double hpp = (16.0 * S(t, d) - S(t, 2.0 * d)) / (12.0 * d * d);
      const double x = std::pow(t, 1.0 / c);
      const double u = 0.5 * (1.0 + mu) * x, v = 0.5 * (1.0 - mu) / x;
      const double hp = (u - v) / (c * t);
      const double rhs = ((u + v) / (c * c) - t * hp) / (t * t);
      CHECK(std::abs(hpp - rhs) <= 1e-8);
    }
  }
}

TEST_CASE("inverse profile") {
  const auto id = solve_combined_energy(AnnulusPair(2.0, 2.0), 1.0);
  const auto f_id = inverse_profile(id);
  for (std::size_t k = 0; k < f_id.size(); k += 64)
    CHECK(f_id.h_values[k] == doctest::Approx(f_id.t_nodes[k]).epsilon(1e-12));

  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  const auto f = inverse_profile(sol);
  CHECK(f.h_values.back() == doctest::Approx(2.0).epsilon(1e-9));
  const ProfileInterpolant fi(f);
  const ProfileInterpolant hi(sol.profile);
  double sup = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = 1.0 + k / 1000.0;
    sup = std::max(sup, std::abs(fi.h(hi.h(t)) - t));
  }
  CHECK(sup <= 1e-8);

  const auto bd = solve_combined_energy(AnnulusPair(2.0, 2.125), 0.5);
  CHECK_THROWS_AS(inverse_profile(bd), domain_error);
}

TEST_CASE("elasticity regime certificates") {
  const auto elastic = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  const auto r1 = elasticity_regime(elastic, 1.0);
  CHECK(r1.regime == Regime::Elastic);
  CHECK(r1.min_margin >= 0.0);

  const auto id = solve_combined_energy(AnnulusPair(2.0, 2.0), 1.0);
  const auto r2 = elasticity_regime(id, 1.0);
  CHECK(r2.regime == Regime::Elastic);
  CHECK(std::abs(r2.min_margin) <= 1e-12);
  CHECK(std::abs(r2.max_margin) <= 1e-12);

  // mu = 0.5: R solves (17 - 8R)/(-15) = 1/2 at r=2, c=1/2
  const auto ne = solve_combined_energy(AnnulusPair(2.0, 3.0625), 0.5);
  CHECK(ne.mu == doctest::Approx(0.5).epsilon(1e-13));
  const auto r3 = elasticity_regime(ne, 0.5);
  CHECK(r3.regime == Regime::NonElastic);
  CHECK(r3.max_margin <= 0.0);
}

TEST_CASE("combined-distortion minimizer") {
  const auto id = solve_combined_distortion(AnnulusPair(2.0, 2.0), 1.0);
  CHECK(id.nu == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 0; k < id.profile.size(); k += 64)
    CHECK(id.profile.h_values[k] ==
          doctest::Approx(id.profile.t_nodes[k]).epsilon(1e-10));

  const auto sol = solve_combined_distortion(AnnulusPair(2.5, 2.0), 0.5);
  CHECK(sol.profile.R() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.nu == doctest::Approx(sol.nu_formula_R_exponent).epsilon(1e-10));
  // the r-exponent candidate disagrees with the boundary condition here
  CHECK(std::abs(sol.nu - sol.nu_formula_r_exponent) > 1e-3);

  CHECK_THROWS_AS(solve_combined_distortion(AnnulusPair(2.0, 2.2), 0.5),
                  below_nitsche);  // needs r >= 2.125
}

TEST_CASE("distortion minimizer satisfies its Euler-Lagrange equation") {
  const auto sol = solve_combined_distortion(AnnulusPair(2.5, 2.0), 0.5);
  const long double nu = sol.nu, c = 0.5L, d = 1e-4L;
  const auto H = [&](long double t) {
    return std::pow((t + std::sqrt(nu * nu - 1.0L + t * t)) / (1.0L + nu), c);
  };
  for (double t = 1.05; t < 2.45; t += 0.05) {
    const long double tt = t;
    const long double hpp =
        (-H(tt + 2 * d) + 16.0L * H(tt + d) - 30.0L * H(tt) + 16.0L * H(tt - d) -
         H(tt - 2 * d)) /
        (12.0L * d * d);
    const long double hp =
        (H(tt + d) - H(tt - d) - (H(tt + 2 * d) - H(tt - 2 * d)) / 8.0L) / (1.5L * d);
    // H'' = H'^2 (a^2 H - b^2 t H') / (a^2 H^2) with a = c, b = 1
    const long double rhs =
        hp * hp * (c * c * H(tt) - tt * hp) / (c * c * H(tt) * H(tt));
    CHECK(static_cast<double>(std::abs(hpp - rhs)) <= 1e-6);
  }
}

TEST_CASE("distortion/energy duality through the swapped instance") {
  // inverse of the distortion minimizer for (r, R, c) equals the energy
  // minimizer profile of the swapped annuli
  const auto dist = solve_combined_distortion(AnnulusPair(2.5, 2.0), 0.5);
  const auto inv = invert_profile(dist.profile, 513);
  const auto via_energy = solve_combined_energy(AnnulusPair(2.0, 2.5), 0.5);
  const ProfileInterpolant a(inv), b(via_energy.profile);
  double sup = 0.0;
  for (int k = 0; k <= 500; ++k) {
    const double s = 1.0 + k / 500.0;
    sup = std::max(sup, std::abs(a.h(s) - b.h(s)));
  }
  CHECK(sup <= 1e-7);
}
