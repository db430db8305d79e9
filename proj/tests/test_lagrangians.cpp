#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "annuli/competitors.hpp"
#include "annuli/lagrangians.hpp"

using namespace annuli;

namespace {

constexpr double kPi = 3.14159265358979323846;

PolarGridMap lift_of(const RadialProfile& p, std::size_t n) {
  const ProfileInterpolant interp(p);
  std::vector<double> t(n), h(n), hd(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = 1.0 + (p.r() - 1.0) * static_cast<double>(i) / static_cast<double>(n - 1);
    const auto [H, Hd] = interp(t[i]);
    h[i] = H;
    hd[i] = Hd;
  }
  h.front() = 1.0;
  h.back() = p.R();
  return PolarGridMap::radial_lift(RadialProfile(t, h, hd), n);
}

PolarGridMap competitor_of(const RadialProfile& p, std::size_t n, std::uint64_t seed,
                           double eps = 0.05, int mt = 2, int mth = 3) {
  PerturbationSpec spec;
  spec.base = p;
  spec.eps_radial = eps;
  spec.eps_angular = eps;
  spec.mode_t = mt;
  spec.mode_theta = mth;
  spec.seed = seed;
  return make_competitor(spec, n, n);
}

}  // namespace

TEST_CASE("free-Lagrangian integrals are map-independent") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  const auto lift = lift_of(sol.profile, 192);
  const auto comp = competitor_of(sol.profile, 192, 17);

  using K = FreeLagrangianKind;
  const auto one = [](double) { return 1.0; };

  // pullback with N = 1: the Jacobian integrates to the target area
  FreeLagrangianSpec pull{K::Pullback, one, nullptr, "N=1"};
  const auto p1 = fl_integral(pull, lift);
  const auto p2 = fl_integral(pull, comp);
  CHECK(p1.predicted == doctest::Approx(kPi * 8.0).epsilon(1e-12));
  CHECK(p1.relative_gap <= 1e-5);
  CHECK(p2.relative_gap <= 1e-4);

  // radial with A = 1: telescoping of the modulus along rays
  FreeLagrangianSpec rad{K::Radial, one, nullptr, "A=1"};
  CHECK(fl_integral(rad, lift).predicted == doctest::Approx(2.0 * kPi * 2.0));
  CHECK(fl_integral(rad, lift).relative_gap <= 1e-5);
  CHECK(fl_integral(rad, comp).relative_gap <= 1e-4);

  // angular with B = 1: winding makes both maps agree
  FreeLagrangianSpec ang{K::Angular, one, nullptr, "B=1"};
  const auto a1 = fl_integral(ang, lift);
  const auto a2 = fl_integral(ang, comp);
  CHECK(a1.predicted == doctest::Approx(2.0 * kPi * 1.0));
  CHECK(a1.computed == doctest::Approx(a2.computed).epsilon(1e-9));
  CHECK(!a1.note.empty());

  // function of |z| only
  FreeLagrangianSpec radf{K::RadialFunction, one, nullptr, "M=1"};
  CHECK(fl_integral(radf, lift).predicted == doctest::Approx(kPi * 3.0));
  CHECK(fl_integral(radf, comp).relative_gap <= 1e-10);

  // two-variable family
  FreeLagrangianSpec two{K::TwoVariable, nullptr,
                         [](double t, double s) { return t * s; }, "ts"};
  const auto t1 = fl_integral(two, lift);
  const auto t2 = fl_integral(two, comp);
  CHECK(t1.predicted == doctest::Approx(2.0 * kPi * 5.0));
  CHECK(t1.relative_gap <= 1e-5);
  CHECK(t2.relative_gap <= 1e-4);
}

TEST_CASE("pointwise inequality margin: both routes agree") {
  const Weights w(2.0, 1.0);
  const auto m = pointwise_ineq_general(1.0, 2.0, w, 1.0, 1.0);
  CHECK(m.direct == doctest::Approx(9.0).epsilon(1e-15));  // (1*1*1 - 1*2*2)^2
  CHECK(m.lhs_minus_rhs == doctest::Approx(9.0).epsilon(1e-12));

  SplitMix64 rng(99);
  for (int k = 0; k < 20000; ++k) {
    const double x = 4.0 * rng.uniform(), y = 4.0 * rng.uniform();
    const double p = 2.0 * rng.uniform(), q = 2.0 * rng.uniform();
    const Weights ww(0.25 + 2.0 * rng.uniform(), 0.25 + 2.0 * rng.uniform());
    const auto mm = pointwise_ineq_general(x, y, ww, p, q);
    CHECK(mm.direct >= 0.0);
    const double scale = 1.0 + std::abs(mm.direct);
    CHECK(std::abs(mm.direct - mm.lhs_minus_rhs) <= 1e-10 * scale);
  }
}

TEST_CASE("equality locus gives an exactly zero margin") {
  // dyadic data make p wb x == q wa y exact in floating point
  const Weights w(2.0, 0.5);
  const double p = 0.75, q = 0.375;
  const double x = 1.25;
  const double y = p * w.w_b * x / (q * w.w_a);  // exact: powers of two cancel
  const auto m = pointwise_ineq_general(x, y, w, p, q);
  CHECK(m.direct == 0.0);
}

TEST_CASE("energy lower bound: elastic branch") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0), 1.0);
  const Weights w(1.0, 1.0);
  const auto lift = lift_of(sol.profile, 192);

  const auto cert = verify_energy_lower_bound(lift, sol, w, Regime::Elastic);
  CHECK(cert.equality_locus_deviation <= 2e-3);  // grid-level equality case
  CHECK(std::abs(cert.integral_gap) <= 2e-2);
  // the free-Lagrangian bound evaluates to the closed-form minimum
  CHECK(cert.bound_value ==
        doctest::Approx(sol.closed_form_energy).epsilon(1e-9));

  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const auto comp = competitor_of(sol.profile, 192, seed);
    const auto c2 = verify_energy_lower_bound(comp, sol, w, Regime::Elastic);
    CHECK(c2.pointwise_margin_min >= -1e-7);
    CHECK(c2.integral_gap > 0.0);
  }
  CHECK_THROWS_AS(verify_energy_lower_bound(lift, sol, w, Regime::NonElastic),
                  regime_mismatch);
}

TEST_CASE("energy lower bound: elastic branch with anisotropic weights") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 4.2), 0.5);
  CHECK(sol.mu >= 1.0);
  const Weights w(0.5, 1.0);
  const auto lift = lift_of(sol.profile, 192);
  const auto cert = verify_energy_lower_bound(lift, sol, w, Regime::Elastic);
  CHECK(cert.equality_locus_deviation <= 2e-3);
  CHECK(cert.bound_value ==
        doctest::Approx(w.w_a * w.w_b * sol.closed_form_energy).epsilon(1e-9));
  const auto comp = competitor_of(sol.profile, 192, 8);
  const auto c2 = verify_energy_lower_bound(comp, sol, w, Regime::Elastic);
  CHECK(c2.pointwise_margin_min >= -1e-7);
  CHECK(c2.integral_gap > 0.0);
}

TEST_CASE("energy lower bound: non-elastic branch") {
  const auto sol = solve_combined_energy(AnnulusPair(2.0, 3.0625), 0.5);
  CHECK(sol.mu == doctest::Approx(0.5));
  const Weights w(0.5, 1.0);
  const auto lift = lift_of(sol.profile, 192);
  const auto cert = verify_energy_lower_bound(lift, sol, w, Regime::NonElastic);
  CHECK(cert.equality_locus_deviation <= 2e-3);
  CHECK(std::abs(cert.integral_gap) <= 2e-2);
  CHECK(cert.bound_value ==
        doctest::Approx(w.w_a * w.w_b * sol.closed_form_energy).epsilon(1e-9));

  // twist competitor (angular only)
  const auto sol_lift_base = sol.profile;
  PerturbationSpec spec;
  spec.base = sol_lift_base;
  spec.eps_radial = 0.0;
  spec.eps_angular = 0.06;
  spec.mode_t = 1;
  spec.mode_theta = 2;
  spec.seed = 21;
  const auto twist = make_competitor(spec, 192, 192);
  const auto c2 = verify_energy_lower_bound(twist, sol, w, Regime::NonElastic);
  CHECK(c2.pointwise_margin_min >= -1e-7);
  CHECK(c2.integral_gap > 0.0);
}

TEST_CASE("total lower bound: balanced case") {
  const auto res = shoot(AnnulusPair(2.0, 4.0), 0.5, 1.0);
  const Weights w(1.0, 2.0, 1.0, 1.0);
  const auto lift = lift_of(res.profile, 192);
  const auto cert = verify_total_lower_bound(lift, res, w);
  CHECK(cert.equality_locus_deviation <= 1e-4);
  CHECK(std::abs(cert.integral_gap) <= 2e-2);
  // the predicted bound is the closed expression 4 pi (15 alpha + 3 beta)
  CHECK(cert.bound_value == doctest::Approx(72.0 * kPi).epsilon(1e-12));
  CHECK(radial_total_energy(res.profile, w) ==
        doctest::Approx(72.0 * kPi).epsilon(1e-6));

  for (std::uint64_t seed : {31u, 32u}) {
    const auto comp = competitor_of(res.profile, 192, seed);
    const auto c2 = verify_total_lower_bound(comp, res, w);
    CHECK(c2.pointwise_margin_min >= -1e-7);
    CHECK(c2.integral_gap > 0.0);
  }
}

TEST_CASE("total lower bound: concavity case with the coefficient machinery") {
  const auto res = shoot(AnnulusPair(2.0, 3.0), 0.9, 1.0, 1e-8, 2049);
  REQUIRE(res.concavity == ConcavityVerdict::ConcavityCase);
  const Weights w(0.9, 1.0, 1.0, 1.0);

  // the machinery's map-independent bound equals the radial minimum
  const TotalBound tb(res.profile, w);
  const double direct = radial_total_energy(res.profile, w);
  CHECK(tb.predicted_bound() == doctest::Approx(direct).epsilon(1e-5));

  const auto lift = lift_of(res.profile, 160);
  const auto cert = verify_total_lower_bound(lift, res, w);
  CHECK(cert.equality_locus_deviation <= 5e-3);
  CHECK(cert.bound_value ==
        doctest::Approx(radial_total_energy(res.profile, w)).epsilon(1e-5));

  for (std::uint64_t seed : {41u, 42u}) {
    const auto comp = competitor_of(res.profile, 160, seed, 0.04);
    const auto c2 = verify_total_lower_bound(comp, res, w);
    CHECK(c2.pointwise_margin_min >= -1e-6);
    CHECK(c2.integral_gap > 0.0);
  }
}

TEST_CASE("concavity machinery with asymmetric alpha/beta") {
  for (double g : {0.5, 2.0}) {
    const auto res = shoot(AnnulusPair(2.0, 3.0), 0.9, g, 1e-8, 2049);
    REQUIRE(res.concavity == ConcavityVerdict::ConcavityCase);
    const Weights w(0.9, 1.0, g, 1.0);
    const TotalBound tb(res.profile, w);
    CHECK(tb.predicted_bound() ==
          doctest::Approx(radial_total_energy(res.profile, w)).epsilon(1e-6));
  }
}

TEST_CASE("balanced bound with asymmetric alpha/beta") {
  const auto res = shoot(AnnulusPair(2.0, 4.0), 0.5, 4.0);  // gamma = alpha/beta
  REQUIRE(res.concavity == ConcavityVerdict::Balanced);
  const Weights w(1.0, 2.0, 2.0, 0.5);
  const auto lift = lift_of(res.profile, 160);
  const auto cert = verify_total_lower_bound(lift, res, w);
  CHECK(cert.equality_locus_deviation <= 1e-4);
  // 2 w_a w_b [alpha pi (R^2-1) + beta pi (r^2-1)] = 4 pi (2*15 + 0.5*3)
  CHECK(radial_total_energy(res.profile, w) ==
        doctest::Approx(126.0 * kPi).epsilon(1e-6));
}

TEST_CASE("two-variable coefficient sign structure on the concave instance") {
  const auto res = shoot(AnnulusPair(2.0, 3.0), 0.9, 1.0, 1e-8, 2049);
  const Weights w(0.9, 1.0, 1.0, 1.0);
  const auto rep = gamma_sign_checks(res, w, 64);
  CHECK(rep.max_a_t <= 1e-8);
  CHECK(rep.trichotomy_ok);
}

TEST_CASE("total lower bound: convexity case reduces to the inverse problem") {
  const auto res = shoot(AnnulusPair(2.0, 1.5), 1.2, 1.0);
  REQUIRE(res.concavity == ConcavityVerdict::ConvexityCase);
  const Weights w(1.2, 1.0, 1.0, 1.0);
  const auto lift = lift_of(res.profile, 160);
  const auto cert = verify_total_lower_bound(lift, res, w);
  CHECK(std::abs(cert.integral_gap) <= 2e-2);
  const auto comp = competitor_of(res.profile, 160, 51, 0.03);
  const auto c2 = verify_total_lower_bound(comp, res, w);
  CHECK(c2.integral_gap > 0.0);
}

TEST_CASE("certificate unavailable off the certified cases") {
  const auto res = shoot(AnnulusPair(2.0, 2.0), 0.5, 1.0);
  REQUIRE(res.concavity == ConcavityVerdict::Neither);
  const Weights w(0.5, 1.0, 1.0, 1.0);
  const auto lift = lift_of(res.profile, 96);
  CHECK_THROWS_AS(verify_total_lower_bound(lift, res, w), certificate_unavailable);
}
