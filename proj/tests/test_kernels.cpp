#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "annuli/competitors.hpp"
#include "annuli/energy.hpp"
#include "annuli/kernels.hpp"
#include "annuli/polar_grid.hpp"

using namespace annuli;
namespace K = annuli::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double lo = -1.0,
                               double hi = 1.0) {
  SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

}  // namespace

TEST_CASE("central difference handles the periodic seam") {
  K::set_backend(K::Backend::Scalar);
  const std::size_t n = 16;
  std::vector<double> v(n), out(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<double>(j);
  // with wrap = n the extension is exactly linear, derivative constant
  K::ops().central_diff_periodic(v.data(), out.data(), n, 0.5,
                                 static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) CHECK(out[j] == doctest::Approx(1.0));
  K::set_backend(K::Backend::Auto);
}

TEST_CASE("reduction matches a compensated reference") {
  K::set_backend(K::Backend::Scalar);
  const auto v = random_vec(1001, 42);
  long double ref = 0.0;
  for (double x : v) ref += static_cast<long double>(x);
  CHECK(K::ops().reduce_sum(v.data(), v.size()) ==
        doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
  K::set_backend(K::Backend::Auto);
}

TEST_CASE("scalar and avx2 backends are bit-identical") {
  if (!K::avx2_available()) {
    MESSAGE("AVX2 not available on this host; equivalence test skipped");
    return;
  }
  const std::size_t n = 1003;  // awkward tail on purpose
  const auto v = random_vec(n, 1, 0.5, 2.0);
  const auto w = random_vec(n, 2, 0.5, 2.0);
  const auto a = random_vec(n, 3);
  const auto b = random_vec(n, 4);
  const auto c = random_vec(n, 5);

  K::set_backend(K::Backend::Scalar);
  const K::Ops& s = K::ops();
  K::set_backend(K::Backend::Avx2);
  const K::Ops& x = K::ops();

  std::vector<double> o1(n), o2(n);
  s.central_diff_periodic(v.data(), o1.data(), n, 3.7, 6.28);
  x.central_diff_periodic(v.data(), o2.data(), n, 3.7, 6.28);
  CHECK(o1 == o2);

  s.row_diff_scaled(a.data(), b.data(), o1.data(), n, 1.234);
  x.row_diff_scaled(a.data(), b.data(), o2.data(), n, 1.234);
  CHECK(o1 == o2);

  s.row_onesided_diff(a.data(), b.data(), c.data(), o1.data(), n, -2.5);
  x.row_onesided_diff(a.data(), b.data(), c.data(), o2.data(), n, -2.5);
  CHECK(o1 == o2);

  std::vector<double> hn1(n), ht1(n), gr1(n), rg1(n), j1(n);
  std::vector<double> hn2(n), ht2(n), gr2(n), rg2(n), j2(n);
  s.field_row(1.37, v.data(), a.data(), b.data(), c.data(), w.data(), n, hn1.data(),
              ht1.data(), gr1.data(), rg1.data(), j1.data());
  x.field_row(1.37, v.data(), a.data(), b.data(), c.data(), w.data(), n, hn2.data(),
              ht2.data(), gr2.data(), rg2.data(), j2.data());
  CHECK(hn1 == hn2);
  CHECK(ht1 == ht2);
  CHECK(gr1 == gr2);
  CHECK(rg1 == rg2);
  CHECK(j1 == j2);

  std::vector<double> c1(n), d1(n), g1(n), c2(n), d2(n), g2(n);
  s.energy_row(hn1.data(), ht1.data(), gr1.data(), rg1.data(), v.data(), n, 1.5, 0.7,
               c1.data(), d1.data(), g1.data());
  x.energy_row(hn1.data(), ht1.data(), gr1.data(), rg1.data(), v.data(), n, 1.5, 0.7,
               c2.data(), d2.data(), g2.data());
  CHECK(c1 == c2);
  CHECK(d1 == d2);
  CHECK(g1 == g2);

  CHECK(s.reduce_sum(v.data(), n) == x.reduce_sum(v.data(), n));
  CHECK(s.reduce_dot(v.data(), w.data(), n) == x.reduce_dot(v.data(), w.data(), n));
  K::set_backend(K::Backend::Auto);
}

TEST_CASE("grid pipeline gives identical reports across backends") {
  if (!K::avx2_available()) return;
  const auto profile = random_smooth_profile(2.0, 3.0, 99, 129);
  PerturbationSpec spec;
  spec.base = profile;
  spec.eps_radial = 0.04;
  spec.eps_angular = 0.05;
  spec.mode_t = 2;
  spec.mode_theta = 3;
  spec.seed = 11;
  const Weights w(1.5, 1.0);

  K::set_backend(K::Backend::Scalar);
  const auto map1 = make_competitor(spec, 129, 128);
  const auto rep1 = grid_energy_report(map1, w);
  K::set_backend(K::Backend::Avx2);
  const auto map2 = make_competitor(spec, 129, 128);
  const auto rep2 = grid_energy_report(map2, w);
  K::set_backend(K::Backend::Auto);

  CHECK(rep1.combined_energy == rep2.combined_energy);
  CHECK(rep1.combined_distortion == rep2.combined_distortion);
  CHECK(rep1.grad_distortion == rep2.grad_distortion);
  CHECK(rep1.total_hnht == rep2.total_hnht);
  CHECK(rep1.total_dual == rep2.total_dual);
  CHECK(rep1.integrand_min_jacobian == rep2.integrand_min_jacobian);
}
