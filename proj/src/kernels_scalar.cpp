#include <cstddef>

#include "annuli/kernels.hpp"

// Scalar reference kernels. The AVX2 variants mirror the exact operation
// order used here; keep the two files in sync when editing either.

namespace annuli::kernels {

namespace {

void central_diff_periodic_s(const double* v, double* out, std::size_t n,
                             double inv2h, double wrap) {
  out[0] = (v[1] - (v[n - 1] - wrap)) * inv2h;
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (v[j + 1] - v[j - 1]) * inv2h;
  out[n - 1] = ((v[0] + wrap) - v[n - 2]) * inv2h;
}

void row_diff_scaled_s(const double* a, const double* b, double* out,
                       std::size_t n, double s) {
  for (std::size_t j = 0; j < n; ++j) out[j] = (a[j] - b[j]) * s;
}

void row_onesided_diff_s(const double* v0, const double* v1, const double* v2,
                         double* out, std::size_t n, double s) {
  for (std::size_t j = 0; j < n; ++j) {
    const double t1 = v0[j] * -3.0;
    const double t2 = v1[j] * 4.0;
    out[j] = ((t1 + t2) - v2[j]) * s;
  }
}

void field_row_s(double t, const double* rho, const double* rho_t,
                 const double* rho_th, const double* th_t, const double* th_th,
                 std::size_t n, double* hn2, double* ht2, double* gr2,
                 double* r2gt2, double* jac) {
  const double inv_t = 1.0 / t;
  const double inv_t2 = inv_t * inv_t;
  for (std::size_t j = 0; j < n; ++j) {
    const double rt2 = rho_t[j] * rho_t[j];
    const double rth2 = rho_th[j] * rho_th[j];
    const double tt2 = th_t[j] * th_t[j];
    const double tth2 = th_th[j] * th_th[j];
    const double r2 = rho[j] * rho[j];
    hn2[j] = rt2 + r2 * tt2;
    ht2[j] = (rth2 + r2 * tth2) * inv_t2;
    gr2[j] = rt2 + rth2 * inv_t2;
    r2gt2[j] = r2 * tt2 + (r2 * tth2) * inv_t2;
    jac[j] = (rho[j] * inv_t) * (rho_t[j] * th_th[j] - rho_th[j] * th_t[j]);
  }
}

void energy_row_s(const double* hn2, const double* ht2, const double* gr2,
                  const double* r2gt2, const double* jac, std::size_t n,
                  double wa2, double wb2, double* comb, double* dist,
                  double* gdist) {
  for (std::size_t j = 0; j < n; ++j) {
    const double c = wa2 * hn2[j] + wb2 * ht2[j];
    comb[j] = c;
    dist[j] = c / jac[j];
    gdist[j] = (wa2 * r2gt2[j] + wb2 * gr2[j]) / jac[j];
  }
}

double reduce_sum_s(const double* v, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t n4 = n - (n % 4);
  for (std::size_t j = 0; j < n4; j += 4) {
    l0 += v[j];
    l1 += v[j + 1];
    l2 += v[j + 2];
    l3 += v[j + 3];
  }
  double s = (l0 + l1) + (l2 + l3);
  for (std::size_t j = n4; j < n; ++j) s += v[j];
  return s;
}

double reduce_dot_s(const double* v, const double* w, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t n4 = n - (n % 4);
  for (std::size_t j = 0; j < n4; j += 4) {
    l0 += v[j] * w[j];
    l1 += v[j + 1] * w[j + 1];
    l2 += v[j + 2] * w[j + 2];
    l3 += v[j + 3] * w[j + 3];
  }
  double s = (l0 + l1) + (l2 + l3);
  for (std::size_t j = n4; j < n; ++j) s += v[j] * w[j];
  return s;
}

}  // namespace

extern const Ops scalar_ops;
const Ops scalar_ops = {
    "scalar",
    central_diff_periodic_s,
    row_diff_scaled_s,
    row_onesided_diff_s,
    field_row_s,
    energy_row_s,
    reduce_sum_s,
    reduce_dot_s,
};

}  // namespace annuli::kernels
