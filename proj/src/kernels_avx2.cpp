#include <cstddef>

#include "annuli/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

// AVX2 kernels. Element-wise operation order matches kernels_scalar.cpp
// exactly (mul/add/sub/div intrinsics only, no FMA), and the reductions use
// the same 4-lane tree, so outputs are bit-identical to the scalar backend.

namespace annuli::kernels {

namespace {

void central_diff_periodic_v(const double* v, double* out, std::size_t n,
                             double inv2h, double wrap) {
  out[0] = (v[1] - (v[n - 1] - wrap)) * inv2h;
  const __m256d vs = _mm256_set1_pd(inv2h);
  std::size_t j = 1;
  for (; j + 4 <= n - 1; j += 4) {
    const __m256d hi = _mm256_loadu_pd(v + j + 1);
    const __m256d lo = _mm256_loadu_pd(v + j - 1);
    _mm256_storeu_pd(out + j, _mm256_mul_pd(_mm256_sub_pd(hi, lo), vs));
  }
  for (; j + 1 < n; ++j) out[j] = (v[j + 1] - v[j - 1]) * inv2h;
  out[n - 1] = ((v[0] + wrap) - v[n - 2]) * inv2h;
}

void row_diff_scaled_v(const double* a, const double* b, double* out,
                       std::size_t n, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d va = _mm256_loadu_pd(a + j);
    const __m256d vb = _mm256_loadu_pd(b + j);
    _mm256_storeu_pd(out + j, _mm256_mul_pd(_mm256_sub_pd(va, vb), vs));
  }
  for (; j < n; ++j) out[j] = (a[j] - b[j]) * s;
}

void row_onesided_diff_v(const double* v0, const double* v1, const double* v2,
                         double* out, std::size_t n, double s) {
  const __m256d m3 = _mm256_set1_pd(-3.0);
  const __m256d p4 = _mm256_set1_pd(4.0);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d t1 = _mm256_mul_pd(_mm256_loadu_pd(v0 + j), m3);
    const __m256d t2 = _mm256_mul_pd(_mm256_loadu_pd(v1 + j), p4);
    const __m256d d = _mm256_sub_pd(_mm256_add_pd(t1, t2), _mm256_loadu_pd(v2 + j));
    _mm256_storeu_pd(out + j, _mm256_mul_pd(d, vs));
  }
  for (; j < n; ++j) {
    const double t1 = v0[j] * -3.0;
    const double t2 = v1[j] * 4.0;
    out[j] = ((t1 + t2) - v2[j]) * s;
  }
}

void field_row_v(double t, const double* rho, const double* rho_t,
                 const double* rho_th, const double* th_t, const double* th_th,
                 std::size_t n, double* hn2, double* ht2, double* gr2,
                 double* r2gt2, double* jac) {
  const double inv_t = 1.0 / t;
  const double inv_t2 = inv_t * inv_t;
  const __m256d vit = _mm256_set1_pd(inv_t);
  const __m256d vit2 = _mm256_set1_pd(inv_t2);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d vr = _mm256_loadu_pd(rho + j);
    const __m256d vrt = _mm256_loadu_pd(rho_t + j);
    const __m256d vrth = _mm256_loadu_pd(rho_th + j);
    const __m256d vtt = _mm256_loadu_pd(th_t + j);
    const __m256d vtth = _mm256_loadu_pd(th_th + j);
    const __m256d rt2 = _mm256_mul_pd(vrt, vrt);
    const __m256d rth2 = _mm256_mul_pd(vrth, vrth);
    const __m256d tt2 = _mm256_mul_pd(vtt, vtt);
    const __m256d tth2 = _mm256_mul_pd(vtth, vtth);
    const __m256d r2 = _mm256_mul_pd(vr, vr);
    _mm256_storeu_pd(hn2 + j, _mm256_add_pd(rt2, _mm256_mul_pd(r2, tt2)));
    _mm256_storeu_pd(ht2 + j,
                     _mm256_mul_pd(_mm256_add_pd(rth2, _mm256_mul_pd(r2, tth2)), vit2));
    _mm256_storeu_pd(gr2 + j, _mm256_add_pd(rt2, _mm256_mul_pd(rth2, vit2)));
    _mm256_storeu_pd(
        r2gt2 + j,
        _mm256_add_pd(_mm256_mul_pd(r2, tt2),
                      _mm256_mul_pd(_mm256_mul_pd(r2, tth2), vit2)));
    const __m256d cross =
        _mm256_sub_pd(_mm256_mul_pd(vrt, vtth), _mm256_mul_pd(vrth, vtt));
    _mm256_storeu_pd(jac + j, _mm256_mul_pd(_mm256_mul_pd(vr, vit), cross));
  }
  for (; j < n; ++j) {
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

void energy_row_v(const double* hn2, const double* ht2, const double* gr2,
                  const double* r2gt2, const double* jac, std::size_t n,
                  double wa2, double wb2, double* comb, double* dist,
                  double* gdist) {
  const __m256d va = _mm256_set1_pd(wa2);
  const __m256d vb = _mm256_set1_pd(wb2);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d vj = _mm256_loadu_pd(jac + j);
    const __m256d c = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(hn2 + j)),
                                    _mm256_mul_pd(vb, _mm256_loadu_pd(ht2 + j)));
    _mm256_storeu_pd(comb + j, c);
    _mm256_storeu_pd(dist + j, _mm256_div_pd(c, vj));
    const __m256d g = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(r2gt2 + j)),
                                    _mm256_mul_pd(vb, _mm256_loadu_pd(gr2 + j)));
    _mm256_storeu_pd(gdist + j, _mm256_div_pd(g, vj));
  }
  for (; j < n; ++j) {
    const double c = wa2 * hn2[j] + wb2 * ht2[j];
    comb[j] = c;
    dist[j] = c / jac[j];
    gdist[j] = (wa2 * r2gt2[j] + wb2 * gr2[j]) / jac[j];
  }
}

double lanes_combine_tail(__m256d acc, const double* v, std::size_t n4,
                          std::size_t n) {
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  double s = (l[0] + l[1]) + (l[2] + l[3]);
  for (std::size_t j = n4; j < n; ++j) s += v[j];
  return s;
}

double reduce_sum_v(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - (n % 4);
  for (std::size_t j = 0; j < n4; j += 4)
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + j));
  return lanes_combine_tail(acc, v, n4, n);
}

double reduce_dot_v(const double* v, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - (n % 4);
  for (std::size_t j = 0; j < n4; j += 4)
    acc = _mm256_add_pd(acc,
                        _mm256_mul_pd(_mm256_loadu_pd(v + j), _mm256_loadu_pd(w + j)));
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  double s = (l[0] + l[1]) + (l[2] + l[3]);
  for (std::size_t j = n4; j < n; ++j) s += v[j] * w[j];
  return s;
}

}  // namespace

extern const Ops avx2_ops;
const Ops avx2_ops = {
    "avx2",
    central_diff_periodic_v,
    row_diff_scaled_v,
    row_onesided_diff_v,
    field_row_v,
    energy_row_v,
    reduce_sum_v,
    reduce_dot_v,
};

}  // namespace annuli::kernels

#endif  // __AVX2__
