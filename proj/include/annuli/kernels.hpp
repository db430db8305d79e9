#pragma once

#include <cstddef>

namespace annuli::kernels {

/// Grid inner loops exist in a scalar reference form and an AVX2 form.
/// Both use the same operation order per element and the same 4-lane
/// reduction tree, so results are bit-identical across backends; the
/// equivalence tests assert exact equality.
enum class Backend { Auto, Scalar, Avx2 };

struct Ops {
  const char* name;

  /// out[j] = (v[j+1] - v[j-1]) * inv2h with periodic closure
  /// v[-1] = v[n-1] - wrap, v[n] = v[0] + wrap.
  void (*central_diff_periodic)(const double* v, double* out, std::size_t n,
                                double inv2h, double wrap);

  /// out[j] = (a[j] - b[j]) * s
  void (*row_diff_scaled)(const double* a, const double* b, double* out,
                          std::size_t n, double s);

  /// out[j] = (-3 v0[j] + 4 v1[j] - v2[j]) * s   (second-order one-sided)
  void (*row_onesided_diff)(const double* v0, const double* v1, const double* v2,
                            double* out, std::size_t n, double s);

  /// Per-node derivative quantities along one t-row:
  /// hn2 = rho_t^2 + rho^2 th_t^2, ht2 = (rho_th^2 + rho^2 th_th^2)/t^2,
  /// gr2 = rho_t^2 + rho_th^2/t^2, r2gt2 = rho^2 th_t^2 + rho^2 th_th^2/t^2,
  /// jac = (rho/t)(rho_t th_th - rho_th th_t).
  void (*field_row)(double t, const double* rho, const double* rho_t,
                    const double* rho_th, const double* th_t, const double* th_th,
                    std::size_t n, double* hn2, double* ht2, double* gr2,
                    double* r2gt2, double* jac);

  /// Integrand rows: comb = wa2 hn2 + wb2 ht2, dist = comb/jac,
  /// gdist = (wa2 r2gt2 + wb2 gr2)/jac.
  void (*energy_row)(const double* hn2, const double* ht2, const double* gr2,
                     const double* r2gt2, const double* jac, std::size_t n,
                     double wa2, double wb2, double* comb, double* dist,
                     double* gdist);

  /// Deterministic fixed-tree sums: four strided lane accumulators combined
  /// as (l0 + l1) + (l2 + l3), then the scalar tail in index order.
  double (*reduce_sum)(const double* v, std::size_t n);
  double (*reduce_dot)(const double* v, const double* w, std::size_t n);
};

/// Currently selected backend implementation.
const Ops& ops();

/// Select a backend; Auto picks AVX2 when the CPU supports it. The
/// ANNULI_BACKEND environment variable ("scalar" / "avx2") overrides Auto.
void set_backend(Backend b);
Backend active_backend();
bool avx2_available();

}  // namespace annuli::kernels
