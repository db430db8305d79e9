#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

#include "annuli/errors.hpp"

namespace annuli {

/// Options for the embedded Dormand-Prince 5(4) integrator.
struct OdeOptions {
  double atol = 1e-10;
  double rtol = 1e-10;
  double initial_step = 0.0;  // 0: pick from the interval length
  std::size_t max_steps = 2000000;
};

/// Adaptive Dormand-Prince 5(4) pair. Integrates y' = f(t, y) from t0 to
/// t1 (either direction). `observe`, when given, is called after every
/// accepted step with (t, y); returning false stops the integration early.
///
/// Throws step_failure when the controller stalls below the minimal step.
template <std::size_t N, typename Rhs>
std::array<double, N> rk45_integrate(
    Rhs&& f, double t0, std::array<double, N> y, double t1,
    const OdeOptions& opt = {},
    const std::function<bool(double, const std::array<double, N>&)>& observe = nullptr) {
  using State = std::array<double, N>;
  if (t1 == t0) return y;
  const double dir = (t1 > t0) ? 1.0 : -1.0;

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // difference between 5th and embedded 4th order weights
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double t = t0;
  double h = opt.initial_step != 0.0 ? std::abs(opt.initial_step)
                                     : std::abs(t1 - t0) / 100.0;
  h *= dir;

  State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  f(t, y, k1);
  const double hmin_scale = 16.0 * std::numeric_limits<double>::epsilon();

  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    const double floor = hmin_scale * std::max(std::abs(t), 1.0);
    bool reaches_end = dir * (t + h - t1) >= 0.0;
    if (!reaches_end && std::abs(h) < floor) {
      // sub-floor h over a comparably tiny remaining interval is no stall:
      // take the tail in one step; a stall mid-interval is a real failure
      if (std::abs(t1 - t) <= 1000.0 * floor)
        reaches_end = true;
      else
        throw step_failure("rk45: step size underflow at t=" + std::to_string(t));
    }
    if (reaches_end) h = t1 - t;

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                            a65 * k5[i]);
    f(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(ei) / sc);
    }

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      if (observe && !observe(t, y)) return y;
      if (dir * (t - t1) >= 0.0) return y;
    }
    const double fac = (err == 0.0) ? 5.0
                                    : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= fac;
  }
  throw step_failure("rk45: exceeded max_steps before reaching the endpoint");
}

}  // namespace annuli
