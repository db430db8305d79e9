#include "annuli/pchip.hpp"

#include <algorithm>
#include <cmath>

#include "annuli/errors.hpp"

namespace annuli {

namespace {

// Fritsch-Carlson slopes for monotone data: harmonic mean of adjacent
// secants where they share a sign, zero at local extrema.
std::vector<double> fc_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n - 1), m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      m[i] = 0.0;
    } else {
      const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
      m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  // endpoint slopes: one-sided three-point, clipped to keep shape
  if (n > 2) {
    const double h0 = x[1] - x[0], h1 = x[2] - x[1];
    double m0 = ((2.0 * h0 + h1) * d[0] - h0 * d[1]) / (h0 + h1);
    if (m0 * d[0] <= 0.0) m0 = 0.0;
    else if (std::abs(m0) > 3.0 * std::abs(d[0])) m0 = 3.0 * d[0];
    m[0] = m0;
    const double hn1 = x[n - 2] - x[n - 3], hn0 = x[n - 1] - x[n - 2];
    double mn = ((2.0 * hn0 + hn1) * d[n - 2] - hn0 * d[n - 3]) / (hn0 + hn1);
    if (mn * d[n - 2] <= 0.0) mn = 0.0;
    else if (std::abs(mn) > 3.0 * std::abs(d[n - 2])) mn = 3.0 * d[n - 2];
    m[n - 1] = mn;
  }
  return m;
}

}  // namespace

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() < 2 || x_.size() != y_.size())
    throw domain_error("Pchip: need at least two matching nodes");
  m_ = fc_slopes(x_, y_);
  validate_and_limit();
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y, std::vector<double> slope)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slope)) {
  if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != m_.size())
    throw domain_error("Pchip: need at least two matching nodes");
  validate_and_limit();
}

void Pchip::validate_and_limit() {
  const std::size_t n = x_.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i])) throw domain_error("Pchip: abscissae must increase strictly");
  // Fritsch-Carlson limiter: on each monotone interval, (m_i/d, m_{i+1}/d)
  // must stay inside the circle of radius 3.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    if (d == 0.0) continue;
    const double a = m_[i] / d, b = m_[i + 1] / d;
    const double r2 = a * a + b * b;
    if (a < 0.0) m_[i] = 0.0;
    if (b < 0.0) m_[i + 1] = 0.0;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m_[i] = tau * a * d;
      m_[i + 1] = tau * b * d;
    }
  }
}

std::size_t Pchip::interval(double x) const {
  const double lo = x_.front(), hi = x_.back();
  const double pad = 1e-12 * (std::abs(lo) + std::abs(hi) + 1.0);
  if (x < lo - pad || x > hi + pad)
    throw out_of_domain("Pchip: evaluation point outside data range");
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double Pchip::eval(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double u = (x - x_[i]) / h;
  const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
  const double h10 = u * (1.0 - u) * (1.0 - u);
  const double h01 = u * u * (3.0 - 2.0 * u);
  const double h11 = u * u * (u - 1.0);
  return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double Pchip::derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double u = (x - x_[i]) / h;
  const double g00 = 6.0 * u * (u - 1.0) / h;
  const double g10 = (1.0 - u) * (1.0 - 3.0 * u);
  const double g01 = -g00;
  const double g11 = u * (3.0 * u - 2.0);
  return g00 * y_[i] + g10 * m_[i] + g01 * y_[i + 1] + g11 * m_[i + 1];
}

}  // namespace annuli
