#include "annuli/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "annuli/errors.hpp"

namespace annuli {

namespace {

GaussRule compute_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n(x) = 0.
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw domain_error("gauss_legendre: n must be positive");
  static std::map<std::size_t, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    std::size_t panels, std::size_t points) {
  if (panels == 0) throw domain_error("integrate_gl: need at least one panel");
  const GaussRule& rule = gauss_legendre(points);
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0, comp = 0.0;  // Neumaier compensation
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (std::size_t k = 0; k < points; ++k)
      s += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    s *= 0.5 * h;
    const double t = total + s;
    comp += (std::abs(total) >= std::abs(s)) ? (total - t) + s : (s - t) + total;
    total = t;
  }
  return total + comp;
}

std::vector<double> uniform_simpson_weights(std::size_t n, double a, double b) {
  if (n < 4) throw domain_error("uniform_simpson_weights: need at least 4 samples");
  const double h = (b - a) / static_cast<double>(n - 1);
  std::vector<double> w(n, 0.0);
  std::size_t intervals = n - 1;
  std::size_t simpson_end = intervals;  // index up to which plain Simpson runs
  const bool odd = (intervals % 2) != 0;
  if (odd) simpson_end = intervals - 3;  // close with a 3/8 rule
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (odd) {
    const std::size_t s = simpson_end;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

}  // namespace annuli
