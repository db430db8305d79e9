#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace annuli {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
/// Rules are cached per n.
const GaussRule& gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre integral of f over [a, b] with `panels`
/// equal panels of an n-point rule each.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    std::size_t panels = 8, std::size_t points = 64);

/// Quadrature weights for uniformly sampled data on [a, b] (n samples
/// including both endpoints): composite Simpson, with a 3/8 closing rule
/// when the interval count is odd. Order 4.
std::vector<double> uniform_simpson_weights(std::size_t n, double a, double b);

}  // namespace annuli
