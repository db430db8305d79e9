#pragma once

#include <cstddef>
#include <vector>

namespace annuli {

/// Shape-preserving piecewise-cubic Hermite interpolant.
///
/// Slopes may be supplied (they are kept when they already lie in the
/// Fritsch-Carlson monotone region and limited otherwise) or derived from
/// the data. Strictly increasing data yields a strictly increasing
/// interpolant, which downstream code relies on when dividing by the
/// derivative.
class Pchip {
 public:
  Pchip() = default;

  /// Interpolate (x, y) with slopes chosen by the Fritsch-Carlson scheme.
  Pchip(std::vector<double> x, std::vector<double> y);

  /// Interpolate (x, y) with caller-supplied slopes (limited only if they
  /// leave the monotone region).
  Pchip(std::vector<double> x, std::vector<double> y, std::vector<double> slope);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double derivative(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  const std::vector<double>& slopes() const { return m_; }

 private:
  std::size_t interval(double x) const;
  void validate_and_limit();

  std::vector<double> x_, y_, m_;
};

}  // namespace annuli
