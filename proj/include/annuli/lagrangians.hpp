#pragma once

#include <functional>
#include <string>
#include <vector>

#include "annuli/closed_form.hpp"
#include "annuli/energy.hpp"
#include "annuli/polar_grid.hpp"
#include "annuli/shooting.hpp"
#include "annuli/types.hpp"

namespace annuli {

/// The five free-Lagrangian families: integrands whose annulus integral is
/// the same for every admissible map in the homotopy class.
enum class FreeLagrangianKind {
  RadialFunction,  // M(|z|)
  Pullback,        // N(|h|) J
  Radial,          // A(|h|) |h|_N / t
  Angular,         // B(|z|) Im[h_T / h]
  TwoVariable      // d/dt [Scal(|z|, |h|)] / t
};

struct FreeLagrangianSpec {
  FreeLagrangianKind kind;
  std::function<double(double)> density;                  // M, N, A or B
  std::function<double(double, double)> density2;         // Scal(t, s)
  std::string label;
};

/// Grid integral of the density against a map, next to the map-independent
/// predicted value. The angular family's predicted value uses the
/// winding-consistent normalization 2 pi Int B(t) dt; `note` records the
/// convention.
struct FlResult {
  double computed;
  double predicted;
  double relative_gap;
  std::string note;
};
FlResult fl_integral(const FreeLagrangianSpec& spec, const PolarGridMap& map,
                     const DerivativeField* precomputed = nullptr);

/// Margin of the two-parameter pointwise inequality
///   wa^2 x^2 + wb^2 y^2 >= (wa^2 - wb^2 p^2) x^2 + (wb^2 - wa^2 q^2) y^2
///                          + 2 p q wa wb x y,
/// computed both as the closed square (p wb x - q wa y)^2 and as LHS-RHS.
struct IneqMargin {
  double direct;
  double lhs_minus_rhs;
};
IneqMargin pointwise_ineq_general(double x, double y, const Weights& w, double p,
                                  double q);

struct LowerBoundCertificate {
  std::string instance;
  double pointwise_margin_min = 0.0;
  double bound_value = 0.0;            // map-independent value of the bound
  double integral_gap = 0.0;           // map functional minus bound_value
  double equality_locus_deviation = 0.0;  // max |margin|; -> 0 on the minimizer's lift
  std::vector<std::string> notes;

  std::string to_json() const;
};

/// Free-Lagrangian lower bound of the combined energy against a map,
/// built from the closed-form minimizer's proof coefficients. The branch
/// (elastic / non-elastic) must match the minimizer's regime.
LowerBoundCertificate verify_energy_lower_bound(const PolarGridMap& map,
                                                const EnergySolution& sol,
                                                const Weights& w,
                                                Regime expected_regime);

/// Total-energy lower bound certificate: balanced instances use the
/// pointwise 2 w_a w_b (alpha J + beta) bound; certified concave instances
/// use the two-variable coefficient machinery; certified convex instances
/// reduce to the concave machinery of the inverse problem. Throws
/// certificate_unavailable otherwise.
LowerBoundCertificate verify_total_lower_bound(const PolarGridMap& map,
                                               const ShootResult& shoot,
                                               const Weights& w);

/// Concavity-case coefficient machinery for the total-energy proof.
class TotalBound {
 public:
  /// profile: the shoot minimizer H on [1, r]; w fixes (w_a, w_b, alpha, beta).
  TotalBound(const RadialProfile& profile, const Weights& w);

  double gamma_fn(double t, double s) const;  // Gamma(t, s)
  double gamma_t(double t, double s) const;   // d Gamma / dt, central step 1e-5
  double a_t(double t, double s) const;       // Int_{H(t)}^{s} Gamma_t(t, .) dtau
  double coeff_u(double s) const;
  double coeff_v(double t) const;
  double a_corner() const;                    // Scal(r, R)
  double predicted_bound() const;  // 2 pi [Int s U + Int t V + Scal(r, R)]
  double bound_at(double t, double s, double jac, double h_norm_n) const;

  double h(double t) const { return H_.h(t); }
  double hdot(double t) const { return H_.hdot(t); }
  double r() const { return r_; }
  double R() const { return R_; }

 private:
  ProfileInterpolant H_;
  Pchip F_;  // inverse map s -> t with exact nodal slopes 1/Hdot
  double r_, R_;
  double wa_, wb_, alpha_, beta_;
};

/// Sign checks of the two-variable coefficient construction on an n x n
/// (t, s) grid: max of the partial integral (expected <= tolerance) and
/// the sign trichotomy of Gamma_t about the curve s = H(t).
struct GammaSignReport {
  double max_a_t;
  bool trichotomy_ok;
  double band;           // |s - H(t)| exclusion band
  std::size_t grid_n;
  std::size_t sign_violations;

  std::string to_json() const;
};
GammaSignReport gamma_sign_checks(const ShootResult& shoot, const Weights& w,
                               std::size_t n_grid = 128);

}  // namespace annuli
