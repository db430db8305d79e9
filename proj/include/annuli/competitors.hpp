#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "annuli/energy.hpp"
#include "annuli/polar_grid.hpp"
#include "annuli/radial_profile.hpp"
#include "annuli/types.hpp"

namespace annuli {

/// Deterministic counter-based generator (splitmix64); documented constants,
/// reproducible across platforms.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  /// uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Perturbation of a radial base map. The radial and angular bumps vanish
/// at both boundary circles; a constant twist component rotates one
/// boundary against the other (admissible within the class). The seed
/// fixes the twist; amplitudes are damped by halving until the discrete
/// Jacobian is positive everywhere.
struct PerturbationSpec {
  RadialProfile base;
  double eps_radial = 0.0;
  double eps_angular = 0.0;
  int mode_t = 1;
  int mode_theta = 1;
  std::uint64_t seed = 0;
};

/// Build the perturbed map on an n_t x n_theta grid. Throws
/// cannot_satisfy_jacobian after 20 amplitude halvings.
PolarGridMap make_competitor(const PerturbationSpec& spec, std::size_t n_t,
                             std::size_t n_theta);

/// Same, also reporting the amplitudes actually applied after damping.
struct CompetitorMap {
  PolarGridMap map;
  double eps_radial, eps_angular, twist;
  int halvings;
};
CompetitorMap make_competitor_ex(const PerturbationSpec& spec, std::size_t n_t,
                                 std::size_t n_theta);

/// Target rotation h -> e^{i phi0} h; every functional is invariant.
PolarGridMap rotate(const PolarGridMap& map, double phi0);

enum class Functional { CombinedEnergy, Distortion, Total };
const char* to_string(Functional f);

struct SweepRow {
  std::size_t index;
  double eps_radial, eps_angular;
  int mode_t, mode_theta;
  double twist;
  double value;
  double gap;
  int halvings;
  std::string note;
};

struct DominanceTable {
  Functional functional;
  double baseline;  // grid value of the radial minimizer's own lift
  double min_gap;
  std::vector<SweepRow> rows;

  void write_csv(const std::string& path) const;
  std::string to_json() const;
};

/// n pseudo-random competitors around the minimizer profile; each row
/// records the selected functional's grid value and its gap against the
/// minimizer lift evaluated on the same grid. Reproducible from the seed.
DominanceTable competitor_sweep(const RadialProfile& minimizer, const Weights& w,
                                Functional functional, std::size_t n,
                                std::uint64_t seed, std::size_t n_t = 256,
                                std::size_t n_theta = 256);

/// Smooth random strictly increasing profile [1, r] -> [1, R] (for
/// property sweeps): H' proportional to exp of a low-order trig polynomial.
RadialProfile random_smooth_profile(double r, double R, std::uint64_t seed,
                                    std::size_t n_nodes = 513);

}  // namespace annuli
