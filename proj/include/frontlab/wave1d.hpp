#pragma once

#include <string>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/reaction.hpp"

namespace frontlab {

/// U(xi) with U(-inf) = 1 and U(+inf) = lower state, solving U'' + c U' + f(U) = 0.
/// Outside the sampled window the profile continues with its exponential tails.
struct Wave1D {
  double speed = 0.0;
  Profile profile;
  double left_value = 1.0;
  double right_value = 0.0;
  double left_rate = 0.0;   // 1 - U ~ e^{left_rate xi} as xi -> -inf
  double right_rate = 0.0;  // U - lower ~ e^{-right_rate xi} as xi -> +inf

  double operator()(double xi) const;
};

enum class PhaseOutcome { overshoot, undershoot, connects };

std::string to_string(PhaseOutcome o);

struct SpeedProbe {
  double c;
  PhaseOutcome outcome;
};

struct SpeedSearch {
  Wave1D wave;
  std::vector<SpeedProbe> history;
};

/// Integrates the unstable manifold of (1, 0) at speed c and classifies it.
PhaseOutcome classify_speed(const Reaction& r, double c);

SpeedSearch bistable_ignition_speed(const Reaction& r, double tol = 1e-9);
Wave1D wave_speed_bistable_ignition(const Reaction& r);

/// Phase-plane profile of a monostable wave at a given speed; throws
/// "no monotone connection" when the trajectory crosses zero.
Wave1D wave_profile_at_speed(const Reaction& r, double c);

struct MonostableSpeed {
  double measured = 0.0;
  double linear_bound = 0.0;
  bool below_linear = false;
  /// Fitted speed over successively later windows (diagnostic).
  std::vector<double> window_speeds;
};

MonostableSpeed minimal_speed_monostable(const Reaction& r, double h = 0.1, double T = 200.0);

/// eps = 0 returns r unchanged; otherwise Reaction::epsilon_modified.
Reaction epsilon_modify(const Reaction& r, double eps);

/// Lattice traveling wave for the centered 3-point scheme with spacing h:
/// (U_{i+1} - 2U_i + U_{i-1})/h^2 + c (U_{i+1} - U_{i-1})/(2h) + f(U_i) = 0,
/// on nodes xi_i = xi_min + i h. The first two nodes are seeded on the
/// linearised unstable direction at 1 with 1 - U = z^{(xi - shift)/h} / 2, so
/// the wave moves continuously with `shift`.
struct LatticeWave {
  double speed = 0.0;
  double h = 0.0;
  double origin = 0.0;
  std::vector<double> values;
  double operator()(double xi) const;
};

LatticeWave lattice_wave(const Reaction& r, double c, double h, double xi_min, std::size_t count, double shift);

}  // namespace frontlab
