#pragma once

#include <string>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/reaction.hpp"

namespace frontlab {

/// A wave on [-X, X] x [0, Y] with its typed invariants measured.
struct HalfPlaneWave {
  Field field;
  double speed = 0.0;
  Profile left_profile;
  Profile right_profile;
  double pin_x = 0.0, pin_y = 0.0, pin_value = 0.0;
  /// Reference half-line state sampled on the field's y grid.
  Profile phi;

  double residual = 0.0;  // interior discrete elliptic residual
  double max_dx = 0.0;
  double min_dy = 0.0;
  double left_error = 0.0;  // on [0, Y/2]
  double right_sup = 0.0;
  double interior_min = 0.0, interior_max = 0.0;
  /// Window differences between successive schedule stages.
  std::vector<double> window_deltas;

  /// Every invariant at its documented tolerance; otherwise names the first failure.
  std::string violation(double residual_tol = 1e-4) const;
};

struct StripLimitOptions {
  std::vector<double> L_schedule{30.0, 45.0, 60.0};
  double h = 0.5;
  double stabilize_tol = 1e-2;
  /// false returns the last stage with its window deltas instead of throwing.
  bool require_stable = true;
};

/// Strip waves at growing L recentred so that Phi(0, 1) = phi(1) / 2.
HalfPlaneWave ignition_bistable_halfplane_wave(const Reaction& r, const Boundary& b,
                                               const StripLimitOptions& opt = {});

struct Subsolution {
  Profile v;
  double ell0 = 0.0;
  double ell1 = 0.0;
  double rho = 0.0;  // the slope bound, not the Robin parameter
  /// min over nodes y < ell1 of the discrete v''/2 + f(v/2).
  double discrete_margin = 0.0;
  double operator()(double y) const;
};

Subsolution subsolution_v(const Reaction& r, const Boundary& b, double h = 0.5, double Y = 40.0);

/// Psi^s on the box grid [-a, a] x [0, b]: the unit-time evolution of the
/// lattice wave U(x + s) in the frame moving with speed c.
struct Supersolution {
  Field psi;
  double shift = 0.0;
  double max_dx = 0.0;
  double min_dy = 0.0;
  double right_sup = 0.0;
};

Supersolution supersolution_psi(const Reaction& r, const Boundary& b, double c, double a, double bheight, double shift,
                                double h);

struct MonostableBox {
  Field field;
  Field psi;
  double k = 0.0;
  double shift = 0.0;
  double relax_violation = 0.0;
  double sandwich_low = 0.0;   // min (Phi - k v)
  double sandwich_high = 0.0;  // max (Phi - Psi)
  double residual = 0.0;
};

MonostableBox monostable_box_wave(const Reaction& r, const Boundary& b, double c, double a, double bheight,
                                  double shift, double h);

struct ShiftPick {
  double shift = 0.0;
  double pin_value = 0.0;
  MonostableBox box;
  std::vector<std::pair<double, double>> probes;  // (shift, Phi(0, ell1))
};

ShiftPick pick_shift(const Reaction& r, const Boundary& b, double c, double a, double bheight, double h);

struct MonostableOptions {
  std::vector<std::pair<double, double>> box_schedule{{40.0, 40.0}, {50.0, 50.0}, {60.0, 60.0}};
  double h = 0.5;
  double stabilize_tol = 1e-2;
};

/// Grows the box along the schedule until the window stabilises. Throws
/// "no wave at this speed" when no monotone front exists at c.
HalfPlaneWave monostable_halfplane_wave(const Reaction& r, const Boundary& b, double c,
                                        const MonostableOptions& opt = {});

/// max |a - b| over [-10, 10] x [0, 10] by bilinear sampling.
double window_difference(const Field& a, const Field& b);

}  // namespace frontlab
