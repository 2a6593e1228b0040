#pragma once

#include <limits>
#include <vector>

#include "frontlab/box_solver.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/reaction.hpp"

namespace frontlab {

/// Interval state and grids shared by every box solve at one (L, h).
struct StripSetup {
  double L = 0.0;
  double h = 0.0;
  bool symmetric = false;
  UniformGrid y;
  /// Discrete column steady state on `y`, the left datum of every box.
  Profile phi_L;
  Profile psi_L;
  double c_star = 0.0;
  double vartheta = 0.0;
};

StripSetup strip_setup(const Reaction& r, const Boundary& b, double L, double h, bool symmetric = false);

BoxProblem box_problem(const Reaction& r, const Boundary& b, const StripSetup& s, double c);

struct BoxWave {
  Field field;
  double c = 0.0;
  double a = 0.0;
  BoxSolveReport report;
};

/// Relaxation from phi_L on [-a, a] x [0, L], finished by Newton.
BoxWave solve_box_wave(const Reaction& r, const Boundary& b, double L, double a, double c, double h);
BoxWave solve_box_wave(const StripSetup& s, const Reaction& r, const Boundary& b, double a, double c);

struct MonotoneInC {
  bool ok = true;
  double worst = 0.0;  // max of Phi^{c2} - Phi^{c1}
  double x = 0.0, y = 0.0;
};

MonotoneInC compare_in_c(const Field& lower_c, const Field& higher_c, double tol = 1e-8);
MonotoneInC check_monotone_in_c(const Reaction& r, const Boundary& b, double L, double a, double c1, double c2,
                                double h);

struct PinnedSpeed {
  double a = 0.0;
  double L = 0.0;
  double c_pinned = 0.0;
  double pin_value = 0.0;
  double residual = 0.0;  // |Phi(pin) - pin_value|
  double elliptic_residual = 0.0;
  int iterations = 0;
  Field field;
};

struct PinOptions {
  double theta0 = std::numeric_limits<double>::quiet_NaN();  // NaN picks (vartheta + 1) / 2
  double pin_y = std::numeric_limits<double>::quiet_NaN();   // NaN picks L / 2
};

PinnedSpeed pin_speed(const StripSetup& s, const Reaction& r, const Boundary& b, double a,
                      const PinOptions& opt = {});
PinnedSpeed pin_speed(const Reaction& r, const Boundary& b, double L, double a, double theta0, double h);

struct StripWave {
  Field field;
  double c_L = 0.0;
  double c_star = 0.0;
  std::vector<PinnedSpeed> schedule;  // fields dropped except the last
  Profile phi_L;
  double left_error = 0.0;   // column x = -a/2 against phi_L
  double right_sup = 0.0;    // column x = +a/2
  double symmetry_defect = 0.0;
  double translation_c = std::numeric_limits<double>::quiet_NaN();
};

struct StripWaveOptions {
  double theta0 = std::numeric_limits<double>::quiet_NaN();
  int boxes = 3;          // a = 2L, 4L, 8L at most
  double c_tol = 2e-3;
  bool translation_probe = false;
};

StripWave strip_wave(const Reaction& r, const Boundary& b, double L, double h, const StripWaveOptions& opt = {});
StripWave strip_wave(const StripSetup& s, const Reaction& r, const Boundary& b, const StripWaveOptions& opt = {});
/// Ignition with mirrored Robin rows at y = 0 and y = L.
StripWave symmetric_strip_wave(const Reaction& r, double rho, double L, double h, const StripWaveOptions& opt = {});

struct SpeedRow {
  double L, c_L, c_star, gap;
};

struct SpeedStudy {
  std::vector<SpeedRow> rows;
  bool gap_nonincreasing = true;
};

SpeedStudy speed_convergence_study(const Reaction& r, const Boundary& b, const std::vector<double>& Ls, double h);

/// max |Phi(x, y) - Phi(x, L - y)|.
double symmetry_defect(const Field& u);
/// Largest forward difference in x and smallest forward difference in y
/// (over y <= y_max); the signed monotonicity margins.
double max_dx(const Field& u);
double min_dy(const Field& u, double y_max);

}  // namespace frontlab
