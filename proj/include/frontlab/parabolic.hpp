#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/reaction.hpp"

namespace frontlab {

/// Explicit stepping controls. Dirichlet far boundaries are clamped to the
/// initial data; the wall row y = y.origin follows `bottom`.
struct EvolutionConfig {
  double dt = 0.0;  // 0 picks the largest admissible step
  double T_final = 1.0;
  Boundary bottom = Boundary::dirichlet();
  /// No wall: the bottom row is a clamped far boundary like the others.
  bool whole_plane = false;
  /// Advection c d/dx, i.e. the equation in a frame moving with speed c.
  double c_frame = 0.0;
  double snapshot_every = 1.0;
  bool keep_snapshots = false;
  bool check_cfl = true;
  /// Halt when the solution reaches guard_level within guard_cells of a far boundary.
  bool guard = true;
  double guard_level = 1e-2;
  int guard_cells = 5;
};

/// Largest monotone explicit step for the given spacing and wall.
double stable_dt_2d(double h, const Boundary& bottom, double c_frame, double lipschitz);
double stable_dt_1d(double h, const Boundary& bottom, double lipschitz);

struct Snapshot1D {
  double t;
  Profile u;
};

struct Evolution1D {
  Profile final;
  std::vector<Snapshot1D> snapshots;
  double dt = 0.0;
  long steps = 0;
};

using Observer1D = std::function<void(double, const Profile&)>;

/// u_t = u_yy + f(u) on the grid of u0; wall at the first node, clamp at the last.
Evolution1D evolve_1d(const Reaction& r, const Profile& u0, const EvolutionConfig& cfg,
                      const Observer1D& observe = {});

struct Snapshot2D {
  double t;
  Field u;
};

struct Evolution2D {
  Field final;
  std::vector<Snapshot2D> snapshots;
  double dt = 0.0;
  long steps = 0;
  double t_reached = 0.0;
  bool halted = false;
  std::string halt_reason;
};

using Observer2D = std::function<void(double, const Field&)>;

/// u_t = Laplacian u + c u_x + f(u) on the tensor grid of u0.
Evolution2D evolve_halfplane(const Reaction& r, const Field& u0, const EvolutionConfig& cfg,
                             const Observer2D& observe = {});

/// (t, radius) samples at one height, with a least-squares speed over the
/// last half of the usable samples.
struct FrontTrace {
  std::vector<double> t;
  std::vector<double> radius;
  double level = 0.0;
  double y0 = 0.0;
  double fit_speed = 0.0;
  double fit_t0 = 0.0;
  double fit_t1 = 0.0;
};

/// max{|x| : row(x) >= level} with linear interpolation at the crossing; NaN if none.
double front_radius(const UniformGrid& x, const std::vector<double>& row, double level);

/// Least-squares slope of (t, r) over t in [t0, t1].
double fit_slope(const std::vector<double>& t, const std::vector<double>& r, double t0, double t1);

/// Fills fit_speed and the fit window; throws "insufficient window".
void fit_front(FrontTrace& trace);

/// Records front radii at fixed heights from evolve_halfplane snapshots.
class FrontTracker {
 public:
  FrontTracker(std::vector<double> heights, std::vector<double> levels);
  void operator()(double t, const Field& u);
  std::vector<FrontTrace> traces() const;

 private:
  std::vector<FrontTrace> traces_;
};

FrontTrace measure_spreading_speed(const std::vector<Snapshot2D>& snaps, double level, double y0);

/// max over |x| <= c_fraction c_star T, 0 <= y <= ell of |u - phi(y)|.
double slab_convergence_check(const Field& u, const Profile& phi, double ell, double c_fraction, double c_star,
                              double T);

/// Whole-line front run: even data 1 on [0, support], Neumann at 0.
struct LineFrontOptions {
  double h = 0.05;
  double dt = 0.0;
  double T = 200.0;
  double support = 10.0;
  double level = 0.5;
  double cadence = 0.5;
  double extent = 0.0;  // 0 picks support + 2 sqrt(max f') T + 30
};

FrontTrace front_speed_1d(const Reaction& r, const LineFrontOptions& opt);

enum class RunOutcome { extinct, invaded, undecided };

std::string to_string(RunOutcome o);

struct BallData {
  double amplitude = 1.0;
  double radius = 5.0;
  double x_center = 0.0;
  double y_center = 5.0;
};

/// amplitude on the closed disc, zero elsewhere.
Field ball_field(const UniformGrid& x, const UniformGrid& y, const BallData& ball);
/// amplitude * max(0, 1 - |p - center|^2 / radius^2)^2.
Field bump_field(const UniformGrid& x, const UniformGrid& y, const BallData& ball);

struct ExperimentGrid {
  double X = 100.0;  // x in [-X, X]
  double Y = 100.0;  // y in [0, Y]
  double h = 0.5;
  double T = 60.0;
  double snapshot_every = 1.0;
};

struct ExtinctionResult {
  RunOutcome outcome = RunOutcome::undecided;
  double sup_final = 0.0;
  std::vector<double> t, sup;
  /// Heat-kernel estimate of the half-plane sup at T, unaffected by f since u <= theta.
  double heat_kernel_estimate = 0.0;
};

/// Default T at which a whole-plane heat-kernel bound drops below 1e-3.
double extinction_time_bound(double amplitude, double radius, double target = 1e-3);

ExtinctionResult extinction_experiment(const Reaction& r, const Boundary& b, const BallData& ball,
                                       const ExperimentGrid& g);

struct InvasionResult {
  RunOutcome outcome = RunOutcome::undecided;
  double window_error = 0.0;
  double center_error = 0.0;
  double slab_error = 0.0;
  double sup_final = 0.0;
  Field final;
  Profile phi;
  bool halted = false;
  std::string halt_reason;
  std::vector<FrontTrace> traces;
};

struct InvasionOptions {
  double window_half_width = 10.0;
  double ell = 8.0;
  double c_fraction = 0.5;
  double c_star = 0.0;  // speed used for the slab; 0 skips the slab measure
  bool smooth_bump = false;
  std::vector<double> track_heights;
  double level_fraction = 0.5;
};

InvasionResult invasion_experiment(const Reaction& r, const Boundary& b, const BallData& ball,
                                   const ExperimentGrid& g, const InvasionOptions& opt = {});

/// Continuous half-line state sampled on a grid (fine shot, then interpolated).
Profile reference_steady_state(const Reaction& r, const Boundary& b, const UniformGrid& y);

}  // namespace frontlab
