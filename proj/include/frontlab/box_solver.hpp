#pragma once

#include <string>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/reaction.hpp"

namespace frontlab {

/// Discrete  Lap u + c u_x + f(u) = 0  on the tensor grid of a Field.
///
/// The left and right columns are held fixed at whatever the field holds.
/// The bottom row follows `bottom` through the ghost node
/// u_{-1} = u_1 - 2 h rho^{-1} (u_0 - zero); a Dirichlet bottom is held fixed.
/// The top row is fixed unless `top_rho > 0`, in which case it carries the
/// mirrored Robin condition.
struct BoxProblem {
  Reaction reaction;
  double c = 0.0;
  Boundary bottom = Boundary::dirichlet();
  double top_rho = 0.0;
  double zero = 0.0;
};

/// Max interior residual; fills `out` with the residual field if given.
double box_residual(const BoxProblem& p, const Field& u, Field* out = nullptr);

struct RelaxOptions {
  double dt = 0.0;  // 0 picks the monotone bound
  double tol = 1e-8;
  long max_steps = 2000000;
  /// -1 expects a pointwise nonincreasing trajectory, +1 nondecreasing, 0 none.
  int direction = 0;
  long record_every = 1000;
};

struct RelaxReport {
  long steps = 0;
  double dt = 0.0;
  double rate = 0.0;  // ||u^{n+1} - u^n||_inf / dt at exit
  bool converged = false;
  /// Largest step against `direction` (0 when monotone).
  double monotone_violation = 0.0;
  std::vector<double> rate_history;
};

RelaxReport relax(const BoxProblem& p, Field& u, const RelaxOptions& opt = {});

struct NewtonReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> history;
};

NewtonReport newton_solve(const BoxProblem& p, Field& u, double tol = 1e-10, int max_iter = 40);

/// Relaxation until the rate drops below `handoff`, then Newton.
struct BoxSolveReport {
  RelaxReport relax;
  NewtonReport newton;
  double residual = 0.0;
};

BoxSolveReport solve_box(const BoxProblem& p, Field& u, const RelaxOptions& opt, double handoff = 1e-4);

/// Solves for (u, c) with the extra condition u(x0, y0) = level (bilinear),
/// by pseudo-transient Newton on the bordered system. p.c is the start value.
struct PinnedReport {
  double c = 0.0;
  double pin_residual = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> c_history;
};

PinnedReport pinned_solve(const BoxProblem& p, Field& u, double x0, double y0, double level, double tol = 1e-10,
                          int max_iter = 200);

/// Discrete steady state of the column problem u'' + f(u) = 0 on `guess.grid`
/// with the same wall and top treatment as `p`; Newton from `guess`.
Profile discrete_column_state(const BoxProblem& p, const Profile& guess, double top_value = 0.0);

}  // namespace frontlab
