#include "frontlab/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frontlab/error.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/shooting.hpp"

namespace frontlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double robin_term(const Boundary& b, double h) { return b.is_robin() ? h / b.rho() : 0.0; }

// Splits T into whole steps that land on every snapshot time.
struct Schedule {
  double dt;
  long per_snapshot;
  long snapshots;
};

Schedule schedule(double dt, double T, double every) {
  require(T > 0.0 && every > 0.0, "positive times", "T_final and snapshot cadence must be positive");
  long per = static_cast<long>(std::ceil(every / dt - 1e-9));
  per = std::max(per, 1L);
  long snaps = std::max(1L, std::lround(T / every));
  return {every / static_cast<double>(per), per, snaps};
}

}  // namespace

double stable_dt_2d(double h, const Boundary& bottom, double c_frame, double lipschitz) {
  double robin = 1.0 + 0.5 * robin_term(bottom, h);
  return 0.24 * h * h / ((1.0 + std::abs(c_frame) * h / 2.0) * robin * (1.0 + 0.25 * h * h * lipschitz));
}

double stable_dt_1d(double h, const Boundary& bottom, double lipschitz) {
  double robin = 1.0 + robin_term(bottom, h);
  return 0.48 * h * h / (robin * (1.0 + 0.5 * h * h * lipschitz));
}

Evolution1D evolve_1d(const Reaction& r, const Profile& u0, const EvolutionConfig& cfg, const Observer1D& observe) {
  const UniformGrid& g = u0.grid;
  require(g.count >= 3, "grid size", "1D evolution needs at least 3 nodes");
  for (double v : u0.values)
    require(v >= -1.0 && v <= 2.0, "u0 in [-1, 2]", "initial data must lie in [-1, 2]");
  double h = g.spacing;
  double bound = stable_dt_1d(h, cfg.bottom, lipschitz_bound(r));
  double dt = cfg.dt > 0.0 ? cfg.dt : bound;
  if (cfg.check_cfl && dt > bound * (1.0 + 1e-12))
    fail(ErrorKind::configuration, "CFL violation",
         "dt = " + std::to_string(dt) + " exceeds the monotone bound " + std::to_string(bound));
  Schedule s = schedule(dt, cfg.T_final, cfg.snapshot_every);

  Evolution1D out;
  out.dt = s.dt;
  std::vector<double> u = u0.values, next(u.size());
  std::size_t n = u.size();
  if (cfg.bottom.is_dirichlet()) u[0] = 0.0;
  double inv = 1.0 / (h * h);
  double ghost = cfg.bottom.is_robin() ? 2.0 * h / cfg.bottom.rho() : 0.0;
  auto emit = [&](double t) {
    Profile p{g, u, cfg.bottom};
    if (observe) observe(t, p);
    if (cfg.keep_snapshots) out.snapshots.push_back({t, p});
  };
  emit(0.0);
  for (long k = 0; k < s.snapshots; ++k) {
    for (long m = 0; m < s.per_snapshot; ++m) {
      if (cfg.bottom.is_dirichlet()) {
        next[0] = 0.0;
      } else {
        double down = u[1] - ghost * u[0];
        next[0] = u[0] + s.dt * ((u[1] + down - 2.0 * u[0]) * inv + r(u[0]));
      }
      for (std::size_t i = 1; i + 1 < n; ++i)
        next[i] = u[i] + s.dt * ((u[i + 1] + u[i - 1] - 2.0 * u[i]) * inv + r(u[i]));
      next[n - 1] = u[n - 1];
      std::swap(u, next);
      ++out.steps;
    }
    emit(static_cast<double>(k + 1) * s.dt * static_cast<double>(s.per_snapshot));
  }
  out.final = Profile{g, u, cfg.bottom};
  return out;
}

Evolution2D evolve_halfplane(const Reaction& r, const Field& u0, const EvolutionConfig& cfg,
                             const Observer2D& observe) {
  std::size_t nx = u0.nx(), ny = u0.ny();
  require(nx >= 3 && ny >= 3, "grid size", "2D evolution needs at least 3x3 nodes");
  double hx = u0.x.spacing, hy = u0.y.spacing;
  double hmin = std::min(hx, hy);
  double bound = stable_dt_2d(hmin, cfg.whole_plane ? Boundary::dirichlet() : cfg.bottom, cfg.c_frame,
                              lipschitz_bound(r));
  double dt = cfg.dt > 0.0 ? cfg.dt : bound;
  if (cfg.check_cfl && dt > bound * (1.0 + 1e-12))
    fail(ErrorKind::configuration, "CFL violation",
         "dt = " + std::to_string(dt) + " exceeds the monotone bound " + std::to_string(bound));
  if (cfg.check_cfl)
    require(std::abs(cfg.c_frame) * hx < 2.0, "cell Peclet < 1", "centered advection needs |c| hx / 2 < 1");
  Schedule s = schedule(dt, cfg.T_final, cfg.snapshot_every);

  Evolution2D out;
  out.dt = s.dt;
  Field u = u0, next = u0;
  bool wall_dirichlet = !cfg.whole_plane && cfg.bottom.is_dirichlet();
  bool wall_free = !cfg.whole_plane && !cfg.bottom.is_dirichlet();
  if (wall_dirichlet)
    for (std::size_t i = 0; i < nx; ++i) u(i, 0) = next(i, 0) = 0.0;
  double ix = 1.0 / (hx * hx), iy = 1.0 / (hy * hy), cx = cfg.c_frame / (2.0 * hx);
  double ghost = cfg.bottom.is_robin() ? 2.0 * hy / cfg.bottom.rho() : 0.0;
  std::size_t j0 = wall_free ? 0 : 1;
  auto w = static_cast<long>(ny - 1);

  auto contaminated = [&]() {
    int gc = cfg.guard_cells;
    double worst = 0.0;
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        bool band = i < static_cast<std::size_t>(gc) || i + gc >= nx || j + gc >= ny ||
                    (cfg.whole_plane && j < static_cast<std::size_t>(gc));
        if (band) worst = std::max(worst, u(i, j));
      }
    return worst >= cfg.guard_level;
  };
  auto emit = [&](double t) {
    if (observe) observe(t, u);
    if (cfg.keep_snapshots) out.snapshots.push_back({t, u});
  };
  emit(0.0);
  const int threads = thread_count();
  for (long k = 0; k < s.snapshots; ++k) {
    for (long m = 0; m < s.per_snapshot; ++m) {
#pragma omp parallel for num_threads(threads) schedule(static)
      for (long jj = static_cast<long>(j0); jj < w; ++jj) {
        auto j = static_cast<std::size_t>(jj);
        const double* row = &u.values[j * nx];
        const double* up = row + nx;
        const double* down = j > 0 ? row - nx : nullptr;
        double* out_row = &next.values[j * nx];
        for (std::size_t i = 1; i + 1 < nx; ++i) {
          double c = row[i];
          double d = down ? down[i] : up[i] - ghost * c;
          double lap = (row[i + 1] + row[i - 1] - 2.0 * c) * ix + (up[i] + d - 2.0 * c) * iy;
          out_row[i] = c + s.dt * (lap + cx * (row[i + 1] - row[i - 1]) + r(c));
        }
      }
      std::swap(u.values, next.values);
      ++out.steps;
    }
    double t = static_cast<double>(k + 1) * s.dt * static_cast<double>(s.per_snapshot);
    out.t_reached = t;
    emit(t);
    if (cfg.guard && contaminated()) {
      out.halted = true;
      out.halt_reason = "truncation contamination";
      break;
    }
  }
  out.final = std::move(u);
  return out;
}

double front_radius(const UniformGrid& x, const std::vector<double>& row, double level) {
  std::size_t n = row.size();
  std::size_t ir = n;
  for (std::size_t i = n; i-- > 0;)
    if (row[i] >= level) {
      ir = i;
      break;
    }
  if (ir == n) return kNaN;
  std::size_t il = 0;
  while (row[il] < level) ++il;
  double xr = x.at(ir), xl = x.at(il);
  if (ir + 1 < n) xr += (row[ir] - level) / (row[ir] - row[ir + 1]) * x.spacing;
  if (il > 0) xl -= (row[il] - level) / (row[il] - row[il - 1]) * x.spacing;
  return std::max(std::abs(xr), std::abs(xl));
}

double fit_slope(const std::vector<double>& t, const std::vector<double>& r, double t0, double t1) {
  double n = 0, st = 0, sr = 0, stt = 0, str = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1 || !std::isfinite(r[i])) continue;
    n += 1;
    st += t[i];
    sr += r[i];
    stt += t[i] * t[i];
    str += t[i] * r[i];
  }
  if (n < 2) return kNaN;
  return (n * str - st * sr) / (n * stt - st * st);
}

void fit_front(FrontTrace& trace) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < trace.t.size(); ++i)
    if (std::isfinite(trace.radius[i])) usable.push_back(i);
  if (usable.size() < 10)
    fail(ErrorKind::numerical, "insufficient window", "fewer than 10 usable front samples");
  trace.fit_t0 = trace.t[usable[usable.size() / 2]];
  trace.fit_t1 = trace.t[usable.back()];
  trace.fit_speed = fit_slope(trace.t, trace.radius, trace.fit_t0, trace.fit_t1);
}

namespace {

std::vector<double> row_at(const Field& u, double y0) {
  double s = std::clamp(u.y.locate(y0), 0.0, static_cast<double>(u.ny() - 1));
  auto j = std::min(static_cast<std::size_t>(s), u.ny() - 2);
  double w = s - static_cast<double>(j);
  std::vector<double> row(u.nx());
  for (std::size_t i = 0; i < u.nx(); ++i) row[i] = (1.0 - w) * u(i, j) + w * u(i, j + 1);
  return row;
}

}  // namespace

FrontTracker::FrontTracker(std::vector<double> heights, std::vector<double> levels) {
  require(heights.size() == levels.size(), "matching sizes", "one level per tracked height");
  for (std::size_t k = 0; k < heights.size(); ++k) {
    FrontTrace tr;
    tr.y0 = heights[k];
    tr.level = levels[k];
    traces_.push_back(tr);
  }
}

void FrontTracker::operator()(double t, const Field& u) {
  for (auto& tr : traces_) {
    tr.t.push_back(t);
    tr.radius.push_back(front_radius(u.x, row_at(u, tr.y0), tr.level));
  }
}

std::vector<FrontTrace> FrontTracker::traces() const { return traces_; }

FrontTrace measure_spreading_speed(const std::vector<Snapshot2D>& snaps, double level, double y0) {
  FrontTracker tracker({y0}, {level});
  for (const auto& s : snaps) tracker(s.t, s.u);
  FrontTrace tr = tracker.traces().front();
  fit_front(tr);
  return tr;
}

double slab_convergence_check(const Field& u, const Profile& phi, double ell, double c_fraction, double c_star,
                              double T) {
  double reach = c_fraction * c_star * T;
  double worst = 0.0;
  for (std::size_t j = 0; j < u.ny(); ++j) {
    double y = u.y.at(j);
    if (y > ell + 1e-12) break;
    for (std::size_t i = 0; i < u.nx(); ++i) {
      if (std::abs(u.x.at(i)) > reach + 1e-12) continue;
      worst = std::max(worst, std::abs(u(i, j) - phi(y)));
    }
  }
  return worst;
}

FrontTrace front_speed_1d(const Reaction& r, const LineFrontOptions& opt) {
  double extent = opt.extent > 0.0 ? opt.extent : opt.support + 2.0 * std::sqrt(r.max_slope()) * opt.T + 30.0;
  UniformGrid g = UniformGrid::spanning(0.0, extent, opt.h);
  Profile u0{g, std::vector<double>(g.count, 0.0), Boundary::neumann()};
  for (std::size_t i = 0; i < g.count; ++i)
    if (g.at(i) <= opt.support) u0.values[i] = 1.0;
  EvolutionConfig cfg;
  cfg.dt = opt.dt;
  cfg.T_final = opt.T;
  cfg.bottom = Boundary::neumann();
  cfg.snapshot_every = opt.cadence;
  FrontTrace tr;
  tr.level = opt.level;
  evolve_1d(r, u0, cfg, [&](double t, const Profile& p) {
    tr.t.push_back(t);
    tr.radius.push_back(front_radius(p.grid, p.values, opt.level));
  });
  fit_front(tr);
  return tr;
}

std::string to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::extinct: return "extinct";
    case RunOutcome::invaded: return "invaded";
    case RunOutcome::undecided: return "undecided";
  }
  return "unknown";
}

Field ball_field(const UniformGrid& x, const UniformGrid& y, const BallData& ball) {
  Field u(x, y, 0.0);
  for (std::size_t j = 0; j < y.count; ++j)
    for (std::size_t i = 0; i < x.count; ++i) {
      double dx = x.at(i) - ball.x_center, dy = y.at(j) - ball.y_center;
      if (dx * dx + dy * dy <= ball.radius * ball.radius * (1.0 + 1e-12)) u(i, j) = ball.amplitude;
    }
  return u;
}

Field bump_field(const UniformGrid& x, const UniformGrid& y, const BallData& ball) {
  Field u(x, y, 0.0);
  for (std::size_t j = 0; j < y.count; ++j)
    for (std::size_t i = 0; i < x.count; ++i) {
      double dx = x.at(i) - ball.x_center, dy = y.at(j) - ball.y_center;
      double q = 1.0 - (dx * dx + dy * dy) / (ball.radius * ball.radius);
      if (q > 0.0) u(i, j) = ball.amplitude * q * q;
    }
  return u;
}

double extinction_time_bound(double amplitude, double radius, double target) {
  return amplitude * radius * radius / (4.0 * target);
}

namespace {

// Free heat flow of the disc data at time T, with the odd image for a
// Dirichlet wall. Returns the sup over the centre column.
double heat_kernel_sup(const BallData& ball, double T, bool dirichlet) {
  const double q = 0.1;
  double best = 0.0;
  for (double y = 0.25; y < ball.y_center + ball.radius + 6.0 * std::sqrt(T); y += 0.25) {
    double acc = 0.0;
    for (double xs = -ball.radius + 0.5 * q; xs < ball.radius; xs += q)
      for (double ys = -ball.radius + 0.5 * q; ys < ball.radius; ys += q) {
        if (xs * xs + ys * ys > ball.radius * ball.radius) continue;
        double yc = ball.y_center + ys;
        if (yc < 0.0) continue;
        double dx = ball.x_center + xs;
        double g = std::exp(-(dx * dx + (y - yc) * (y - yc)) / (4.0 * T));
        if (dirichlet) g -= std::exp(-(dx * dx + (y + yc) * (y + yc)) / (4.0 * T));
        acc += g;
      }
    best = std::max(best, ball.amplitude * acc * q * q / (4.0 * M_PI * T));
  }
  return best;
}

}  // namespace

ExtinctionResult extinction_experiment(const Reaction& r, const Boundary& b, const BallData& ball,
                                       const ExperimentGrid& g) {
  require(r.kind() != ReactionClass::monostable, "ignition or bistable",
          "extinction runs use ignition or bistable reactions");
  if (r.kind() == ReactionClass::bistable)
    require(b.is_dirichlet(), "bistable needs Dirichlet", "bistable extinction runs use a Dirichlet wall");
  UniformGrid gx = UniformGrid::spanning(-g.X, g.X, g.h), gy = UniformGrid::spanning(0.0, g.Y, g.h);
  Field u0 = ball_field(gx, gy, ball);
  EvolutionConfig cfg;
  cfg.T_final = g.T;
  cfg.bottom = b;
  cfg.snapshot_every = g.snapshot_every;
  ExtinctionResult res;
  Evolution2D ev = evolve_halfplane(r, u0, cfg, [&](double t, const Field& u) {
    res.t.push_back(t);
    res.sup.push_back(u.max());
  });
  res.sup_final = ev.final.max();
  res.outcome = !ev.halted && res.sup_final < 1e-3 ? RunOutcome::extinct : RunOutcome::undecided;
  res.heat_kernel_estimate = heat_kernel_sup(ball, g.T, b.is_dirichlet());
  return res;
}

Profile reference_steady_state(const Reaction& r, const Boundary& b, const UniformGrid& y) {
  double Y = std::max(80.0, y.back());
  Profile fine = halfline_steady_state(r, b, Y, 1e-3);
  return fine.resampled(y);
}

InvasionResult invasion_experiment(const Reaction& r, const Boundary& b, const BallData& ball,
                                   const ExperimentGrid& g, const InvasionOptions& opt) {
  UniformGrid gx = UniformGrid::spanning(-g.X, g.X, g.h), gy = UniformGrid::spanning(0.0, g.Y, g.h);
  Field u0 = opt.smooth_bump ? bump_field(gx, gy, ball) : ball_field(gx, gy, ball);
  InvasionResult res;
  res.phi = reference_steady_state(r, b, gy);
  std::vector<double> levels;
  for (double y0 : opt.track_heights) levels.push_back(opt.level_fraction * res.phi(y0));
  FrontTracker tracker(opt.track_heights, levels);
  EvolutionConfig cfg;
  cfg.T_final = g.T;
  cfg.bottom = b;
  cfg.snapshot_every = g.snapshot_every;
  Evolution2D ev = evolve_halfplane(r, u0, cfg, [&](double t, const Field& u) {
    if (!opt.track_heights.empty()) tracker(t, u);
  });
  res.halted = ev.halted;
  res.halt_reason = ev.halt_reason;
  res.final = std::move(ev.final);
  res.sup_final = res.final.max();
  const Field& u = res.final;
  for (std::size_t j = 0; j < u.ny() && u.y.at(j) <= opt.ell + 1e-12; ++j)
    for (std::size_t i = 0; i < u.nx(); ++i) {
      double x = u.x.at(i);
      double e = std::abs(u(i, j) - res.phi.values[j]);
      if (std::abs(x) <= opt.window_half_width + 1e-12) res.window_error = std::max(res.window_error, e);
      if (std::abs(x) < 0.5 * u.x.spacing) res.center_error = std::max(res.center_error, e);
    }
  if (opt.c_star > 0.0) res.slab_error = slab_convergence_check(u, res.phi, opt.ell, opt.c_fraction, opt.c_star, g.T);
  if (res.halted) res.outcome = RunOutcome::undecided;
  else if (res.window_error < 0.05) res.outcome = RunOutcome::invaded;
  else if (res.sup_final < 1e-3) res.outcome = RunOutcome::extinct;
  else res.outcome = RunOutcome::undecided;
  res.traces = tracker.traces();
  for (auto& tr : res.traces) fit_front(tr);
  return res;
}

}  // namespace frontlab
