#include "frontlab/stripwave.hpp"

#include <algorithm>
#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/shooting.hpp"
#include "frontlab/wave1d.hpp"

namespace frontlab {

namespace {

Field from_column(const UniformGrid& x, const Profile& col) {
  Field u(x, col.grid, 0.0);
  for (std::size_t j = 0; j < col.grid.count; ++j)
    for (std::size_t i = 0; i + 1 < x.count; ++i) u(i, j) = col.values[j];
  return u;
}

void require_grid(double L, double a, double h) {
  auto divides = [h](double v) { return std::abs(v / h - std::round(v / h)) < 1e-9; };
  require(divides(L) && divides(a), "h divides a and L", "grid spacing must divide both a and L");
}

}  // namespace

StripSetup strip_setup(const Reaction& r, const Boundary& b, double L, double h, bool symmetric) {
  StripSetup s;
  s.L = L;
  s.h = h;
  s.symmetric = symmetric;
  s.y = UniformGrid::spanning(0.0, L, h);
  StripStateOptions o;
  o.symmetric = symmetric;
  StripStateReport st = strip_steady_states(r, b, L, o);
  BoxProblem p = box_problem(r, b, s, 0.0);
  s.phi_L = discrete_column_state(p, st.phi_L.resampled(s.y));
  s.psi_L = st.psi_L.resampled(s.y);
  s.c_star = wave_speed_bistable_ignition(r).speed;
  s.vartheta = vartheta(r);
  return s;
}

BoxProblem box_problem(const Reaction& r, const Boundary& b, const StripSetup& s, double c) {
  BoxProblem p{r, c, b, 0.0, 0.0};
  if (s.symmetric) p.top_rho = b.rho();
  return p;
}

BoxWave solve_box_wave(const StripSetup& s, const Reaction& r, const Boundary& b, double a, double c) {
  require_grid(s.L, a, s.h);
  BoxWave w;
  w.c = c;
  w.a = a;
  w.field = from_column(UniformGrid::spanning(-a, a, s.h), s.phi_L);
  RelaxOptions o;
  o.direction = -1;
  w.report = solve_box(box_problem(r, b, s, c), w.field, o);
  return w;
}

BoxWave solve_box_wave(const Reaction& r, const Boundary& b, double L, double a, double c, double h) {
  return solve_box_wave(strip_setup(r, b, L, h), r, b, a, c);
}

MonotoneInC compare_in_c(const Field& lower_c, const Field& higher_c, double tol) {
  require(lower_c.values.size() == higher_c.values.size(), "matching grids", "fields must share a grid");
  MonotoneInC m;
  m.worst = -kInfinity;
  for (std::size_t j = 0; j < lower_c.ny(); ++j)
    for (std::size_t i = 0; i < lower_c.nx(); ++i) {
      double d = higher_c(i, j) - lower_c(i, j);
      if (d > m.worst) {
        m.worst = d;
        m.x = lower_c.x.at(i);
        m.y = lower_c.y.at(j);
      }
    }
  m.ok = m.worst <= tol;
  return m;
}

MonotoneInC check_monotone_in_c(const Reaction& r, const Boundary& b, double L, double a, double c1, double c2,
                                double h) {
  require(c1 <= c2, "c1 <= c2", "speeds must be ordered");
  StripSetup s = strip_setup(r, b, L, h);
  BoxWave w1 = solve_box_wave(s, r, b, a, c1);
  if (c1 == c2) return compare_in_c(w1.field, w1.field);
  BoxWave w2 = solve_box_wave(s, r, b, a, c2);
  return compare_in_c(w1.field, w2.field);
}

PinnedSpeed pin_speed(const StripSetup& s, const Reaction& r, const Boundary& b, double a, const PinOptions& opt) {
  require_grid(s.L, a, s.h);
  double theta0 = std::isnan(opt.theta0) ? 0.5 * (s.vartheta + 1.0) : opt.theta0;
  require(theta0 > s.vartheta && theta0 < 1.0, "theta0 in (vartheta, 1)", "pin value must lie in (vartheta, 1)");
  double pin_y = std::isnan(opt.pin_y) ? 0.5 * s.L : opt.pin_y;
  // Start from the plane wave carried by the interval state, centred at the pin.
  Wave1D W = wave_speed_bistable_ignition(r);
  double shift = 0.0;
  {
    double peak = s.phi_L(pin_y);
    require(peak > theta0, "pin below phi_L", "phi_L does not exceed the pin value at the pin height");
    double lo = -200.0, hi = 200.0;
    for (int k = 0; k < 100; ++k) {
      double mid = 0.5 * (lo + hi);
      if (peak * W(mid) > theta0) lo = mid;
      else hi = mid;
    }
    shift = 0.5 * (lo + hi);
  }
  UniformGrid gx = UniformGrid::spanning(-a, a, s.h);
  Field u(gx, s.y, 0.0);
  for (std::size_t j = 0; j < s.y.count; ++j) {
    u(0, j) = s.phi_L.values[j];
    for (std::size_t i = 1; i + 1 < gx.count; ++i) u(i, j) = s.phi_L.values[j] * W(gx.at(i) + shift);
  }
  BoxProblem p = box_problem(r, b, s, W.speed);
  PinnedReport rep = pinned_solve(p, u, 0.0, pin_y, theta0);
  if (!rep.converged || !(rep.c > 0.0) || rep.c > s.c_star + 0.5)
    fail(ErrorKind::numerical, "increase a",
         "pinned solve failed at a = " + std::to_string(a) + " (c = " + std::to_string(rep.c) + ")");
  PinnedSpeed out;
  out.a = a;
  out.L = s.L;
  out.c_pinned = rep.c;
  out.pin_value = theta0;
  out.residual = rep.pin_residual;
  out.elliptic_residual = rep.residual;
  out.iterations = rep.iterations;
  out.field = std::move(u);
  return out;
}

PinnedSpeed pin_speed(const Reaction& r, const Boundary& b, double L, double a, double theta0, double h) {
  PinOptions o;
  o.theta0 = theta0;
  return pin_speed(strip_setup(r, b, L, h), r, b, a, o);
}

double symmetry_defect(const Field& u) {
  double d = 0.0;
  std::size_t ny = u.ny();
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < u.nx(); ++i) d = std::max(d, std::abs(u(i, j) - u(i, ny - 1 - j)));
  return d;
}

double max_dx(const Field& u) {
  double m = -kInfinity;
  for (std::size_t j = 0; j < u.ny(); ++j)
    for (std::size_t i = 0; i + 1 < u.nx(); ++i) m = std::max(m, u(i + 1, j) - u(i, j));
  return m;
}

double min_dy(const Field& u, double y_max) {
  double m = kInfinity;
  for (std::size_t j = 0; j + 1 < u.ny() && u.y.at(j + 1) <= y_max + 1e-12; ++j)
    for (std::size_t i = 0; i < u.nx(); ++i) m = std::min(m, u(i, j + 1) - u(i, j));
  return m;
}

StripWave strip_wave(const StripSetup& s, const Reaction& r, const Boundary& b, const StripWaveOptions& opt) {
  StripWave w;
  w.c_star = s.c_star;
  w.phi_L = s.phi_L;
  PinOptions po;
  po.theta0 = opt.theta0;
  double a = 2.0 * s.L;
  for (int k = 0; k < opt.boxes; ++k, a *= 2.0) {
    PinnedSpeed ps = pin_speed(s, r, b, a, po);
    bool done = !w.schedule.empty() && std::abs(ps.c_pinned - w.schedule.back().c_pinned) < opt.c_tol;
    if (!w.schedule.empty()) w.schedule.back().field = Field{};
    w.schedule.push_back(std::move(ps));
    if (done) break;
  }
  PinnedSpeed& last = w.schedule.back();
  if (w.schedule.size() > 1 && std::abs(last.c_pinned - w.schedule[w.schedule.size() - 2].c_pinned) >= opt.c_tol)
    fail(ErrorKind::numerical, "box schedule", "c^a did not settle across the box schedule");
  w.c_L = last.c_pinned;
  w.field = last.field;
  const Field& u = w.field;
  double half = 0.5 * last.a;
  for (std::size_t j = 0; j < u.ny(); ++j) {
    double y = u.y.at(j);
    w.left_error = std::max(w.left_error, std::abs(u.sample(-half, y) - s.phi_L.values[j]));
    w.right_sup = std::max(w.right_sup, u.sample(half, y));
  }
  if (w.left_error >= 1e-2)
    fail(ErrorKind::assertion, "left limit", "left column differs from phi_L by " + std::to_string(w.left_error));
  if (w.right_sup >= 1e-2)
    fail(ErrorKind::assertion, "right-limit failure, increase L",
         "right column reaches " + std::to_string(w.right_sup));
  w.symmetry_defect = symmetry_defect(u);
  if (opt.translation_probe) {
    PinOptions third = po;
    third.pin_y = s.L / 3.0;
    w.translation_c = pin_speed(s, r, b, last.a, third).c_pinned;
  }
  return w;
}

StripWave strip_wave(const Reaction& r, const Boundary& b, double L, double h, const StripWaveOptions& opt) {
  return strip_wave(strip_setup(r, b, L, h), r, b, opt);
}

StripWave symmetric_strip_wave(const Reaction& r, double rho, double L, double h, const StripWaveOptions& opt) {
  require(r.kind() == ReactionClass::ignition && rho > 0.0, "symmetric Robin ignition",
          "symmetric strip waves take an ignition reaction and rho > 0");
  Boundary b = Boundary::robin(rho);
  return strip_wave(strip_setup(r, b, L, h, true), r, b, opt);
}

SpeedStudy speed_convergence_study(const Reaction& r, const Boundary& b, const std::vector<double>& Ls, double h) {
  SpeedStudy st;
  for (double L : Ls) {
    StripWave w = strip_wave(r, b, L, h);
    st.rows.push_back({L, w.c_L, w.c_star, std::abs(w.c_L - w.c_star)});
  }
  for (std::size_t k = 1; k < st.rows.size(); ++k)
    if (st.rows[k].gap > st.rows[k - 1].gap) st.gap_nonincreasing = false;
  return st;
}

}  // namespace frontlab
