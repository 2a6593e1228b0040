#include "frontlab/halfwave.hpp"

#include <algorithm>
#include <cmath>

#include "frontlab/box_solver.hpp"
#include "frontlab/error.hpp"
#include "frontlab/parabolic.hpp"
#include "frontlab/shooting.hpp"
#include "frontlab/stripwave.hpp"
#include "frontlab/wave1d.hpp"

namespace frontlab {

namespace {

// Nodes [i0, i1] x [0, j1] of u, with x measured from `x_shift`.
Field window(const Field& u, std::size_t i0, std::size_t i1, std::size_t j1, double x_shift) {
  UniformGrid gx{u.x.at(i0) - x_shift, u.x.spacing, i1 - i0 + 1};
  UniformGrid gy{u.y.origin, u.y.spacing, j1 + 1};
  Field w(gx, gy, 0.0);
  for (std::size_t j = 0; j <= j1; ++j)
    for (std::size_t i = i0; i <= i1; ++i) w(i - i0, j) = u(i, j);
  w.bottom = u.bottom;
  return w;
}

std::size_t nearest(const UniformGrid& g, double v) {
  double s = std::clamp(std::round(g.locate(v)), 0.0, static_cast<double>(g.count - 1));
  return static_cast<std::size_t>(s);
}

Profile column_profile(const Field& u, std::size_t i) { return Profile{u.y, u.column(i), u.bottom}; }

// Fills the measured invariants of a wave cut from `source` (whose interior
// residual field is `res`) on nodes [i0, i1] x [0, j1].
void measure(HalfPlaneWave& w, const Field& res, std::size_t i0, std::size_t i1, std::size_t j1) {
  const Field& u = w.field;
  w.left_profile = column_profile(u, 0);
  w.right_profile = column_profile(u, u.nx() - 1);
  w.residual = 0.0;
  for (std::size_t j = 0; j <= j1; ++j)
    for (std::size_t i = i0; i <= i1; ++i) w.residual = std::max(w.residual, std::abs(res(i, j)));
  w.max_dx = max_dx(u);
  w.min_dy = min_dy(u, u.y.back());
  double half = 0.5 * u.y.back();
  w.left_error = 0.0;
  for (std::size_t j = 0; j < u.ny() && u.y.at(j) <= half + 1e-12; ++j)
    w.left_error = std::max(w.left_error, std::abs(w.left_profile.values[j] - w.phi.values[j]));
  w.right_sup = w.right_profile.max();
  w.interior_min = kInfinity;
  w.interior_max = -kInfinity;
  for (std::size_t j = 1; j + 1 < u.ny(); ++j)
    for (std::size_t i = 1; i + 1 < u.nx(); ++i) {
      w.interior_min = std::min(w.interior_min, u(i, j));
      w.interior_max = std::max(w.interior_max, u(i, j));
    }
}

}  // namespace

std::string HalfPlaneWave::violation(double residual_tol) const {
  if (!(residual < residual_tol)) return "elliptic residual " + std::to_string(residual);
  if (!(max_dx <= 1e-8)) return "d/dx > 0 (" + std::to_string(max_dx) + ")";
  if (!(min_dy >= -1e-8)) return "d/dy < 0 (" + std::to_string(min_dy) + ")";
  if (!(left_error < 2e-2)) return "left limit off phi by " + std::to_string(left_error);
  if (!(right_sup < 2e-2)) return "right limit reaches " + std::to_string(right_sup);
  if (!(interior_min > 0.0 && interior_max < 1.0)) return "interior leaves (0, 1)";
  return "";
}

double window_difference(const Field& a, const Field& b) {
  double d = 0.0;
  for (double y = 0.0; y <= 10.0 + 1e-12; y += 0.25)
    for (double x = -10.0; x <= 10.0 + 1e-12; x += 0.25) d = std::max(d, std::abs(a.sample(x, y) - b.sample(x, y)));
  return d;
}

HalfPlaneWave ignition_bistable_halfplane_wave(const Reaction& r, const Boundary& b, const StripLimitOptions& opt) {
  require(r.kind() != ReactionClass::monostable, "ignition or bistable", "use monostable_halfplane_wave");
  if (r.kind() == ReactionClass::bistable)
    require(b.is_dirichlet(), "bistable needs Dirichlet", "bistable strip limits use a Dirichlet wall");
  require(!opt.L_schedule.empty(), "nonempty schedule", "L schedule is empty");
  bool symmetric = r.kind() == ReactionClass::ignition && b.is_robin();
  double h = opt.h;
  HalfPlaneWave out;
  Field previous;
  for (double L : opt.L_schedule) {
    StripWave sw = symmetric ? symmetric_strip_wave(r, b.rho(), L, h) : strip_wave(r, b, L, h);
    const Field& u = sw.field;
    UniformGrid half_y{0.0, h, static_cast<std::size_t>(std::llround(0.5 * L / h)) + 1};
    Profile phi = reference_steady_state(r, b, half_y);
    double theta1 = 0.5 * phi(1.0);
    std::size_t j_pin = nearest(u.y, 1.0);
    // The row at height 1 decreases in x; locate its theta1 crossing.
    std::size_t i = 0;
    while (i + 1 < u.nx() && u(i + 1, j_pin) >= theta1) ++i;
    if (i + 1 >= u.nx()) fail(ErrorKind::numerical, "pin crossing", "strip wave never drops below theta1 at y = 1");
    double x_L = u.x.at(i) + (u(i, j_pin) - theta1) / (u(i, j_pin) - u(i + 1, j_pin)) * h;
    double X = 0.5 * L;
    std::size_t i0 = nearest(u.x, x_L - X), i1 = nearest(u.x, x_L + X);
    std::size_t j1 = half_y.count - 1;
    HalfPlaneWave w;
    w.field = window(u, i0, i1, j1, x_L);
    w.speed = sw.c_L;
    w.pin_x = 0.0;
    w.pin_y = u.y.at(j_pin);
    w.pin_value = w.field.sample(0.0, w.pin_y);
    w.phi = phi;
    Field res;
    BoxProblem p{r, sw.c_L, b, symmetric ? b.rho() : 0.0, 0.0};
    box_residual(p, u, &res);
    measure(w, res, std::max<std::size_t>(i0, 1), std::min(i1, u.nx() - 2), std::min(j1, u.ny() - 2));
    w.window_deltas = out.window_deltas;
    if (!previous.values.empty()) w.window_deltas.push_back(window_difference(previous, w.field));
    previous = w.field;
    out = std::move(w);
    if (!out.window_deltas.empty() && out.window_deltas.back() < opt.stabilize_tol) break;
  }
  if (opt.require_stable && !out.window_deltas.empty() && !(out.window_deltas.back() < opt.stabilize_tol))
    fail(ErrorKind::numerical, "increase L schedule",
         "recentred strip waves still move by " + std::to_string(out.window_deltas.back()));
  return out;
}

double Subsolution::operator()(double y) const {
  if (y >= ell1) return 1.0;
  return std::sin(std::sqrt(rho) * (std::max(y, 0.0) + ell0));
}

Subsolution subsolution_v(const Reaction& r, const Boundary& b, double h, double Y) {
  require(r.kind() == ReactionClass::monostable, "monostable only", "subsolution_v takes monostable reactions");
  require(!b.is_neumann(), "absorbing wall", "the sine subsolution needs a Robin or Dirichlet wall");
  Subsolution s;
  s.rho = rho_bound(r);
  require(s.rho > 0.0, "rho > 0", "slope bound rho must be positive");
  double q = std::sqrt(s.rho);
  s.ell0 = std::atan(b.rho() * q) / q;
  s.ell1 = M_PI / (2.0 * q) - s.ell0;
  UniformGrid g = UniformGrid::spanning(0.0, Y, h);
  s.v = Profile{g, std::vector<double>(g.count), b};
  for (std::size_t j = 0; j < g.count; ++j) s.v.values[j] = s(g.at(j));
  const auto& v = s.v.values;
  double hh = g.spacing, ghost = b.is_robin() ? 2.0 * hh / b.rho() : 0.0;
  s.discrete_margin = kInfinity;
  for (std::size_t j = b.is_dirichlet() ? 1 : 0; j + 1 < g.count && g.at(j) < s.ell1; ++j) {
    double dn = j > 0 ? v[j - 1] : v[1] - ghost * v[0];
    double m = 0.5 * (v[j + 1] + dn - 2.0 * v[j]) / (hh * hh) + r(0.5 * v[j]);
    s.discrete_margin = std::min(s.discrete_margin, m);
  }
  return s;
}

Supersolution supersolution_psi(const Reaction& r, const Boundary& b, double c, double a, double bheight, double shift,
                                double h) {
  require(r.kind() == ReactionClass::monostable, "monostable only", "supersolution_psi takes monostable reactions");
  const double margin = 10.0;
  UniformGrid gx = UniformGrid::spanning(-a - margin, a + margin, h);
  UniformGrid gy = UniformGrid::spanning(0.0, bheight + margin, h);
  LatticeWave U = lattice_wave(r, c, gx.spacing, gx.origin, gx.count, -shift);
  Field u0(gx, gy, 0.0);
  for (std::size_t j = 0; j < gy.count; ++j)
    for (std::size_t i = 0; i < gx.count; ++i) u0(i, j) = U.values[i];
  EvolutionConfig cfg;
  cfg.T_final = 1.0;
  cfg.snapshot_every = 1.0;
  cfg.bottom = b;
  cfg.c_frame = c;
  cfg.guard = false;
  Evolution2D ev = evolve_halfplane(r, u0, cfg);
  std::size_t i0 = nearest(gx, -a), i1 = nearest(gx, a), j1 = nearest(gy, bheight);
  Supersolution s;
  s.shift = shift;
  s.psi = window(ev.final, i0, i1, j1, 0.0);
  s.psi.bottom = b;
  s.max_dx = max_dx(s.psi);
  s.min_dy = min_dy(s.psi, bheight);
  s.right_sup = 0.0;
  for (std::size_t j = 0; j < s.psi.ny(); ++j) s.right_sup = std::max(s.right_sup, s.psi(s.psi.nx() - 1, j));
  return s;
}

MonostableBox monostable_box_wave(const Reaction& r, const Boundary& b, double c, double a, double bheight,
                                  double shift, double h) {
  Supersolution sup = supersolution_psi(r, b, c, a, bheight, shift, h);
  const Field& psi = sup.psi;
  Subsolution sub = subsolution_v(r, b, h, bheight + h);
  std::size_t nx = psi.nx(), ny = psi.ny();
  std::vector<double> v(ny);
  for (std::size_t j = 0; j < ny; ++j) v[j] = sub(psi.y.at(j));
  MonostableBox box;
  box.shift = shift;
  box.k = 0.5;
  for (std::size_t j = b.is_dirichlet() ? 1 : 0; j + 1 < ny; ++j) box.k = std::min(box.k, psi(nx - 1, j) / v[j]);
  if (!(box.k > 0.0)) fail(ErrorKind::configuration, "ordering at boundary", "k v <= Psi fails on the right edge");
  Field u(psi.x, psi.y, 0.0);
  u.bottom = b;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) u(i, j) = box.k * v[j];
  for (std::size_t j = 0; j < ny; ++j) u(0, j) = psi(0, j);
  for (std::size_t i = 0; i < nx; ++i) {
    double x = psi.x.at(i), wl = (a - x) / (2.0 * a);
    u(i, ny - 1) = wl * psi(i, ny - 1) + (1.0 - wl) * box.k * v[ny - 1];
  }
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      if (u(i, j) > psi(i, j) + 1e-14)
        fail(ErrorKind::configuration, "ordering at boundary", "box data exceeds Psi at a boundary node");
  Field kv = u;
  BoxProblem p{r, c, b, 0.0, 0.0};
  RelaxOptions o;
  o.direction = +1;
  BoxSolveReport rep = solve_box(p, u, o);
  box.relax_violation = rep.relax.monotone_violation;
  box.residual = rep.residual;
  box.sandwich_low = kInfinity;
  box.sandwich_high = -kInfinity;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      box.sandwich_low = std::min(box.sandwich_low, u(i, j) - box.k * v[j]);
      box.sandwich_high = std::max(box.sandwich_high, u(i, j) - psi(i, j));
    }
  box.field = std::move(u);
  box.psi = psi;
  return box;
}

ShiftPick pick_shift(const Reaction& r, const Boundary& b, double c, double a, double bheight, double h) {
  Subsolution sub = subsolution_v(r, b, h, bheight);
  double ell1 = sub.ell1;
  ShiftPick pick;
  auto value = [&](double s, MonostableBox* keep = nullptr) {
    MonostableBox box = monostable_box_wave(r, b, c, a, bheight, s, h);
    double v = box.field.sample(0.0, ell1);
    pick.probes.emplace_back(s, v);
    if (keep) *keep = std::move(box);
    return v;
  };
  double lo = -a, hi = 0.0;
  int k = 0;
  while (!(value(lo) > 0.5)) {
    lo -= a;
    if (++k > 6) fail(ErrorKind::numerical, "enlarge box", "no left shift puts Phi(0, ell1) above 1/2");
  }
  k = 0;
  while (!(value(hi) < 0.5)) {
    hi += 0.25 * a;
    if (++k > 3) fail(ErrorKind::numerical, "enlarge box", "no right shift puts Phi(0, ell1) below 1/2");
  }
  MonostableBox box;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    double v = value(mid, &box);
    pick.shift = mid;
    pick.pin_value = v;
    if (std::abs(v - 0.5) < 1e-5) break;
    if (v > 0.5) lo = mid;
    else hi = mid;
  }
  if (!(std::abs(pick.pin_value - 0.5) < 1e-4))
    fail(ErrorKind::numerical, "enlarge box", "shift bisection stalled at Phi(0, ell1) = " + std::to_string(pick.pin_value));
  pick.box = std::move(box);
  return pick;
}

HalfPlaneWave monostable_halfplane_wave(const Reaction& r, const Boundary& b, double c, const MonostableOptions& opt) {
  require(r.kind() == ReactionClass::monostable, "monostable only", "monostable_halfplane_wave takes monostable reactions");
  try {
    wave_profile_at_speed(r, c);
    lattice_wave(r, c, opt.h, -10.0, 200, 0.0);
  } catch (const Error& e) {
    if (e.invariant() != "no monotone connection") throw;
    fail(ErrorKind::numerical, "no wave at this speed", e.what());
  }
  HalfPlaneWave out;
  Field previous;
  for (auto [a, bh] : opt.box_schedule) {
    ShiftPick pick;
    try {
      pick = pick_shift(r, b, c, a, bh, opt.h);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::numerical) fail(ErrorKind::numerical, "no wave at this speed", e.what());
      throw;
    }
    const Field& u = pick.box.field;
    std::size_t i0 = nearest(u.x, -0.5 * a), i1 = nearest(u.x, 0.5 * a), j1 = nearest(u.y, 0.5 * bh);
    HalfPlaneWave w;
    w.field = window(u, i0, i1, j1, 0.0);
    w.speed = c;
    Subsolution sub = subsolution_v(r, b, opt.h, bh);
    w.pin_x = 0.0;
    w.pin_y = sub.ell1;
    w.pin_value = w.field.sample(0.0, sub.ell1);
    w.phi = reference_steady_state(r, b, w.field.y);
    Field res;
    box_residual(BoxProblem{r, c, b, 0.0, 0.0}, u, &res);
    measure(w, res, i0, i1, j1);
    w.window_deltas = out.window_deltas;
    if (!previous.values.empty()) w.window_deltas.push_back(window_difference(previous, w.field));
    previous = w.field;
    out = std::move(w);
    if (!out.window_deltas.empty() && out.window_deltas.back() < opt.stabilize_tol) break;
  }
  if (!(out.right_sup < 2e-2)) fail(ErrorKind::numerical, "no wave at this speed", "right column fails to decay");
  if (!out.window_deltas.empty() && !(out.window_deltas.back() < opt.stabilize_tol))
    fail(ErrorKind::numerical, "enlarge box", "box waves still move by " + std::to_string(out.window_deltas.back()));
  return out;
}

}  // namespace frontlab
