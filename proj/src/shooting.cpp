#include "frontlab/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "frontlab/error.hpp"

namespace frontlab {

namespace {

struct State {
  double y, u, p;
};

State rk4(const Reaction& r, const State& s, double h) {
  double k1u = s.p, k1p = -r(s.u);
  double k2u = s.p + 0.5 * h * k1p, k2p = -r(s.u + 0.5 * h * k1u);
  double k3u = s.p + 0.5 * h * k2p, k3p = -r(s.u + 0.5 * h * k2u);
  double k4u = s.p + h * k3p, k4p = -r(s.u + h * k3u);
  return {s.y + h, s.u + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u), s.p + h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)};
}

// Shrinks the step from `from` until the sign change of g is bracketed to
// 1e-10 and returns the state just past it.
template <class G>
State localize(const Reaction& r, const State& from, double h, const G& g) {
  double lo = 0.0, hi = h;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (g(rk4(r, from, mid)) > 0.0) lo = mid;
    else hi = mid;
  }
  double mid = 0.5 * (lo + hi);
  return rk4(r, from, mid);
}

void check_boundary(const Boundary& b) {
  require(!b.is_neumann(), "dirichlet or robin", "steady-state shooting needs a Dirichlet or Robin wall");
}

}  // namespace

std::string to_string(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::exits_above_one: return "exits_above_one";
    case TrajectoryClass::returns_to_boundary: return "returns_to_boundary";
    case TrajectoryClass::asymptotic_to_one: return "asymptotic_to_one";
    case TrajectoryClass::degenerate_zero: return "degenerate_zero";
  }
  return "unknown";
}

ShootingOutcome shoot(const Reaction& r, const Boundary& b, double alpha, double h, const ShootOptions& opt) {
  check_boundary(b);
  require(h > 0.0 && h <= 1e-2, "h in (0, 1e-2]", "shooting step must lie in (0, 1e-2]");
  ShootingOutcome out;
  out.alpha = alpha;
  out.start_value = b.rho() * alpha;
  if (!(alpha > 0.0)) {
    out.classification = TrajectoryClass::degenerate_zero;
    out.s_max = std::max(out.start_value, 0.0);
    if (opt.record) {
      out.y = {0.0};
      out.phi = {out.start_value};
      out.dphi = {alpha};
    }
    return out;
  }

  State s{0.0, out.start_value, alpha};
  auto push = [&](const State& st) {
    if (!opt.record) return;
    out.y.push_back(st.y);
    out.phi.push_back(st.u);
    out.dphi.push_back(st.p);
  };
  push(s);
  bool rising = true;
  bool done = false;
  while (s.y < opt.y_max) {
    State n = rk4(r, s, h);
    if (rising) {
      if (n.u >= 1.0 && n.p > 0.0) {
        State e = localize(r, s, h, [](const State& st) { return 1.0 - st.u; });
        out.s_max = e.u;
        out.classification = TrajectoryClass::exits_above_one;
        push(e);
        done = true;
        break;
      }
      if (n.p <= 0.0) {
        State e = localize(r, s, h, [](const State& st) { return st.p; });
        out.K = e.y;
        out.s_max = e.u;
        rising = false;
      }
    } else if (n.u <= 0.0) {
      State e = localize(r, s, h, [](const State& st) { return st.u; });
      out.L_return = e.y;
      out.classification = TrajectoryClass::returns_to_boundary;
      push(e);
      done = true;
      break;
    }
    s = n;
    push(s);
  }
  if (!done) {
    out.classification = TrajectoryClass::asymptotic_to_one;
    if (rising) out.s_max = s.u;
  }
  return out;
}

double first_integral_residual(const ShootingOutcome& out, const Reaction& r) {
  double worst = 0.0;
  for (std::size_t i = 0; i < out.y.size(); ++i) {
    if (out.y[i] > out.K) break;
    double p = out.dphi[i];
    double res = p * p - out.alpha * out.alpha + 2.0 * r.integral(out.start_value, out.phi[i]);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double lambda_function(const Reaction& r, double s) {
  require(s > 0.0, "s > 0", "Lambda is defined for s > 0");
  return 2.0 / (s * s) * r.integral(s, 1.0);
}

namespace {

double robin_boundary_value(const Reaction& r, double rho) {
  double target = 1.0 / (rho * rho);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    if (lambda_function(r, mid) > target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double critical_slope(const Reaction& r, const Boundary& b) {
  check_boundary(b);
  if (b.is_dirichlet()) {
    double mass = r.integral(0.0, 1.0);
    require(mass > 0.0, "violates (B3)", "no half-line state when int_0^1 f <= 0");
    return std::sqrt(2.0 * mass);
  }
  if (r.kind() == ReactionClass::bistable)
    fail(ErrorKind::invalid_argument, "bistable robin excluded",
         "Robin walls with bistable reactions may admit oscillatory solutions");
  return robin_boundary_value(r, b.rho()) / b.rho();
}

double critical_boundary_value(const Reaction& r, const Boundary& b) {
  if (b.is_dirichlet()) return 0.0;
  check_boundary(b);
  return b.rho() * critical_slope(r, b);
}

Profile halfline_steady_state(const Reaction& r, const Boundary& b, double Y, double h) {
  double u0 = critical_boundary_value(r, b);
  critical_slope(r, b);
  UniformGrid g = UniformGrid::spanning(0.0, Y, h);
  Profile p{g, std::vector<double>(g.count), b};
  // The saturating orbit obeys phi' = sqrt(2 int_phi^1 f), which is stable
  // in the forward direction, unlike the second-order shot at alpha_bar.
  auto rate = [&](double u) { return std::sqrt(std::max(0.0, 2.0 * r.integral(std::min(u, 1.0), 1.0))); };
  double u = u0, dy = g.spacing;
  p.values[0] = u;
  for (std::size_t i = 1; i < g.count; ++i) {
    double k1 = rate(u), k2 = rate(u + 0.5 * dy * k1), k3 = rate(u + 0.5 * dy * k2), k4 = rate(u + dy * k3);
    u = std::min(1.0, u + dy / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4));
    p.values[i] = u;
  }
  if (!(p.values.back() > 1.0 - 1e-3))
    fail(ErrorKind::invalid_argument, "extend domain", "half-line state has not saturated at y = Y");
  return p;
}

double turning_value(const Reaction& r, const Boundary& b, double alpha) {
  double abar = critical_slope(r, b);
  require(alpha > 0.0 && alpha < abar, "0 < alpha < alpha_bar", "length map needs alpha in (0, alpha_bar)");
  double s0 = b.rho() * alpha;
  auto g = [&](double s) { return alpha * alpha - 2.0 * r.integral(s0, s); };
  double lo = s0, hi = s0;
  const double step = 1e-3;
  while (true) {
    hi = std::min(1.0, lo + step);
    if (g(hi) <= 0.0) break;
    if (hi >= 1.0) fail(ErrorKind::numerical, "turning value", "no turning point below 1");
    lo = hi;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double turning_length_integral(const Reaction& r, const Boundary& b, double alpha) {
  using boost::math::quadrature::gauss_kronrod;
  double s_star = turning_value(r, b, alpha);
  double s0 = b.rho() * alpha;
  double eps0 = std::min(1e-4, 0.5 * (s_star - s0));
  auto integrand = [&](double s) { return 1.0 / std::sqrt(2.0 * r.integral(s, s_star)); };

  std::vector<double> cuts{s0};
  for (double k : r.kinks())
    if (k > s0 && k < s_star - eps0) cuts.push_back(k);
  cuts.push_back(s_star - eps0);
  double regular = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    regular += gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 20, 1e-13);

  // alpha^2 - 2 F(s* - z) = A z - B z^2 + O(z^3); the square-root weight
  // over [0, eps0] is integrated in closed form.
  double A = 2.0 * r(s_star), B = r.derivative(s_star);
  double e = eps0, tail;
  if (std::abs(B) * e < 1e-12 * A) {
    tail = 2.0 * std::sqrt(e / A);
  } else if (B > 0.0) {
    tail = (std::asin(std::clamp(2.0 * B * e / A - 1.0, -1.0, 1.0)) + 0.5 * M_PI) / std::sqrt(B);
  } else {
    double c = -B;
    tail = std::log((2.0 * std::sqrt(c * (A * e + c * e * e)) + 2.0 * c * e + A) / A) / std::sqrt(c);
  }
  return regular + tail;
}

LengthMapEntry length_map(const Reaction& r, const Boundary& b, double alpha, double h) {
  LengthMapEntry e;
  e.alpha = alpha;
  e.K_integral = turning_length_integral(r, b, alpha);
  ShootOptions opt;
  opt.y_max = std::max(5000.0, 4.0 * e.K_integral + 100.0);
  ShootingOutcome out = shoot(r, b, alpha, h, opt);
  e.s_max = out.s_max;
  e.K = out.K;
  e.L_return = out.L_return;
  e.classification = out.classification;
  return e;
}

namespace {

// Trajectory started at the turning point (s_max, 0) and followed down.
// By reversibility it describes both halves of an interval state: the wall
// side ends where phi = rho |phi'|, the top side where phi = 0.
struct TopDescent {
  double K_bottom = kInfinity;
  double K_top = kInfinity;
  double alpha = 0.0;
  bool wall_missed = false;
  double length() const { return K_bottom + K_top; }
};

TopDescent descend_from_turn(const Reaction& r, double rho, double s_max, double h, double y_max) {
  TopDescent d;
  State s{0.0, s_max, 0.0};
  auto wall = [rho](const State& st) { return st.u + rho * st.p; };
  while (s.y < y_max) {
    State n = rk4(r, s, h);
    if (d.K_bottom == kInfinity && wall(n) <= 0.0) {
      State e = localize(r, s, h, wall);
      d.K_bottom = e.y;
      d.alpha = -e.p;
    }
    if (n.u <= 0.0) {
      State e = localize(r, s, h, [](const State& st) { return st.u; });
      d.K_top = e.y;
      if (d.K_bottom == kInfinity) {
        d.wall_missed = true;
        d.K_bottom = e.y;
        d.alpha = -e.p;
      }
      return d;
    }
    if (n.p >= 0.0 && s.y > 0.0) return TopDescent{};
    s = n;
  }
  return TopDescent{};
}

// Samples the descent at distances first, first + h, ... (count nodes).
std::vector<double> descent_samples(const Reaction& r, double s_max, double first, double h, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  State s{0.0, s_max, 0.0};
  if (count == 0) return out;
  if (first > 0.0) s = rk4(r, s, first);
  out.push_back(s.u);
  while (out.size() < count) {
    s = rk4(r, s, h);
    out.push_back(s.u);
  }
  return out;
}

struct TurnSearch {
  const Reaction& r;
  double rho;
  double h;
  double lo;  // vartheta: descents from below it never reach zero
  bool symmetric = false;
  double length(double s) const {
    TopDescent d = descend_from_turn(r, rho, s, h, 1e5);
    if (!symmetric) return d.length();
    return d.wall_missed ? kInfinity : 2.0 * d.K_bottom;
  }
};

std::pair<double, double> minimal_turn(const TurnSearch& ts, double tol) {
  const int n = 40;
  double span = 1.0 - ts.lo;
  int best = 1;
  double best_L = kInfinity;
  for (int k = 1; k < n; ++k) {
    double Lk = ts.length(ts.lo + span * k / n);
    if (Lk < best_L) best_L = Lk, best = k;
  }
  double lo = ts.lo + span * (best - 1) / n, hi = ts.lo + span * (best + 1) / n;
  if (best == 1) lo = ts.lo + span * 0.5 / n;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = ts.length(x1), f2 = ts.length(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = ts.length(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = ts.length(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

Profile strip_profile(const Reaction& r, const Boundary& b, double s_max, const TopDescent& d, double L,
                      double h, bool symmetric) {
  auto cells = static_cast<std::size_t>(std::max<long long>(2, std::llround(L / h)));
  double hh = L / static_cast<double>(cells);
  std::size_t sub = 1;
  while (hh / static_cast<double>(sub) > 1e-2) ++sub;
  Profile p{UniformGrid{0.0, hh, cells + 1}, std::vector<double>(cells + 1, 0.0), b};
  // Nodes at or below the turning point sit at distances frac + k hh from it.
  auto m = static_cast<std::size_t>(std::min(std::floor(d.K_bottom / hh), static_cast<double>(cells)));
  double frac = d.K_bottom - static_cast<double>(m) * hh;
  auto sample = [&](double first, std::size_t count) {
    std::vector<double> fine = descent_samples(r, s_max, first, hh / static_cast<double>(sub), (count - 1) * sub + 1);
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = fine[k * sub];
    return v;
  };
  std::vector<double> down = sample(frac, m + 1);
  for (std::size_t k = 0; k <= m; ++k) p.values[m - k] = down[k];
  if (m < cells) {
    std::vector<double> up = sample(hh - frac, cells - m);
    for (std::size_t k = 0; k + m + 1 <= cells; ++k) p.values[m + 1 + k] = up[k];
  }
  if (!symmetric) p.values[cells] = 0.0;
  else
    for (std::size_t k = 0; 2 * k < cells; ++k) p.values[cells - k] = p.values[k];
  return p;
}

}  // namespace

double return_length_at_turn(const Reaction& r, const Boundary& b, double s_star, double h) {
  require(s_star > 0.0 && s_star < 1.0, "s* in (0, 1)", "turning value must lie in (0, 1)");
  return descend_from_turn(r, b.rho(), s_star, h, 1e5).length();
}

std::pair<double, double> minimal_return_length(const Reaction& r, const Boundary& b, double h, double tol) {
  critical_slope(r, b);
  TurnSearch ts{r, b.rho(), h, vartheta(r)};
  auto [s_mid, L_min] = minimal_turn(ts, tol);
  return {descend_from_turn(r, b.rho(), s_mid, h, 1e5).alpha, L_min};
}

StripStateReport strip_steady_states(const Reaction& r, const Boundary& b, double L, const StripStateOptions& opt) {
  require(r.kind() != ReactionClass::monostable, "ignition or bistable",
          "strip steady states are classified for ignition and bistable reactions");
  critical_slope(r, b);
  if (opt.symmetric)
    require(r.kind() == ReactionClass::ignition && b.is_robin(), "symmetric Robin ignition",
            "symmetric interval states take an ignition reaction and rho > 0");
  TurnSearch ts{r, b.rho(), opt.h, vartheta(r), opt.symmetric};
  auto [s_mid, L_min] = minimal_turn(ts, opt.alpha_tol);
  if (!(L > L_min)) {
    fail(ErrorKind::invalid_argument, "no nonzero interval states at this L",
         "L = " + std::to_string(L) + " is below the minimal return length " + std::to_string(L_min));
  }

  // Each branch of s -> L is monotone; bracket L, then bisect.
  auto solve = [&](double inner, double outer) {
    double lo = inner, hi = outer;
    for (int it = 0; it < 200 && lo != hi; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      double Lm = ts.length(mid);
      if (std::abs(Lm - L) < 1e-11) return mid;
      if (Lm < L) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  double s_lo = s_mid, s_hi = s_mid;
  for (int k = 1; k < 200 && !(ts.length(s_lo) > L); ++k) s_lo = ts.lo + (s_mid - ts.lo) * std::ldexp(1.0, -k);
  for (int k = 1; k < 60 && !(ts.length(s_hi) > L); ++k) s_hi = 1.0 - (1.0 - s_mid) * std::ldexp(1.0, -k);
  if (!(ts.length(s_hi) > L))
    fail(ErrorKind::numerical, "strip length out of reach",
         "the upper branch cannot reach L = " + std::to_string(L) + " in double precision");

  StripStateReport rep;
  rep.L = L;
  rep.A_ODE_estimate = L_min;
  double s_psi = solve(s_mid, s_lo);
  double s_phi = solve(s_mid, s_hi);
  TopDescent d_psi = descend_from_turn(r, b.rho(), s_psi, opt.h, 1e5);
  TopDescent d_phi = descend_from_turn(r, b.rho(), s_phi, opt.h, 1e5);
  if (opt.symmetric) {
    d_psi.K_top = d_psi.K_bottom;
    d_phi.K_top = d_phi.K_bottom;
  }
  rep.alpha_mid = descend_from_turn(r, b.rho(), s_mid, opt.h, 1e5).alpha;
  rep.alpha_psi = d_psi.alpha;
  rep.alpha_phi = d_phi.alpha;
  rep.psi_L = strip_profile(r, b, s_psi, d_psi, L, opt.h, opt.symmetric);
  rep.phi_L = strip_profile(r, b, s_phi, d_phi, L, opt.h, opt.symmetric);
  for (std::size_t k = opt.symmetric ? 0 : 1; k + (opt.symmetric ? 0 : 1) < rep.phi_L.values.size(); ++k) {
    if (!(rep.psi_L.values[k] < rep.phi_L.values[k]))
      fail(ErrorKind::assertion, "strict ordering", "psi_L >= phi_L at y = " + std::to_string(rep.phi_L.grid.at(k)));
  }
  rep.energy_phi = energy(rep.phi_L, r);
  rep.energy_psi = energy(rep.psi_L, r);
  return rep;
}

double energy(const Profile& p, const Reaction& r) {
  const auto& v = p.values;
  std::size_t n = v.size();
  if (n < 3) return 0.0;
  double h = p.grid.spacing;
  auto d = [&](std::size_t i) {
    if (i == 0) return (-3 * v[0] + 4 * v[1] - v[2]) / (2 * h);
    if (i == n - 1) return (3 * v[n - 1] - 4 * v[n - 2] + v[n - 3]) / (2 * h);
    return (v[i + 1] - v[i - 1]) / (2 * h);
  };
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dv = d(i);
    double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += w * (dv * dv - 2.0 * r.antiderivative(v[i]));
  }
  return acc * h;
}

namespace {

struct Descent {
  bool reached_zero = false;
  double K0 = 0.0;
  std::vector<double> samples;
};

// v'' + (c + 1/(R0 + t)) v' + f(v) = 0 from (top, 0), sampled every h.
Descent descend(const Reaction& r, double top, double R0, double c, double h, bool record) {
  auto rhs = [&](double t, double v, double p) { return -(c + 1.0 / (R0 + t)) * p - r(v); };
  auto step = [&](double t, double v, double p, double dt, double& vn, double& pn) {
    double k1v = p, k1p = rhs(t, v, p);
    double k2v = p + 0.5 * dt * k1p, k2p = rhs(t + 0.5 * dt, v + 0.5 * dt * k1v, p + 0.5 * dt * k1p);
    double k3v = p + 0.5 * dt * k2p, k3p = rhs(t + 0.5 * dt, v + 0.5 * dt * k2v, p + 0.5 * dt * k2p);
    double k4v = p + dt * k3p, k4p = rhs(t + dt, v + dt * k3v, p + dt * k3p);
    vn = v + dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    pn = p + dt / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
  };
  Descent d;
  double v = top, p = 0.0;
  if (record) d.samples.push_back(v);
  const long long budget = static_cast<long long>(1e7);
  for (long long k = 0; k < budget; ++k) {
    double t = static_cast<double>(k) * h, vn, pn;
    step(t, v, p, h, vn, pn);
    if (vn <= 0.0) {
      double lo = 0.0, hi = h;
      while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi), vm, pm;
        step(t, v, p, mid, vm, pm);
        if (vm > 0.0) lo = mid;
        else hi = mid;
      }
      d.reached_zero = true;
      d.K0 = t + 0.5 * (lo + hi);
      return d;
    }
    if (k > 0 && pn >= 0.0) return d;
    v = vn;
    p = pn;
    if (record) d.samples.push_back(v);
  }
  return d;
}

}  // namespace

double RadialSubsolution::min_residual(const Reaction& r) const {
  const auto& v = profile.values;
  double h = profile.grid.spacing;
  auto n0 = static_cast<std::size_t>(std::llround(R0 / h));
  auto n1 = static_cast<std::size_t>(std::floor((R0 + K0) / h));
  double worst = kInfinity;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    bool near_joint = (i + 2 >= n0 && i <= n0 + 2) || (i + 2 >= n1 && i <= n1 + 2);
    if (near_joint) continue;
    double rr = profile.grid.at(i);
    double d2 = (v[i + 1] - 2 * v[i] + v[i - 1]) / (h * h);
    double d1 = (v[i + 1] - v[i - 1]) / (2 * h);
    worst = std::min(worst, d2 + (1.0 / rr + c_drift) * d1 + r(v[i]));
  }
  return worst;
}

RadialSubsolution radial_subsolution(const Reaction& r, double delta, double c_drift, double h) {
  require(r.kind() != ReactionClass::monostable, "ignition or bistable",
          "radial subsolutions are built for ignition and bistable reactions");
  require(c_drift >= 0.0, "c_drift >= 0", "drift must be nonnegative");
  double vt = vartheta(r);
  require(delta > 0.0 && delta < 1.0 - vt, "0 < delta < 1 - vartheta", "plateau must lie in (vartheta, 1)");
  double top = vt + delta;

  long long n0 = std::max<long long>(1, std::llround(1.0 / h));
  Descent d;
  double step = h;
  for (;; n0 *= 2) {
    if (static_cast<double>(n0) * step > 1e5)
      fail(ErrorKind::numerical, "no subsolution at this (delta, c_drift)",
           "descending branch never reaches zero; the drift is too large for this plateau");
    d = descend(r, top, static_cast<double>(n0) * step, c_drift, step, false);
    if (d.reached_zero) break;
  }
  double R0 = static_cast<double>(n0) * step;
  // Very wide plateaus are resampled coarsely to bound memory.
  if ((R0 + d.K0) / step > 2e6) {
    double coarse = (R0 + d.K0) / 2e6;
    n0 = std::llround(R0 / coarse);
    step = R0 / static_cast<double>(n0);
    d = descend(r, top, R0, c_drift, step, false);
    if (!d.reached_zero)
      fail(ErrorKind::numerical, "no subsolution at this (delta, c_drift)", "coarse resampling lost the zero");
  }
  Descent rec = descend(r, top, R0, c_drift, step, true);

  RadialSubsolution out;
  out.R0 = R0;
  out.K0 = rec.K0;
  out.plateau = top;
  out.c_drift = c_drift;
  auto total = static_cast<std::size_t>(n0) + rec.samples.size() + 10;
  out.profile = Profile{UniformGrid{0.0, step, total}, std::vector<double>(total, 0.0), std::nullopt};
  for (long long i = 0; i <= n0; ++i) out.profile.values[static_cast<std::size_t>(i)] = top;
  for (std::size_t k = 0; k < rec.samples.size(); ++k)
    out.profile.values[static_cast<std::size_t>(n0) + k] = rec.samples[k];
  return out;
}

}  // namespace frontlab
