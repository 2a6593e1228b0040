#include "frontlab/wave1d.hpp"

#include <algorithm>
#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/parabolic.hpp"

namespace frontlab {

namespace {

constexpr double kSeed = 1e-6;
constexpr double kStep = 1e-3;
constexpr double kBudget = 4000.0;

struct PhaseState {
  double U, V;
};

PhaseState rk4(const Reaction& r, double c, const PhaseState& s, double h) {
  auto fu = [](const PhaseState& p) { return p.V; };
  auto fv = [&](const PhaseState& p) { return -c * p.V - r(p.U); };
  PhaseState k1{fu(s), fv(s)};
  PhaseState a{s.U + 0.5 * h * k1.U, s.V + 0.5 * h * k1.V};
  PhaseState k2{fu(a), fv(a)};
  PhaseState b{s.U + 0.5 * h * k2.U, s.V + 0.5 * h * k2.V};
  PhaseState k3{fu(b), fv(b)};
  PhaseState e{s.U + h * k3.U, s.V + h * k3.V};
  PhaseState k4{fu(e), fv(e)};
  return {s.U + h / 6.0 * (k1.U + 2 * k2.U + 2 * k3.U + k4.U), s.V + h / 6.0 * (k1.V + 2 * k2.V + 2 * k3.V + k4.V)};
}

double unstable_rate(const Reaction& r, double c) {
  return 0.5 * (-c + std::sqrt(c * c - 4.0 * r.right_slope()));
}

PhaseState seed(const Reaction& r, double c) { return {1.0 - kSeed, -unstable_rate(r, c) * kSeed}; }

struct Trajectory {
  PhaseOutcome outcome = PhaseOutcome::connects;
  std::vector<double> U;  // every kStep
};

// Follows the unstable manifold of (1, 0) until it over- or undershoots
// the lower state.
Trajectory follow(const Reaction& r, double c, bool record, double stop_above = -1.0) {
  Trajectory tr;
  double lower = r.lower_state();
  bool ignition = r.kind() == ReactionClass::ignition;
  PhaseState s = seed(r, c);
  if (record) tr.U.push_back(s.U);
  for (double xi = 0.0; xi < kBudget; xi += kStep) {
    s = rk4(r, c, s, kStep);
    if (record) tr.U.push_back(s.U);
    if (s.U < lower - 1e-9 && s.V < 0.0) {
      tr.outcome = PhaseOutcome::overshoot;
      return tr;
    }
    if (s.V >= 0.0 && s.U > lower) {
      tr.outcome = PhaseOutcome::undershoot;
      return tr;
    }
    if (record && s.U - lower < stop_above) return tr;
    // Captured by an interior node (theta is one when c^2 > 4 f'(theta)).
    if (!record && s.U > lower + 1e-6 && std::abs(s.V) < 1e-13 && std::abs(r(s.U)) < 1e-11) {
      tr.outcome = PhaseOutcome::undershoot;
      return tr;
    }
    // Below theta an ignition reaction vanishes and U' + cU is conserved.
    if (ignition && s.U < r.theta() && !record) {
      if (c <= 0.0) {
        tr.outcome = PhaseOutcome::overshoot;
        return tr;
      }
      double limit = s.U + s.V / c;
      tr.outcome = limit < lower ? PhaseOutcome::overshoot : PhaseOutcome::undershoot;
      return tr;
    }
  }
  return tr;
}

// Samples every `stride` steps, normalised so that U(0) = 1/2.
Wave1D assemble(const Reaction& r, double c, const std::vector<double>& U, int stride, double right_rate) {
  Wave1D w;
  w.speed = c;
  w.right_value = r.lower_state();
  w.left_value = 1.0;
  w.left_rate = unstable_rate(r, c);
  w.right_rate = right_rate;
  std::size_t cross = 0;
  while (cross + 1 < U.size() && U[cross + 1] > 0.5) ++cross;
  double frac = (U[cross] - 0.5) / (U[cross] - U[cross + 1]);
  double xi_half = (static_cast<double>(cross) + frac) * kStep;
  std::size_t n = (U.size() - 1) / static_cast<std::size_t>(stride) + 1;
  w.profile.grid = UniformGrid{-xi_half, kStep * stride, n};
  w.profile.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) w.profile.values[i] = U[i * static_cast<std::size_t>(stride)];
  return w;
}

}  // namespace

double Wave1D::operator()(double xi) const {
  if (xi < profile.grid.origin)
    return left_value - (left_value - profile.front()) * std::exp(left_rate * (xi - profile.grid.origin));
  if (xi > profile.grid.back())
    return right_value + (profile.back() - right_value) * std::exp(-right_rate * (xi - profile.grid.back()));
  return profile(xi);
}

std::string to_string(PhaseOutcome o) {
  switch (o) {
    case PhaseOutcome::overshoot: return "overshoot";
    case PhaseOutcome::undershoot: return "undershoot";
    case PhaseOutcome::connects: return "connects";
  }
  return "unknown";
}

PhaseOutcome classify_speed(const Reaction& r, double c) { return follow(r, c, false).outcome; }

SpeedSearch bistable_ignition_speed(const Reaction& r, double tol) {
  if (r.kind() == ReactionClass::monostable)
    fail(ErrorKind::invalid_argument, "ignition or bistable", "use minimal_speed_monostable for monostable reactions");
  SpeedSearch out;
  double lo = 0.0, hi = 2.0 * std::sqrt(r.max_slope());
  auto probe = [&](double c) {
    PhaseOutcome o = classify_speed(r, c);
    out.history.push_back({c, o});
    return o;
  };
  if (probe(lo) != PhaseOutcome::overshoot)
    fail(ErrorKind::numerical, "speed bracket", "trajectory does not overshoot at c = 0");
  int widen = 0;
  while (probe(hi) != PhaseOutcome::undershoot) {
    if (++widen > 6) fail(ErrorKind::numerical, "speed bracket", "no undershoot found while widening c_hi");
    hi *= 2.0;
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (probe(mid) == PhaseOutcome::overshoot) lo = mid;
    else hi = mid;
  }
  double c = 0.5 * (lo + hi);
  double lower = r.lower_state();
  double right_rate = c;
  if (r.kind() == ReactionClass::bistable)
    right_rate = 0.5 * (c + std::sqrt(c * c - 4.0 * r.left_slope()));
  Trajectory tr = follow(r, lo, true, 1e-4);
  // Near the lower state the shot at lo drifts off the connection; cut it
  // where U - lower first falls below 1e-4 and continue with the tail.
  std::size_t keep = tr.U.size();
  for (std::size_t i = 0; i < tr.U.size(); ++i)
    if (tr.U[i] - lower < 1e-4) {
      keep = i + 1;
      break;
    }
  tr.U.resize(keep);
  out.wave = assemble(r, c, tr.U, 5, right_rate);
  return out;
}

Wave1D wave_speed_bistable_ignition(const Reaction& r) { return bistable_ignition_speed(r).wave; }

Wave1D wave_profile_at_speed(const Reaction& r, double c) {
  require(r.kind() == ReactionClass::monostable, "monostable only", "wave_profile_at_speed takes monostable reactions");
  require(c > 0.0, "c > 0", "speed must be positive");
  PhaseState s = seed(r, c);
  std::vector<double> U{s.U};
  for (double xi = 0.0; xi < kBudget; xi += kStep) {
    s = rk4(r, c, s, kStep);
    if (s.U < -1e-9 || (s.V >= 0.0 && s.U < 1.0 - kSeed))
      fail(ErrorKind::invalid_argument, "no monotone connection",
           "trajectory from (1,0) leaves the strip 0 < U < 1 at c = " + std::to_string(c));
    U.push_back(s.U);
    if (s.U < 1e-8) break;
  }
  double disc = c * c - 4.0 * r.left_slope();
  double rate = disc >= 0.0 ? 0.5 * (c - std::sqrt(disc)) : 0.5 * c;
  return assemble(r, c, U, 5, rate);
}

MonostableSpeed minimal_speed_monostable(const Reaction& r, double h, double T) {
  require(r.kind() == ReactionClass::monostable, "monostable only", "minimal_speed_monostable takes monostable reactions");
  LineFrontOptions opt;
  opt.h = h;
  opt.T = T;
  opt.cadence = 0.5;
  FrontTrace tr = front_speed_1d(r, opt);
  MonostableSpeed out;
  out.measured = tr.fit_speed;
  out.linear_bound = 2.0 * std::sqrt(r.left_slope());
  out.below_linear = out.measured < out.linear_bound * 0.98;
  for (double start : {0.3, 0.5, 0.7})
    out.window_speeds.push_back(fit_slope(tr.t, tr.radius, start * T, (start + 0.3) * T));
  return out;
}

Reaction epsilon_modify(const Reaction& r, double eps) {
  require(eps >= 0.0, "eps >= 0", "epsilon must be nonnegative");
  if (eps == 0.0) return r;
  return Reaction::epsilon_modified(r, eps);
}

double LatticeWave::operator()(double xi) const {
  double s = (xi - origin) / h;
  if (s <= 0.0) return values.front();
  double last = static_cast<double>(values.size() - 1);
  if (s >= last) return values.back();
  auto i = static_cast<std::size_t>(s);
  double w = s - static_cast<double>(i);
  return (1.0 - w) * values[i] + w * values[i + 1];
}

LatticeWave lattice_wave(const Reaction& r, double c, double h, double xi_min, std::size_t count, double shift) {
  require(count >= 3 && h > 0.0, "lattice size", "lattice wave needs at least 3 nodes");
  require(c * h < 2.0, "cell Peclet < 1", "centered advection needs |c| h / 2 < 1");
  double A = 1.0 / (h * h) + c / (2.0 * h), B = 1.0 / (h * h) - c / (2.0 * h);
  double kappa = -r.right_slope();
  double p = 2.0 / (h * h) + kappa;
  double z = (p + std::sqrt(p * p - 4.0 * A * B)) / (2.0 * A);
  LatticeWave w{c, h, xi_min, std::vector<double>(count)};
  auto seed_at = [&](double xi) { return 1.0 - 0.5 * std::pow(z, (xi - shift) / h); };
  // Far left, 1 - U is below round-off; use the linear tail up to 1 - U ~ 1e-8.
  double xi_seed = shift + h * std::log(2e-8) / std::log(z);
  auto start = static_cast<std::size_t>(std::clamp(std::floor((xi_seed - xi_min) / h), 0.0, static_cast<double>(count - 2)));
  for (std::size_t i = 0; i <= start + 1; ++i) w.values[i] = seed_at(xi_min + h * static_cast<double>(i));
  if (!(w.values[start] > 0.5))
    fail(ErrorKind::invalid_argument, "lattice seed", "shift too far left for the lattice window");
  for (std::size_t i = start + 1; i + 1 < count; ++i) {
    double u = w.values[i];
    double next = (2.0 / (h * h) * u - r(u) - B * w.values[i - 1]) / A;
    if (next < -1e-12 || next > u)
      fail(ErrorKind::invalid_argument, "no monotone connection",
           "lattice wave at c = " + std::to_string(c) + " is not monotone");
    w.values[i + 1] = std::max(next, 0.0);
  }
  return w;
}

}  // namespace frontlab
