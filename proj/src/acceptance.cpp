#include "frontlab/acceptance.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frontlab/config.hpp"
#include "frontlab/error.hpp"
#include "frontlab/experiments.hpp"
#include "frontlab/halfwave.hpp"
#include "frontlab/io.hpp"
#include "frontlab/parabolic.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/shooting.hpp"
#include "frontlab/stripwave.hpp"
#include "frontlab/wave1d.hpp"

namespace fs = std::filesystem;

namespace frontlab {

namespace {

using boost::math::quadrature::gauss_kronrod;

std::string num(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double quad(const Reaction& r, double a, double b) {
  return gauss_kronrod<double, 61>::integrate([&](double s) { return r(s); }, a, b, 15, 1e-15);
}

struct Builder {
  AcceptanceRow row;
  std::ostringstream measured;
  bool ok = true;

  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (measured.tellp() > 0) measured << "; ";
    measured << what << (cond ? "" : " (x)");
  }
};

// ---- rows ----

void row_slope(Builder& b) {
  Reaction r = Reaction::cubic_bistable(0.25);
  double F1 = quad(r, 0.0, 1.0);
  double slope = critical_slope(r, Boundary::dirichlet());
  double err = std::abs(slope - std::sqrt(2.0 * F1));
  b.check(err < 1e-8, "|phi'(0) - sqrt(2F(1))| = " + num(err, 3));
  Profile phi = halfline_steady_state(r, Boundary::dirichlet(), 40.0);
  bool rising = true;
  for (std::size_t k = 0; k + 1 < phi.values.size(); ++k) rising = rising && phi.values[k + 1] >= phi.values[k];
  b.check(rising && phi.back() > 1.0 - 1e-3 && phi.max() <= 1.0, "phi increasing to " + num(phi.back(), 8));
  b.row.tolerance = "1e-8";
}

void row_robin(Builder& b) {
  Reaction r = Reaction::ignition(0.3);
  double worst = 0.0;
  for (double rho : {0.5, 1.0, 2.0}) {
    double s0 = critical_boundary_value(r, Boundary::robin(rho));
    double lam = 2.0 / (s0 * s0) * quad(r, s0, 1.0);
    worst = std::max(worst, std::abs(lam - 1.0 / (rho * rho)));
  }
  b.check(worst < 1e-8, "max |Lambda(phi(0)) - rho^-2| = " + num(worst, 3));
  b.row.tolerance = "1e-8";
}

void row_two_states(Builder& b) {
  Reaction r = Reaction::ignition(0.3);
  Boundary d = Boundary::dirichlet();
  double vt = vartheta(r);
  std::vector<double> s;
  for (double q = 3.0; q > 1.0; q -= 0.25) s.push_back(vt + (1.0 - vt) * std::pow(10.0, -q));
  for (int k = 1; k < 100; ++k) s.push_back(vt + (1.0 - vt) * k / 100.0);
  for (double q = 2.25; q <= 14.0; q += 0.25) s.push_back(1.0 - (1.0 - vt) * std::pow(10.0, -q));
  std::sort(s.begin(), s.end());
  std::vector<double> Ls;
  for (double v : s) Ls.push_back(return_length_at_turn(r, d, v, 2e-3));
  double prev_gap = kInfinity;
  bool gaps = true, ordered = true, roots = true;
  std::string counts;
  for (double L : {30.0, 45.0, 60.0}) {
    int n = 0;
    for (std::size_t k = 0; k + 1 < Ls.size(); ++k)
      if ((Ls[k] - L) * (Ls[k + 1] - L) < 0.0) ++n;
    roots = roots && n == 2;
    counts += (counts.empty() ? "" : "/") + std::to_string(n);
    StripStateReport st = strip_steady_states(r, d, L);
    for (std::size_t k = 1; k + 1 < st.phi_L.values.size(); ++k) ordered = ordered && st.psi_L.values[k] < st.phi_L.values[k];
    double gap = st.psi_L.max() - vt;
    gaps = gaps && gap < prev_gap;
    prev_gap = gap;
  }
  b.check(roots, "roots of L(s*) = L at L = 30/45/60: " + counts);
  b.check(ordered, "psi_L < phi_L");
  b.check(gaps, "sup psi_L - vartheta decreasing, last " + num(prev_gap, 3));
  b.row.tolerance = "exactly 2 roots; strict order; strict decrease";
}

void row_energy(Builder& b) {
  for (const Reaction& r : {Reaction::ignition(0.3), Reaction::cubic_bistable(0.25)}) {
    StripStateReport st = strip_steady_states(r, Boundary::dirichlet(), 60.0);
    b.check(st.energy_phi < 0.0 && st.energy_psi > 0.0,
            r.name() + ": H(phi) = " + num(st.energy_phi) + ", H(psi) = " + num(st.energy_psi));
  }
  b.row.tolerance = "H(phi_60) < 0 < H(psi_60)";
}

void row_speed_oracle(Builder& b) {
  for (double theta : {0.2, 0.25, 0.3}) {
    Reaction r = Reaction::cubic_bistable(theta);
    double c = wave_speed_bistable_ignition(r).speed;
    LineFrontOptions o;
    o.h = 0.05;
    o.dt = 1e-3;
    o.T = 200.0;
    FrontTrace tr = front_speed_1d(r, o);
    double rel = std::abs(tr.fit_speed - c) / c;
    b.check(rel < 0.02, "theta " + num(theta, 2) + ": " + num(c, 6) + " vs " + num(tr.fit_speed, 6));
  }
  b.row.tolerance = "2% relative";
}

struct BoxFixture {
  Reaction r = Reaction::ignition(0.3);
  Boundary b = Boundary::dirichlet();
  StripSetup s;
  double a = 60.0;
  Field low_c;  // c = 0.1
  bool have = false;
};

void solve_fixture(BoxFixture& fx) {
  if (fx.have) return;
  fx.s = strip_setup(fx.r, fx.b, 40.0, 0.25);
  fx.have = true;
}

void row_box(Builder& b, BoxFixture& fx, bool break_cfl) {
  solve_fixture(fx);
  b.row.tolerance = "monotone 1e-12; bounds 1e-12; dx 1e-10; symmetry 1e-8";
  if (break_cfl) {
    Field u(UniformGrid::spanning(-fx.a, fx.a, 0.25), fx.s.y, 0.0);
    for (std::size_t j = 0; j < u.ny(); ++j)
      for (std::size_t i = 0; i + 1 < u.nx(); ++i) u(i, j) = fx.s.phi_L.values[j];
    RelaxOptions o;
    o.direction = -1;
    o.dt = 2.5 * stable_dt_2d(0.25, fx.b, 0.1, lipschitz_bound(fx.r));
    o.max_steps = 200;
    RelaxReport rep = relax(box_problem(fx.r, fx.b, fx.s, 0.1), u, o);
    b.check(rep.monotone_violation <= 1e-12, "relaxation at 2.5x the step bound: increase " + num(rep.monotone_violation, 3));
    return;
  }
  BoxWave w = solve_box_wave(fx.s, fx.r, fx.b, fx.a, 0.1);
  double above = -kInfinity;
  for (std::size_t j = 0; j < w.field.ny(); ++j)
    for (std::size_t i = 0; i < w.field.nx(); ++i) above = std::max(above, w.field(i, j) - fx.s.phi_L.values[j]);
  b.check(w.report.relax.monotone_violation <= 1e-12,
          "pseudo-time increase " + num(w.report.relax.monotone_violation, 3) + " over " +
              std::to_string(w.report.relax.steps) + " steps");
  b.check(w.field.min() >= -1e-12 && above <= 1e-12, "min " + num(w.field.min(), 3) + ", max(Phi - phi_L) " + num(above, 3));
  double dx = max_dx(w.field);
  b.check(dx <= 1e-10, "max dx " + num(dx, 3));
  double sym = symmetry_defect(w.field);
  b.check(sym < 1e-8, "symmetry " + num(sym, 3));
  b.check(w.report.residual < 1e-8, "residual " + num(w.report.residual, 3));
  fx.low_c = std::move(w.field);
}

void row_monotone_c(Builder& b, BoxFixture& fx) {
  solve_fixture(fx);
  if (fx.low_c.values.empty()) fx.low_c = solve_box_wave(fx.s, fx.r, fx.b, fx.a, 0.1).field;
  BoxWave hi = solve_box_wave(fx.s, fx.r, fx.b, fx.a, 0.3);
  MonotoneInC m = compare_in_c(fx.low_c, hi.field, 1e-8);
  b.check(m.ok, "max(Phi^0.3 - Phi^0.1) = " + num(m.worst, 3));
  b.row.tolerance = "1e-8";
}

void row_speed_study(Builder& b) {
  SpeedStudy st = speed_convergence_study(Reaction::ignition(0.3), Boundary::dirichlet(), {30.0, 45.0, 60.0}, 0.5);
  bool below = true;
  std::string cs;
  for (const auto& row : st.rows) {
    below = below && row.c_L <= row.c_star + 2e-3;
    cs += (cs.empty() ? "" : ", ") + num(row.c_L, 6);
  }
  double rel = st.rows.back().gap / st.rows.back().c_star;
  b.check(below, "c_L = " + cs + " vs c* = " + num(st.rows.back().c_star, 6));
  b.check(st.gap_nonincreasing, "gap nonincreasing");
  b.check(rel < 0.05, "|c_60 - c*|/c* = " + num(rel, 3));
  b.row.tolerance = "c_L <= c* + 2e-3; 5% at L = 60";
}

void row_dichotomy(Builder& b) {
  Reaction r = Reaction::ignition(0.3);
  Boundary d = Boundary::dirichlet();
  ExperimentGrid g{250.0, 150.0, 0.5, 60.0, 1.0};
  ExtinctionResult ex = extinction_experiment(r, d, BallData{0.3, 5.0, 0.0, 5.0}, g);
  bool ext_ok = ex.sup_final < 1e-3;
  b.check(ext_ok, "theta ball(5): sup u(60) = " + num(ex.sup_final, 3) + " (heat kernel " + num(ex.heat_kernel_estimate, 3) + ")");
  g.T = 150.0;
  InvasionOptions o;
  o.ell = 8.0;
  o.c_fraction = 0.5;
  o.c_star = wave_speed_bistable_ignition(r).speed;
  InvasionResult inv = invasion_experiment(r, d, BallData{0.6, 20.0, 0.0, 20.0}, g, o);
  b.check(inv.slab_error < 0.05 && !inv.halted, "0.6 ball(20): slab error " + num(inv.slab_error, 3));
  b.row.tolerance = "sup < 1e-3; slab < 0.05";
  // The datum stays below theta, so u is the heat flow and the kernel value is exact up to quadrature.
  b.row.known_unattainable = !ext_ok && ex.heat_kernel_estimate > 1e-3 && inv.slab_error < 0.05;
}

void row_hair_trigger(Builder& b) {
  InvasionOptions o;
  o.smooth_bump = true;
  o.ell = 8.0;
  InvasionResult res = invasion_experiment(Reaction::kpp(), Boundary::dirichlet(), BallData{0.01, 2.0, 0.0, 5.0},
                                           ExperimentGrid{260.0, 260.0, 0.5, 120.0, 1.0}, o);
  b.check(res.outcome == RunOutcome::invaded, "outcome " + to_string(res.outcome));
  b.check(res.center_error < 0.05, "center error " + num(res.center_error, 3));
  b.row.tolerance = "invaded; 0.05";
}

RawConfig spread_config(const std::string& out) {
  return parse_config("experiment = spread\noutput = " + out + "\n", "<acceptance>");
}

void row_spreading(Builder& b, const std::string& work) {
  set_thread_count(1);
  RunReport rep = run_experiment(spread_config((fs::path(work) / "spread_t1").string()));
  if (rep.exit_code != 0) fail(ErrorKind::numerical, rep.invariant, rep.message);
  double c = std::stod(rep.result("c_star"));
  for (const char* y : {"y5", "y10"}) {
    double v = std::stod(rep.result(std::string("fit_speed_") + y));
    double worst = std::stod(rep.result(std::string("max_radius_over_t_") + y));
    b.check(std::abs(v - c) / c < 0.10, std::string(y) + ": fit " + num(v, 5) + " vs c* " + num(c, 5));
    b.check(worst <= 1.1 * c, std::string(y) + ": max r/t " + num(worst, 5));
  }
  b.row.tolerance = "10%; r/t <= 1.1 c*";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void row_determinism(Builder& b, const std::string& work) {
  int saved = thread_count();
  fs::path base = fs::path(work) / "spread_t1";
  if (!fs::exists(base / "fronts.csv")) {
    set_thread_count(1);
    run_experiment(spread_config(base.string()));
  }
  for (int n : {2, 8}) {
    set_thread_count(n);
    fs::path dir = fs::path(work) / ("spread_t" + std::to_string(n));
    run_experiment(spread_config(dir.string()));
    for (const char* f : {"fronts.csv", "field.csv"}) {
      std::string a = slurp(base / f), c = slurp(dir / f);
      b.check(!a.empty() && a == c, std::string(f) + " at " + std::to_string(n) + " threads " +
                                        (a == c ? "identical" : "differs"));
    }
  }
  set_thread_count(saved);
  b.row.tolerance = "byte-identical";
}

void row_halfplane(Builder& b) {
  Reaction bi = Reaction::cubic_bistable(0.25);
  Boundary d = Boundary::dirichlet();
  StripLimitOptions so;
  so.require_stable = false;
  HalfPlaneWave wa = ignition_bistable_halfplane_wave(bi, d, so);
  double c = wave_speed_bistable_ignition(bi).speed;
  std::string va = wa.violation();
  double rel = std::abs(wa.speed - c) / c;
  std::string deltas;
  for (double v : wa.window_deltas) deltas += (deltas.empty() ? "" : "/") + num(v, 2);
  b.check(va.empty() && rel < 0.05, "(a) " + (va.empty() ? std::string("invariants ok") : va) + ", speed " +
                                        num(wa.speed, 5) + " vs " + num(c, 5) + ", window deltas " + deltas);

  Reaction kpp = Reaction::kpp();
  HalfPlaneWave wb = monostable_halfplane_wave(kpp, d, 2.2);
  std::string vb = wb.violation();
  b.check(vb.empty() && std::abs(wb.pin_value - 0.5) <= 1e-3,
          "(b) " + (vb.empty() ? std::string("invariants ok") : vb) + ", Phi(0, l1) = " + num(wb.pin_value, 6));

  std::string outcome = "wave returned";
  try {
    monostable_halfplane_wave(kpp, d, 1.0);
  } catch (const Error& e) {
    outcome = e.invariant();
  }
  b.check(outcome == "no wave at this speed", "(c) c = 1: " + outcome);
  b.row.tolerance = "invariants; 5%; pin 1e-3";
}

void row_comparison(Builder& b, bool break_cfl) {
  Reaction r = Reaction::cubic_bistable(0.25);
  UniformGrid gx = UniformGrid::spanning(-30.0, 30.0, 0.5), gy = UniformGrid::spanning(0.0, 30.0, 0.5);
  Field lo = ball_field(gx, gy, BallData{0.5, 5.0, 0.0, 8.0});
  Field hi = ball_field(gx, gy, BallData{0.7, 6.0, 0.0, 8.0});
  EvolutionConfig cfg;
  cfg.T_final = 20.0;
  if (break_cfl) {
    cfg.dt = 2.5 * stable_dt_2d(0.5, cfg.bottom, 0.0, lipschitz_bound(r));
    cfg.check_cfl = false;
  }
  std::vector<Field> a, c;
  evolve_halfplane(r, lo, cfg, [&](double, const Field& u) { a.push_back(u); });
  evolve_halfplane(r, hi, cfg, [&](double, const Field& u) { c.push_back(u); });
  double worst = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), c.size()); ++k)
    for (std::size_t i = 0; i < a[k].values.size(); ++i) worst = std::max(worst, a[k].values[i] - c[k].values[i]);
  b.check(worst <= 1e-12 && !a.empty(), "max(u - v) over " + std::to_string(std::min(a.size(), c.size())) +
                                            " snapshots = " + num(worst, 3));
  b.row.tolerance = "1e-12";
}

struct Spec {
  std::string id;
  std::string title;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> all = {
      {"1", "steady-state slope identity"},  {"2", "Robin boundary identity"},
      {"3", "two interval states"},          {"4", "energy ordering"},
      {"5", "phase-plane vs parabolic speed"}, {"6", "box-wave structure"},
      {"7", "monotonicity in c"},            {"8", "speed convergence"},
      {"9", "extinction / invasion"},        {"10", "hair trigger"},
      {"11", "spreading speed"},             {"12", "half-plane waves"},
      {"13", "determinism across threads"},  {"C", "comparison principle"},
  };
  return all;
}

}  // namespace

std::string format_row(const AcceptanceRow& row) {
  char head[96];
  std::snprintf(head, sizeof head, "%s  %-3s %-32s", row.pass ? "PASS" : "FAIL", row.id.c_str(), row.title.c_str());
  std::string s = head;
  s += " " + row.measured + "  [tol " + row.tolerance + "]  " + num(row.seconds, 3) + " s";
  if (!row.pass && row.known_unattainable) s += "  (known unattainable)";
  return s;
}

std::vector<AcceptanceRow> run_acceptance(const AcceptanceOptions& opt,
                                          const std::function<void(const AcceptanceRow&)>& on_row) {
  std::vector<AcceptanceRow> rows;
  BoxFixture fx;
  fs::create_directories(opt.work_dir);
  for (const auto& sp : specs()) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), sp.id) == opt.only.end()) continue;
    Builder b;
    b.row.id = sp.id;
    b.row.title = sp.title;
    auto t0 = std::chrono::steady_clock::now();
    try {
      if (sp.id == "1") row_slope(b);
      else if (sp.id == "2") row_robin(b);
      else if (sp.id == "3") row_two_states(b);
      else if (sp.id == "4") row_energy(b);
      else if (sp.id == "5") row_speed_oracle(b);
      else if (sp.id == "6") row_box(b, fx, opt.break_cfl);
      else if (sp.id == "7") row_monotone_c(b, fx);
      else if (sp.id == "8") row_speed_study(b);
      else if (sp.id == "9") row_dichotomy(b);
      else if (sp.id == "10") row_hair_trigger(b);
      else if (sp.id == "11") row_spreading(b, opt.work_dir);
      else if (sp.id == "12") row_halfplane(b);
      else if (sp.id == "13") row_determinism(b, opt.work_dir);
      else if (sp.id == "C") row_comparison(b, opt.break_cfl);
    } catch (const std::exception& e) {
      b.check(false, std::string("error: ") + e.what());
    }
    b.row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    b.row.pass = b.ok;
    b.row.measured = b.measured.str();
    if (b.row.pass) b.row.known_unattainable = false;
    if (on_row) on_row(b.row);
    rows.push_back(b.row);
  }
  return rows;
}

}  // namespace frontlab
