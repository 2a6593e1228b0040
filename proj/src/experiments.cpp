#include "frontlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "frontlab/halfwave.hpp"
#include "frontlab/io.hpp"
#include "frontlab/parabolic.hpp"
#include "frontlab/reaction.hpp"
#include "frontlab/shooting.hpp"
#include "frontlab/stripwave.hpp"
#include "frontlab/wave1d.hpp"

namespace fs = std::filesystem;

namespace frontlab {

namespace {

struct Context {
  const ResolvedConfig& cfg;
  fs::path dir;
  RunReport& report;

  void put(const std::string& key, const std::string& value) { report.results.emplace_back(key, value); }
  void put(const std::string& key, double value) { put(key, format_number(value)); }
  std::string path(const std::string& name) {
    report.artifacts.push_back(name);
    return (dir / name).string();
  }
};

using Runner = std::function<void(Context&)>;

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + format_number(v[k]);
  return s;
}

double auto_or(const ResolvedConfig& c, const std::string& key, double fallback) {
  return c.str(key) == "auto" ? fallback : c.num(key);
}

void profile_svg(Context& ctx, const std::string& name, const std::vector<std::pair<std::string, Profile>>& ps,
                 const std::string& axis) {
  std::vector<Series> series;
  for (const auto& [label, p] : ps) {
    Series s{label, {}, p.values};
    for (std::size_t i = 0; i < p.values.size(); ++i) s.x.push_back(p.grid.at(i));
    series.push_back(std::move(s));
  }
  write_line_svg(ctx.path(name), series, axis, "value");
}

void field_artifacts(Context& ctx, const Field& u, const std::string& title) {
  write_field_csv(ctx.path("field.csv"), u);
  write_heatmap_svg(ctx.path("field.svg"), u, title);
}

Wave1D reference_wave(const Reaction& r) { return wave_speed_bistable_ignition(r); }

// ---- runners ----

void run_validate(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  ClassReport rep = validate(r, static_cast<int>(ctx.cfg.integer("params.samples")));
  Table t;
  t.header = {"name", "passed", "offending_s", "detail"};
  for (const auto& c : rep.checks)
    t.add_text({c.name, c.passed ? "true" : "false", format_number(c.offending_s), c.detail});
  write_table_csv(ctx.path("checks.csv"), t);
  ctx.put("class", to_string(rep.kind));
  ctx.put("vartheta", vartheta(r));
  ctx.put("hypotheses", rep.ok() ? "pass" : "fail");
  if (!rep.ok()) fail(ErrorKind::assertion, "hypotheses", rep.summary());
}

void run_steady(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  Profile p = halfline_steady_state(r, b, ctx.cfg.num("params.Y"), ctx.cfg.num("grid.h"));
  write_profile_csv(ctx.path("profile.csv"), p);
  profile_svg(ctx, "profile.svg", {{"phi", p}}, "y");
  double slope = critical_slope(r, b);
  double s0 = critical_boundary_value(r, b);
  ctx.put("slope", slope);
  ctx.put("boundary_value", s0);
  ctx.put("value_at_Y", p.back());
  if (b.is_dirichlet() && r.kind() != ReactionClass::monostable)
    ctx.put("slope_identity_error", std::abs(slope - std::sqrt(2.0 * r.antiderivative(1.0))));
  if (b.is_robin() && r.kind() == ReactionClass::ignition)
    ctx.put("lambda_identity_error", std::abs(lambda_function(r, s0) - 1.0 / (b.rho() * b.rho())));
}

void run_lengthmap(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  double ab = critical_slope(r, b);
  double a0 = auto_or(ctx.cfg, "params.alpha_min", 0.02 * ab), a1 = auto_or(ctx.cfg, "params.alpha_max", 0.98 * ab);
  long n = ctx.cfg.integer("params.count");
  if (n < 2 || !(a1 > a0) || a0 <= 0.0) fail(ErrorKind::configuration, "alpha range", "need 0 < alpha_min < alpha_max, count >= 2");
  Table t;
  t.header = {"alpha", "s_max", "K", "L_return", "classification"};
  Series L{"L_return", {}, {}}, K{"K", {}, {}};
  for (long k = 0; k < n; ++k) {
    double a = a0 + (a1 - a0) * static_cast<double>(k) / static_cast<double>(n - 1);
    LengthMapEntry e = length_map(r, b, a, ctx.cfg.num("grid.h"));
    t.add_text({format_number(a), format_number(e.s_max), format_number(e.K), format_number(e.L_return),
                to_string(e.classification)});
    L.x.push_back(a), L.y.push_back(e.L_return);
    K.x.push_back(a), K.y.push_back(e.K);
  }
  write_table_csv(ctx.path("lengthmap.csv"), t);
  write_line_svg(ctx.path("lengthmap.svg"), {L, K}, "alpha", "length");
  ctx.put("alpha_bar", ab);
  if (r.kind() != ReactionClass::monostable) {
    auto [am, Lmin] = minimal_return_length(r, b);
    ctx.put("alpha_mid", am);
    ctx.put("A_ODE_estimate", Lmin);
  }
}

void run_stripstates(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  StripStateOptions o;
  o.h = ctx.cfg.num("grid.h");
  o.symmetric = ctx.cfg.flag("params.symmetric");
  StripStateReport s = strip_steady_states(r, b, ctx.cfg.num("params.L"), o);
  write_profile_csv(ctx.path("phi_L.csv"), s.phi_L);
  write_profile_csv(ctx.path("psi_L.csv"), s.psi_L);
  profile_svg(ctx, "profiles.svg", {{"phi_L", s.phi_L}, {"psi_L", s.psi_L}}, "y");
  ctx.put("alpha_phi", s.alpha_phi);
  ctx.put("alpha_psi", s.alpha_psi);
  ctx.put("alpha_mid", s.alpha_mid);
  ctx.put("A_ODE_estimate", s.A_ODE_estimate);
  ctx.put("sup_phi", s.phi_L.max());
  ctx.put("sup_psi_minus_vartheta", s.psi_L.max() - vartheta(r));
  ctx.put("H_phi", s.energy_phi);
  ctx.put("H_psi", s.energy_psi);
}

void run_energy(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  Table t;
  t.header = {"L", "H_phi", "H_zero", "H_psi"};
  Series hp{"H(phi_L)", {}, {}}, hs{"H(psi_L)", {}, {}};
  bool ordered = true;
  for (double L : ctx.cfg.list("params.L")) {
    StripStateReport s = strip_steady_states(r, b, L);
    t.add({L, s.energy_phi, s.energy_zero, s.energy_psi});
    hp.x.push_back(L), hp.y.push_back(s.energy_phi);
    hs.x.push_back(L), hs.y.push_back(s.energy_psi);
    ordered = ordered && s.energy_phi < s.energy_zero && s.energy_zero < s.energy_psi;
  }
  write_table_csv(ctx.path("energy.csv"), t);
  write_line_svg(ctx.path("energy.svg"), {hp, hs}, "L", "H");
  ctx.put("ordering", ordered ? "H(phi_L) < 0 < H(psi_L)" : "violated");
  if (!ordered) fail(ErrorKind::assertion, "energy ordering", "H(phi_L) < H(0) < H(psi_L) fails");
}

void run_wave1d(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  LineFrontOptions lo;
  lo.h = ctx.cfg.num("grid.h");
  lo.dt = ctx.cfg.num("grid.dt");
  lo.T = ctx.cfg.num("grid.T");
  if (r.kind() == ReactionClass::monostable) {
    MonostableSpeed m = minimal_speed_monostable(r, lo.h, lo.T);
    ctx.put("measured_speed", m.measured);
    ctx.put("linear_bound", m.linear_bound);
    ctx.put("below_linear", m.below_linear ? "true" : "false");
    ctx.put("window_speeds", join(m.window_speeds));
    double c = ctx.cfg.num("params.c");
    if (c > 0.0) {
      Wave1D w = wave_profile_at_speed(r, c);
      write_profile_csv(ctx.path("profile.csv"), w.profile, "xi", "U");
      profile_svg(ctx, "profile.svg", {{"U", w.profile}}, "xi");
    }
    return;
  }
  SpeedSearch s = bistable_ignition_speed(r);
  Table h;
  h.header = {"c", "classification"};
  for (const auto& p : s.history) h.add_text({format_number(p.c), to_string(p.outcome)});
  write_table_csv(ctx.path("history.csv"), h);
  write_profile_csv(ctx.path("profile.csv"), s.wave.profile, "xi", "U");
  profile_svg(ctx, "profile.svg", {{"U", s.wave.profile}}, "xi");
  ctx.put("c_star", s.wave.speed);
  if (ctx.cfg.flag("params.parabolic")) {
    FrontTrace tr = front_speed_1d(r, lo);
    ctx.put("parabolic_speed", tr.fit_speed);
    ctx.put("relative_difference", std::abs(tr.fit_speed - s.wave.speed) / s.wave.speed);
  }
}

void run_stripwave(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  double L = ctx.cfg.num("params.L"), h = ctx.cfg.num("grid.h");
  bool symmetric = ctx.cfg.flag("params.symmetric");
  StripSetup s = strip_setup(r, b, L, h, symmetric);
  write_profile_csv(ctx.path("phi_L.csv"), s.phi_L);
  ctx.put("c_star", s.c_star);
  const std::string& mode = ctx.cfg.str("params.mode");
  if (mode == "fixed") {
    double a = auto_or(ctx.cfg, "params.a", 1.5 * L), c = ctx.cfg.num("params.c");
    BoxWave w = solve_box_wave(s, r, b, a, c);
    field_artifacts(ctx, w.field, "box wave c = " + format_number(c));
    double above = -kInfinity;
    for (std::size_t j = 0; j < w.field.ny(); ++j)
      for (std::size_t i = 0; i < w.field.nx(); ++i) above = std::max(above, w.field(i, j) - s.phi_L.values[j]);
    ctx.put("relax_steps", static_cast<double>(w.report.relax.steps));
    ctx.put("monotone_violation", w.report.relax.monotone_violation);
    ctx.put("newton_iterations", w.report.newton.iterations);
    ctx.put("residual", w.report.residual);
    ctx.put("min", w.field.min());
    ctx.put("max_above_phi_L", above);
    ctx.put("max_dx", max_dx(w.field));
    ctx.put("symmetry_defect", symmetry_defect(w.field));
    return;
  }
  if (mode != "pinned") fail(ErrorKind::configuration, "params.mode", "mode must be pinned or fixed");
  StripWaveOptions o;
  o.theta0 = auto_or(ctx.cfg, "params.theta0", std::nan(""));
  o.boxes = static_cast<int>(ctx.cfg.integer("params.boxes"));
  o.c_tol = ctx.cfg.num("params.c_tol");
  o.translation_probe = ctx.cfg.flag("params.translation_probe");
  StripWave w = strip_wave(s, r, b, o);
  Table t;
  t.header = {"a", "c_pinned", "pin_residual", "elliptic_residual", "iterations"};
  for (const auto& p : w.schedule) t.add({p.a, p.c_pinned, p.residual, p.elliptic_residual, static_cast<double>(p.iterations)});
  write_table_csv(ctx.path("schedule.csv"), t);
  field_artifacts(ctx, w.field, "strip wave c_L = " + format_number(w.c_L));
  ctx.put("c_L", w.c_L);
  ctx.put("gap", std::abs(w.c_L - w.c_star));
  ctx.put("left_error", w.left_error);
  ctx.put("right_sup", w.right_sup);
  ctx.put("symmetry_defect", w.symmetry_defect);
  if (o.translation_probe) ctx.put("translation_c", w.translation_c);
}

void run_speedstudy(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  SpeedStudy st = speed_convergence_study(r, b, ctx.cfg.list("params.L"), ctx.cfg.num("grid.h"));
  Table t;
  t.header = {"L", "c_L", "c_star", "gap"};
  Series g{"|c_L - c_star|", {}, {}};
  for (const auto& row : st.rows) {
    t.add({row.L, row.c_L, row.c_star, row.gap});
    g.x.push_back(row.L), g.y.push_back(row.gap);
  }
  write_table_csv(ctx.path("speedstudy.csv"), t);
  write_line_svg(ctx.path("speedstudy.svg"), {g}, "L", "gap");
  ctx.put("gap_nonincreasing", st.gap_nonincreasing ? "true" : "false");
  if (!st.rows.empty()) ctx.put("relative_gap_last", st.rows.back().gap / st.rows.back().c_star);
}

BallData ball_of(const ResolvedConfig& c) {
  return BallData{c.num("params.amplitude"), c.num("params.radius"), c.num("params.x_center"), c.num("params.y_center")};
}

ExperimentGrid grid_of(const ResolvedConfig& c) {
  return ExperimentGrid{c.num("grid.X"), c.num("grid.Y"), c.num("grid.h"), c.num("grid.T"), c.num("grid.snapshot_every")};
}

void run_spread(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  double c_star = r.kind() == ReactionClass::monostable ? 2.0 * std::sqrt(r.left_slope()) : reference_wave(r).speed;
  InvasionOptions o;
  o.track_heights = ctx.cfg.list("params.heights");
  o.level_fraction = ctx.cfg.num("params.level_fraction");
  o.c_star = c_star;
  InvasionResult res = invasion_experiment(r, b, ball_of(ctx.cfg), grid_of(ctx.cfg), o);
  Table t;
  t.header = {"t"};
  for (double y0 : o.track_heights) t.header.push_back("radius_y" + format_number(y0));
  std::vector<Series> series;
  for (std::size_t k = 0; k < res.traces.front().t.size(); ++k) {
    std::vector<double> row{res.traces.front().t[k]};
    for (const auto& tr : res.traces) row.push_back(tr.radius[k]);
    t.add(row);
  }
  write_table_csv(ctx.path("fronts.csv"), t);
  for (const auto& tr : res.traces) series.push_back({"y0 = " + format_number(tr.y0), tr.t, tr.radius});
  write_line_svg(ctx.path("fronts.svg"), series, "t", "radius");
  if (ctx.cfg.flag("params.write_field")) field_artifacts(ctx, res.final, "u(T)");
  ctx.put("c_star", c_star);
  ctx.put("outcome", to_string(res.outcome));
  if (res.halted) ctx.put("halt_reason", res.halt_reason);
  for (const auto& tr : res.traces) {
    std::string tag = "y" + format_number(tr.y0);
    double worst = 0.0;
    for (std::size_t k = 0; k < tr.t.size(); ++k)
      if (tr.t[k] >= tr.fit_t0 && tr.t[k] <= tr.fit_t1 && std::isfinite(tr.radius[k]))
        worst = std::max(worst, tr.radius[k] / tr.t[k]);
    ctx.put("fit_speed_" + tag, tr.fit_speed);
    ctx.put("relative_error_" + tag, std::abs(tr.fit_speed - c_star) / c_star);
    ctx.put("max_radius_over_t_" + tag, worst);
    ctx.put("fit_window_" + tag, format_number(tr.fit_t0) + " " + format_number(tr.fit_t1));
  }
}

void run_threshold(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  BallData ball = ball_of(ctx.cfg);
  ExperimentGrid g = grid_of(ctx.cfg);
  std::string mode = ctx.cfg.str("params.mode");
  if (mode == "auto") mode = ball.amplitude <= r.theta() && r.kind() != ReactionClass::monostable ? "extinction" : "invasion";
  ctx.put("mode", mode);
  if (mode == "extinction") {
    ExtinctionResult res = extinction_experiment(r, b, ball, g);
    Table t;
    t.header = {"t", "sup"};
    for (std::size_t k = 0; k < res.t.size(); ++k) t.add({res.t[k], res.sup[k]});
    write_table_csv(ctx.path("sup.csv"), t);
    write_line_svg(ctx.path("sup.svg"), {{"sup u", res.t, res.sup}}, "t", "sup u");
    ctx.put("outcome", to_string(res.outcome));
    ctx.put("sup_final", res.sup_final);
    ctx.put("heat_kernel_estimate", res.heat_kernel_estimate);
    return;
  }
  if (mode != "invasion") fail(ErrorKind::configuration, "params.mode", "mode must be auto, extinction or invasion");
  InvasionOptions o;
  o.ell = ctx.cfg.num("params.ell");
  o.c_fraction = ctx.cfg.num("params.c_fraction");
  o.smooth_bump = ctx.cfg.flag("params.smooth_bump");
  if (r.kind() != ReactionClass::monostable) o.c_star = reference_wave(r).speed;
  InvasionResult res = invasion_experiment(r, b, ball, g, o);
  field_artifacts(ctx, res.final, "u(T)");
  ctx.put("outcome", to_string(res.outcome));
  ctx.put("window_error", res.window_error);
  ctx.put("center_error", res.center_error);
  if (o.c_star > 0.0) ctx.put("slab_error", res.slab_error);
  ctx.put("sup_final", res.sup_final);
  if (res.halted) ctx.put("halt_reason", res.halt_reason);
}

void run_hairtrigger(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  require(r.kind() == ReactionClass::monostable, "monostable only", "hairtrigger takes a monostable reaction");
  InvasionOptions o;
  o.smooth_bump = true;
  o.ell = ctx.cfg.num("params.ell");
  InvasionResult res = invasion_experiment(r, ctx.cfg.boundary(), ball_of(ctx.cfg), grid_of(ctx.cfg), o);
  field_artifacts(ctx, res.final, "u(T)");
  Profile centre{res.final.y, res.final.column(res.final.nx() / 2), {}};
  write_profile_csv(ctx.path("center.csv"), centre);
  profile_svg(ctx, "center.svg", {{"u(T, 0, y)", centre}, {"phi", res.phi}}, "y");
  ctx.put("outcome", to_string(res.outcome));
  ctx.put("center_error", res.center_error);
  ctx.put("window_error", res.window_error);
  ctx.put("sup_final", res.sup_final);
  if (res.halted) ctx.put("halt_reason", res.halt_reason);
}

void put_wave(Context& ctx, const HalfPlaneWave& w) {
  field_artifacts(ctx, w.field, "half-plane wave c = " + format_number(w.speed));
  write_profile_csv(ctx.path("left_profile.csv"), w.left_profile);
  write_profile_csv(ctx.path("right_profile.csv"), w.right_profile);
  ctx.put("speed", w.speed);
  ctx.put("pin", format_number(w.pin_x) + " " + format_number(w.pin_y));
  ctx.put("pin_value", w.pin_value);
  ctx.put("residual", w.residual);
  ctx.put("max_dx", w.max_dx);
  ctx.put("min_dy", w.min_dy);
  ctx.put("left_error", w.left_error);
  ctx.put("right_sup", w.right_sup);
  ctx.put("interior_range", format_number(w.interior_min) + " " + format_number(w.interior_max));
  ctx.put("window_deltas", join(w.window_deltas));
}

void run_halfwave(Context& ctx) {
  Reaction r = ctx.cfg.reaction();
  Boundary b = ctx.cfg.boundary();
  HalfPlaneWave w;
  if (r.kind() == ReactionClass::monostable) {
    MonostableOptions o;
    o.h = ctx.cfg.num("grid.h");
    o.stabilize_tol = ctx.cfg.num("params.stabilize_tol");
    std::vector<double> as = ctx.cfg.list("params.box_a"), bs = ctx.cfg.list("params.box_b");
    if (as.size() != bs.size() || as.empty())
      fail(ErrorKind::configuration, "params.box_a", "box_a and box_b must be nonempty lists of equal length");
    o.box_schedule.clear();
    for (std::size_t k = 0; k < as.size(); ++k) o.box_schedule.emplace_back(as[k], bs[k]);
    double c = ctx.cfg.num("params.c");
    try {
      w = monostable_halfplane_wave(r, b, c, o);
    } catch (const Error& e) {
      if (e.invariant() != "no wave at this speed") throw;
      ctx.put("outcome", "no wave at this speed");
      ctx.put("reason", e.what());
      return;
    }
  } else {
    StripLimitOptions o;
    o.h = ctx.cfg.num("grid.h");
    o.L_schedule = ctx.cfg.list("params.L");
    o.stabilize_tol = ctx.cfg.num("params.stabilize_tol");
    o.require_stable = ctx.cfg.flag("params.require_stable");
    w = ignition_bistable_halfplane_wave(r, b, o);
    ctx.put("c_star", reference_wave(r).speed);
  }
  ctx.put("outcome", "wave");
  put_wave(ctx, w);
  std::string v = w.violation();
  ctx.put("invariants", v.empty() ? "pass" : v);
  if (!v.empty()) fail(ErrorKind::assertion, "half-plane wave invariants", v);
}

struct Experiment {
  std::string name;
  std::vector<KeySpec> keys;
  Runner run;
};

std::vector<KeySpec> common(const std::string& name, const std::string& reaction, const std::string& rho = "0") {
  return {{"run.experiment", name, "experiment name"},
          {"run.output", "runs/" + name, "output directory"},
          {"model.reaction", reaction, "reaction spec"},
          {"model.rho", rho, "Robin parameter (0 Dirichlet, or neumann)"}};
}

std::vector<KeySpec> with(std::vector<KeySpec> base, std::vector<KeySpec> more) {
  base.insert(base.end(), more.begin(), more.end());
  return base;
}

std::vector<KeySpec> ball_keys(double amplitude, double radius, double y_center) {
  return {{"params.amplitude", format_number(amplitude), "initial amplitude"},
          {"params.radius", format_number(radius), "initial radius"},
          {"params.x_center", "0", "initial centre x"},
          {"params.y_center", format_number(y_center), "initial centre y"}};
}

std::vector<KeySpec> grid_keys(double X, double Y, double h, double T) {
  return {{"grid.X", format_number(X), "x in [-X, X]"},
          {"grid.Y", format_number(Y), "y in [0, Y]"},
          {"grid.h", format_number(h), "spacing"},
          {"grid.T", format_number(T), "final time"},
          {"grid.snapshot_every", "1", "observation cadence"}};
}

const std::vector<Experiment>& registry() {
  static const std::vector<Experiment> all = {
      {"validate", with(common("validate", "cubic_bistable(theta=0.25)"), {{"params.samples", "10000", "sample count"}}),
       run_validate},
      {"steady",
       with(common("steady", "cubic_bistable(theta=0.25)"),
            {{"grid.h", "0.001", "shooting step"}, {"params.Y", "40", "profile extent"}}),
       run_steady},
      {"lengthmap",
       with(common("lengthmap", "ignition(theta=0.3)"),
            {{"grid.h", "0.001", "shooting step"},
             {"params.alpha_min", "auto", "smallest slope"},
             {"params.alpha_max", "auto", "largest slope"},
             {"params.count", "100", "number of slopes"}}),
       run_lengthmap},
      {"stripstates",
       with(common("stripstates", "ignition(theta=0.3)"),
            {{"grid.h", "0.001", "shooting step"},
             {"params.L", "30", "strip height"},
             {"params.symmetric", "false", "Robin rows at both walls"}}),
       run_stripstates},
      {"energy", with(common("energy", "ignition(theta=0.3)"), {{"params.L", "30, 45, 60", "strip heights"}}), run_energy},
      {"wave1d",
       with(common("wave1d", "cubic_bistable(theta=0.25)"),
            {{"grid.h", "0.05", "front run spacing"},
             {"grid.dt", "0.001", "front run step"},
             {"grid.T", "200", "front run time"},
             {"params.parabolic", "false", "also measure the 1D front speed"},
             {"params.c", "0", "monostable profile speed (0 skips)"}}),
       run_wave1d},
      {"stripwave",
       with(common("stripwave", "ignition(theta=0.3)"),
            {{"grid.h", "0.5", "box spacing"},
             {"params.L", "40", "strip height"},
             {"params.symmetric", "false", "mirrored Robin top row"},
             {"params.mode", "pinned", "pinned or fixed"},
             {"params.theta0", "auto", "pin value"},
             {"params.boxes", "3", "box doublings"},
             {"params.c_tol", "0.002", "box schedule tolerance"},
             {"params.translation_probe", "false", "repeat with the pin at L/3"},
             {"params.c", "0.1", "fixed speed"},
             {"params.a", "auto", "fixed box half-width"}}),
       run_stripwave},
      {"speedstudy",
       with(common("speedstudy", "ignition(theta=0.3)"),
            {{"grid.h", "0.5", "box spacing"}, {"params.L", "30, 45, 60", "strip heights"}}),
       run_speedstudy},
      {"spread",
       with(with(common("spread", "cubic_bistable(theta=0.25)"), grid_keys(130, 140, 0.5, 300)),
            with(ball_keys(1.0, 6.0, 15.0),
                 {{"params.heights", "5, 10", "tracked heights"},
                  {"params.level_fraction", "0.5", "level as a fraction of phi(y0)"},
                  {"params.write_field", "true", "write the final field"}})),
       run_spread},
      {"threshold",
       with(with(common("threshold", "ignition(theta=0.3)"), grid_keys(100, 100, 0.5, 60)),
            with(ball_keys(0.3, 5.0, 5.0),
                 {{"params.mode", "auto", "auto, extinction or invasion"},
                  {"params.ell", "8", "slab height"},
                  {"params.c_fraction", "0.5", "slab width as a fraction of c_star T"},
                  {"params.smooth_bump", "false", "bump instead of indicator"}})),
       run_threshold},
      {"hairtrigger",
       with(with(common("hairtrigger", "kpp()"), grid_keys(260, 260, 0.5, 120)),
            with(ball_keys(0.01, 2.0, 5.0), {{"params.ell", "8", "checked height"}})),
       run_hairtrigger},
      {"halfwave",
       with(common("halfwave", "cubic_bistable(theta=0.25)"),
            {{"grid.h", "0.5", "spacing"},
             {"params.L", "30, 45, 60", "strip heights (ignition, bistable)"},
             {"params.require_stable", "false", "throw when the window does not settle"},
             {"params.stabilize_tol", "0.01", "window tolerance"},
             {"params.c", "2.2", "speed (monostable)"},
             {"params.box_a", "40, 50, 60", "box half-widths (monostable)"},
             {"params.box_b", "40, 50, 60", "box heights (monostable)"}}),
       run_halfwave},
  };
  return all;
}

const Experiment& lookup(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  fail(ErrorKind::configuration, "experiment name", "unknown experiment '" + name + "'");
}

void write_manifest(const fs::path& dir, const std::string& config_text, const RunReport& rep) {
  fs::create_directories(dir);
  std::ofstream out(dir / "manifest.txt", std::ios::binary);
  out << config_text << "\n[result]\nstatus = " << rep.status << '\n';
  if (!rep.invariant.empty()) out << "invariant = " << rep.invariant << '\n';
  if (!rep.message.empty()) out << "message = " << rep.message << '\n';
  for (const auto& [k, v] : rep.results) out << k << " = " << v << '\n';
  if (!rep.artifacts.empty()) {
    out << "artifacts =";
    for (const auto& a : rep.artifacts) out << ' ' << a;
    out << '\n';
  }
}

}  // namespace

std::string RunReport::result(const std::string& key) const {
  for (const auto& [k, v] : results)
    if (k == key) return v;
  return "";
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : registry()) n.push_back(e.name);
    return n;
  }();
  return names;
}

std::vector<KeySpec> experiment_schema(const std::string& name) { return lookup(name).keys; }

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::assertion:
    case ErrorKind::numerical: return 2;
    case ErrorKind::configuration:
    case ErrorKind::invalid_argument: return 3;
  }
  return 1;
}

RunReport run_experiment(const RawConfig& raw, const std::string& output_override) {
  std::string name;
  for (const auto& e : raw.entries)
    if (e.qualified() == "run.experiment") name = e.value;
  if (name.empty()) fail(ErrorKind::configuration, "run.experiment", "config has no experiment name");
  const Experiment& ex = lookup(name);
  ResolvedConfig cfg(raw, ex.keys);
  RunReport rep;
  rep.experiment = name;
  rep.output_dir = output_override.empty() ? cfg.str("run.output") : output_override;
  fs::create_directories(rep.output_dir);
  Context ctx{cfg, fs::path(rep.output_dir), rep};
  try {
    ex.run(ctx);
  } catch (const Error& e) {
    rep.status = e.kind() == ErrorKind::assertion || e.kind() == ErrorKind::numerical ? "assertion" : "error";
    rep.invariant = e.invariant();
    rep.message = e.what();
    rep.exit_code = exit_code_for(e.kind());
  }
  write_manifest(rep.output_dir, cfg.text(), rep);
  return rep;
}

RunReport run_config_file(const std::string& path, const std::string& output_override) {
  return run_experiment(load_config(path), output_override);
}

std::vector<std::string> export_run(const std::string& what, const std::string& run_dir) {
  fs::path dir(run_dir);
  if (!fs::exists(dir / "manifest.txt")) fail(ErrorKind::configuration, "run directory", run_dir + " has no manifest.txt");
  std::vector<std::string> written;
  if (what == "field") {
    if (!fs::exists(dir / "field.csv")) fail(ErrorKind::configuration, "field artifact", run_dir + " has no field.csv");
    Field u = read_field_csv((dir / "field.csv").string());
    write_heatmap_svg((dir / "field.svg").string(), u);
    written.push_back((dir / "field.svg").string());
    return written;
  }
  if (what != "profile") fail(ErrorKind::configuration, "--what", "export takes --what=profile or --what=field");
  std::vector<std::pair<std::string, Profile>> ps;
  for (const char* name : {"profile.csv", "phi_L.csv", "psi_L.csv", "center.csv", "left_profile.csv", "right_profile.csv"})
    if (fs::exists(dir / name)) ps.emplace_back(name, read_profile_csv((dir / name).string()));
  if (ps.empty() && fs::exists(dir / "field.csv")) {
    Field u = read_field_csv((dir / "field.csv").string());
    for (std::size_t i : {std::size_t{0}, u.nx() - 1}) {
      Profile p{u.y, u.column(i), {}};
      std::string name = i == 0 ? "left_profile.csv" : "right_profile.csv";
      write_profile_csv((dir / name).string(), p);
      written.push_back((dir / name).string());
      ps.emplace_back(name, p);
    }
  }
  if (ps.empty()) fail(ErrorKind::configuration, "profile artifact", run_dir + " has no profile or field");
  std::vector<Series> series;
  for (const auto& [label, p] : ps) {
    Series s{label, {}, p.values};
    for (std::size_t i = 0; i < p.values.size(); ++i) s.x.push_back(p.grid.at(i));
    series.push_back(std::move(s));
  }
  write_line_svg((dir / "profiles.svg").string(), series, "coordinate", "value");
  written.push_back((dir / "profiles.svg").string());
  return written;
}

}  // namespace frontlab
