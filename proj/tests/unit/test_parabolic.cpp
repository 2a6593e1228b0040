#include <doctest.h>

#include <cmath>
#include <numeric>

#include "frontlab/error.hpp"
#include "frontlab/parabolic.hpp"
#include "frontlab/shooting.hpp"

using namespace frontlab;

namespace {

Field blank(double X, double Y, double h, double y0 = 0.0) {
  Field u;
  u.x = UniformGrid::spanning(-X, X, h);
  u.y = UniformGrid::spanning(y0, Y, h);
  u.values.assign(u.x.count * u.y.count, 0.0);
  return u;
}

}  // namespace

TEST_CASE("monotone time steps") {
  CHECK(stable_dt_2d(0.5, Boundary::dirichlet(), 0.0, 1.0) <= 0.24 * 0.25 + 1e-15);
  CHECK(stable_dt_2d(0.5, Boundary::robin(1.0), 0.0, 1.0) < stable_dt_2d(0.5, Boundary::dirichlet(), 0.0, 1.0));
  CHECK(stable_dt_1d(0.1, Boundary::dirichlet(), 1.0) > 0.0);
}

TEST_CASE("line evolution") {
  auto bi = Reaction::cubic_bistable(0.25);
  auto D = Boundary::dirichlet();
  UniformGrid g = UniformGrid::spanning(0.0, 40.0, 0.1);
  Profile phi = reference_steady_state(bi, D, g);

  Profile zero{g, std::vector<double>(g.count, 0.0), D};
  EvolutionConfig cfg;
  cfg.T_final = 20.0;
  auto ev0 = evolve_1d(bi, zero, cfg);
  CHECK(ev0.final.max() == 0.0);

  Profile one{g, std::vector<double>(g.count, 1.0), D};
  one.values[0] = 0.0;
  cfg.T_final = 200.0;
  double last_max = 2.0;
  bool decreasing = true;
  std::vector<double> prev = one.values;
  auto ev = evolve_1d(bi, one, cfg, [&](double, const Profile& u) {
    for (std::size_t k = 0; k < u.values.size(); ++k) decreasing = decreasing && u.values[k] <= prev[k] + 1e-14;
    prev = u.values;
    last_max = u.max();
  });
  CHECK(decreasing);
  CHECK(max_abs_difference(ev.final.values, phi.values) < 1e-2);

  cfg.T_final = 50.0;
  auto fixed = evolve_1d(bi, phi, cfg);
  CHECK(max_abs_difference(fixed.final.values, phi.values) < 1e-3);
}

TEST_CASE("comparison principle in the half-plane") {
  auto bi = Reaction::cubic_bistable(0.25);
  Field u0 = blank(20.0, 20.0, 0.5), v0 = u0;
  u0 = ball_field(u0.x, u0.y, {0.7, 4.0, 0.0, 8.0});
  v0 = ball_field(v0.x, v0.y, {0.9, 6.0, 0.0, 8.0});
  EvolutionConfig cfg;
  cfg.T_final = 10.0;
  cfg.keep_snapshots = true;
  cfg.guard = false;
  auto a = evolve_halfplane(bi, u0, cfg);
  auto b = evolve_halfplane(bi, v0, cfg);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k)
    for (std::size_t i = 0; i < a.snapshots[k].u.values.size(); ++i)
      REQUIRE(a.snapshots[k].u.values[i] <= b.snapshots[k].u.values[i]);
}

TEST_CASE("Dirichlet wall absorbs mass") {
  auto ig = Reaction::ignition(0.3);  // data below theta: pure heat flow
  Field u0 = blank(20.0, 20.0, 0.5);
  u0 = ball_field(u0.x, u0.y, {0.25, 3.0, 0.0, 4.0});
  EvolutionConfig cfg;
  cfg.T_final = 20.0;
  std::vector<double> mass;
  evolve_halfplane(ig, u0, cfg, [&](double, const Field& u) {
    mass.push_back(std::accumulate(u.values.begin(), u.values.end(), 0.0));
  });
  REQUIRE(mass.size() > 5);
  for (std::size_t k = 1; k < mass.size(); ++k) REQUIRE(mass[k] < mass[k - 1]);
}

TEST_CASE("Neumann wall equals the even whole-plane run") {
  auto bi = Reaction::cubic_bistable(0.25);
  double X = 15.0, Y = 15.0, h = 0.5;
  Field half = blank(X, Y, h), full = blank(X, Y, h, -Y);
  BallData ball{0.9, 5.0, 0.0, 0.0};
  half = ball_field(half.x, half.y, ball);
  full = ball_field(full.x, full.y, ball);
  EvolutionConfig cfg;
  cfg.T_final = 10.0;
  cfg.bottom = Boundary::neumann();
  cfg.guard = false;
  auto a = evolve_halfplane(bi, half, cfg);
  EvolutionConfig wp = cfg;
  wp.whole_plane = true;
  wp.bottom = Boundary::dirichlet();
  wp.dt = a.dt;
  auto b = evolve_halfplane(bi, full, wp);
  double worst = 0.0;
  std::size_t off = full.y.count - half.y.count;
  for (std::size_t j = 0; j < half.y.count; ++j)
    for (std::size_t i = 0; i < half.x.count; ++i) worst = std::max(worst, std::abs(a.final(i, j) - b.final(i, j + off)));
  CHECK(worst < 1e-10);
}

TEST_CASE("steps above the monotone bound are refused") {
  auto bi = Reaction::cubic_bistable(0.25);
  Field u0 = blank(5.0, 5.0, 0.5);
  EvolutionConfig cfg;
  cfg.dt = 1.0;
  try {
    evolve_halfplane(bi, u0, cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::configuration);
    CHECK(e.invariant() == "CFL violation");
  }
}

TEST_CASE("front tracking helpers") {
  UniformGrid x = UniformGrid::spanning(-10.0, 10.0, 1.0);
  std::vector<double> row(x.count);
  for (std::size_t i = 0; i < x.count; ++i) row[i] = std::max(0.0, 1.0 - std::abs(x.at(i)) / 8.0);
  CHECK(front_radius(x, row, 0.5) == doctest::Approx(4.0));
  CHECK(std::isnan(front_radius(x, row, 2.0)));

  std::vector<double> t, r;
  for (int k = 0; k < 50; ++k) {
    t.push_back(k);
    r.push_back(0.3 * k + 2.0);
  }
  CHECK(fit_slope(t, r, 10.0, 40.0) == doctest::Approx(0.3));
  FrontTrace tr;
  tr.t = {0, 1, 2};
  tr.radius = {0, 1, 2};
  CHECK_THROWS_AS(fit_front(tr), Error);
}

TEST_CASE("small sub-threshold data die out like the heat flow") {
  auto ig = Reaction::ignition(0.3);
  BallData ball{0.3, 2.0, 0.0, 3.0};
  ExperimentGrid g{40.0, 40.0, 0.5, 100.0, 1.0};
  auto res = extinction_experiment(ig, Boundary::dirichlet(), ball, g);
  CHECK(res.sup_final == doctest::Approx(res.heat_kernel_estimate).epsilon(0.1));
  CHECK(res.heat_kernel_estimate < 1e-3);
  CHECK(res.outcome == RunOutcome::extinct);

  auto bi = Reaction::cubic_bistable(0.25);
  auto r2 = extinction_experiment(bi, Boundary::dirichlet(), {0.25, 2.0, 0.0, 3.0}, g);
  CHECK(r2.outcome == RunOutcome::extinct);

  auto r0 = extinction_experiment(ig, Boundary::dirichlet(), {0.0, 2.0, 0.0, 3.0}, g);
  CHECK(r0.outcome == RunOutcome::extinct);
  CHECK(r0.sup_final == 0.0);
}

TEST_CASE("ball of radius 5 at the threshold stays above 1e-3 at t = 60") {
  auto ig = Reaction::ignition(0.3);
  ExperimentGrid g{60.0, 60.0, 0.5, 60.0, 1.0};
  auto res = extinction_experiment(ig, Boundary::dirichlet(), {0.3, 5.0, 0.0, 5.0}, g);
  CHECK(res.sup_final == doctest::Approx(res.heat_kernel_estimate).epsilon(0.05));
  CHECK(res.sup_final > 1e-2);
}

TEST_CASE("supercritical data invade") {
  auto ig = Reaction::ignition(0.3);
  ExperimentGrid g{70.0, 70.0, 0.5, 60.0, 1.0};
  InvasionOptions opt;
  auto res = invasion_experiment(ig, Boundary::dirichlet(), {0.6, 10.0, 0.0, 11.0}, g, opt);
  CHECK_FALSE(res.halted);
  CHECK(res.outcome == RunOutcome::invaded);

  auto kpp = Reaction::kpp();
  ExperimentGrid gk{80.0, 80.0, 0.5, 40.0, 1.0};
  opt.smooth_bump = true;
  auto hk = invasion_experiment(kpp, Boundary::dirichlet(), {0.01, 2.0, 0.0, 5.0}, gk, opt);
  CHECK(hk.outcome == RunOutcome::invaded);
}
