#include <doctest.h>

#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/parabolic.hpp"
#include "frontlab/wave1d.hpp"

using namespace frontlab;

namespace {

double profile_residual(const Wave1D& w, const Reaction& r) {
  const auto& U = w.profile.values;
  double h = w.profile.grid.spacing, worst = 0.0;
  for (std::size_t i = 1; i + 1 < U.size(); ++i) {
    double res = (U[i + 1] - 2.0 * U[i] + U[i - 1]) / (h * h) + w.speed * (U[i + 1] - U[i - 1]) / (2.0 * h) + r(U[i]);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace

TEST_CASE("cubic bistable speed matches the closed form") {
  for (double th : {0.1, 0.25, 0.45}) {
    auto w = wave_speed_bistable_ignition(Reaction::cubic_bistable(th));
    CHECK(w.speed == doctest::Approx(std::sqrt(2.0) * (0.5 - th)).epsilon(1e-6));
  }
  double c25 = wave_speed_bistable_ignition(Reaction::cubic_bistable(0.25)).speed;
  double c45 = wave_speed_bistable_ignition(Reaction::cubic_bistable(0.45)).speed;
  CHECK(c45 < c25);
  CHECK(c45 > 0.0);
}

TEST_CASE("speed classification brackets c*") {
  auto r = Reaction::cubic_bistable(0.25);
  CHECK(classify_speed(r, 0.2) != classify_speed(r, 0.5));
  auto s = bistable_ignition_speed(r);
  CHECK(s.history.size() > 10);
  CHECK(s.wave.speed > 0.0);
}

TEST_CASE("ignition wave") {
  auto r = Reaction::ignition(0.3);
  auto w = wave_speed_bistable_ignition(r);
  CHECK(w.speed == doctest::Approx(0.4953702).epsilon(1e-5));
  CHECK(w(-50.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(w(80.0) < 1e-6);
  CHECK(w(0.0) == doctest::Approx(0.5).epsilon(1e-6));
  for (std::size_t i = 1; i < w.profile.values.size(); ++i)
    REQUIRE(w.profile.values[i] <= w.profile.values[i - 1]);
}

TEST_CASE("ignition speed agrees with a parabolic front") {
  auto r = Reaction::ignition(0.3);
  LineFrontOptions opt;
  opt.h = 0.1;
  opt.T = 100.0;
  auto tr = front_speed_1d(r, opt);
  CHECK(tr.fit_speed == doctest::Approx(wave_speed_bistable_ignition(r).speed).epsilon(0.01));
}

TEST_CASE("kpp minimal speed") {
  auto r = Reaction::kpp();
  auto m = minimal_speed_monostable(r, 0.1, 200.0);
  CHECK(m.linear_bound == 2.0);
  CHECK(m.measured == doctest::Approx(2.0).epsilon(0.05));
  REQUIRE(m.window_speeds.size() == 3);
  CHECK(m.window_speeds[1] >= m.window_speeds[0]);
  CHECK(m.window_speeds[2] >= m.window_speeds[1]);
}

TEST_CASE("kpp profiles at fixed speed") {
  auto r = Reaction::kpp();
  auto w = wave_profile_at_speed(r, 2.5);
  CHECK(w(0.0) == doctest::Approx(0.5).epsilon(1e-6));
  for (std::size_t i = 1; i < w.profile.values.size(); ++i)
    REQUIRE(w.profile.values[i] <= w.profile.values[i - 1]);
  CHECK(profile_residual(w, r) < 1e-4);
  try {
    wave_profile_at_speed(r, 1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.invariant() == "no monotone connection");
  }
}

TEST_CASE("epsilon modification") {
  auto ig = Reaction::ignition(0.3);
  CHECK(epsilon_modify(ig, 0.0).name() == ig.name());
  auto ige = epsilon_modify(ig, 0.05);
  CHECK(ige.lower_state() == -0.05);
  for (double s = 0.0; s <= 1.0; s += 0.01) REQUIRE(ige(s) == doctest::Approx(ig(s)).epsilon(1e-14));

  auto bi = Reaction::cubic_bistable(0.25);
  auto bie = epsilon_modify(bi, 0.05);
  double dev = 0.0;
  for (int k = 0; k <= 10000; ++k) {
    double s = -0.05 + 1.05 * k / 10000.0;
    double base = s >= 0.0 ? bi(s) : 0.0;
    REQUIRE(bie(s) <= base + 1e-15);
    dev = std::max(dev, std::abs(bie(s) - base));
  }
  CHECK(dev < 0.0025);
}

TEST_CASE("lattice wave solves the moving-frame recurrence") {
  auto r = Reaction::kpp();
  double c = 2.2, h = 0.5;
  auto w = lattice_wave(r, c, h, -40.0, 161, 0.0);
  const auto& U = w.values;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < U.size(); ++i) {
    REQUIRE(U[i] <= U[i - 1]);
    if (U[i] < 1.0 - 1e-6 && U[i] > 1e-12) {
      double res = (U[i + 1] - 2.0 * U[i] + U[i - 1]) / (h * h) + c * (U[i + 1] - U[i - 1]) / (2.0 * h) + r(U[i]);
      worst = std::max(worst, std::abs(res));
    }
  }
  CHECK(worst < 1e-6);
  auto moved = lattice_wave(r, c, h, -40.0, 161, 5.0);
  CHECK(moved(5.0) > w(5.0));
}
