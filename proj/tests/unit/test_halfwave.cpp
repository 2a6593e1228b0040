#include <doctest.h>

#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/halfwave.hpp"
#include "frontlab/wave1d.hpp"

using namespace frontlab;

TEST_CASE("subsolution v") {
  auto kpp = Reaction::kpp();
  auto v = subsolution_v(kpp, Boundary::dirichlet());
  CHECK(v.ell0 == 0.0);
  CHECK(v(0.0) == 0.0);
  CHECK(v.ell1 == doctest::Approx(M_PI / std::sqrt(2.0)).epsilon(1e-3));
  CHECK(v.discrete_margin >= -1e-6);

  auto vr = subsolution_v(kpp, Boundary::robin(1.0));
  CHECK(vr.ell0 == doctest::Approx(std::atan(std::sqrt(0.5)) / std::sqrt(0.5)).epsilon(1e-3));
  CHECK(vr(0.0) > 0.0);
  CHECK(vr.ell1 == doctest::Approx(M_PI / (2.0 * std::sqrt(0.5)) - vr.ell0).epsilon(1e-3));
}

TEST_CASE("window difference") {
  auto kpp = Reaction::kpp();
  auto psi = supersolution_psi(kpp, Boundary::dirichlet(), 2.2, 30.0, 30.0, 0.0, 0.5);
  CHECK(window_difference(psi.psi, psi.psi) == 0.0);
  CHECK(psi.min_dy >= 0.0);
  CHECK(psi.max_dx <= 0.0);
  CHECK(psi.right_sup < 1e-2);
}

TEST_CASE("shift pick is monotone in the shift") {
  auto kpp = Reaction::kpp();
  auto p = pick_shift(kpp, Boundary::dirichlet(), 2.2, 40.0, 40.0, 0.5);
  CHECK(std::abs(p.pin_value - 0.5) < 1e-4);
  REQUIRE(p.probes.size() >= 5);
  for (std::size_t k = 1; k < p.probes.size(); ++k) {
    if (p.probes[k].first > p.probes[k - 1].first)
      CHECK(p.probes[k].second <= p.probes[k - 1].second + 1e-10);
  }
  const Field& u = p.box.field;
  auto v = subsolution_v(kpp, Boundary::dirichlet());
  CHECK(u.sample(-20.0, v.ell1) > 0.5);
  CHECK(u.sample(20.0, v.ell1) < 0.5);
  CHECK(p.box.sandwich_low >= -1e-8);
  CHECK(p.box.sandwich_high <= 1e-8);
  CHECK(p.box.relax_violation <= 1e-12);
}

TEST_CASE("monostable half-plane wave") {
  auto kpp = Reaction::kpp();
  MonostableOptions opt;
  opt.box_schedule = {{40.0, 40.0}, {50.0, 50.0}};
  auto w = monostable_halfplane_wave(kpp, Boundary::dirichlet(), 2.2, opt);
  CHECK(w.violation() == "");
  CHECK(w.interior_min > 0.0);
  CHECK(w.interior_max < 1.0);
  try {
    monostable_halfplane_wave(kpp, Boundary::dirichlet(), 1.0, opt);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.invariant() == "no wave at this speed");
  }
}

TEST_CASE("ignition half-plane wave from strip limits") {
  auto ig = Reaction::ignition(0.3);
  StripLimitOptions opt;
  opt.L_schedule = {30.0, 45.0};
  opt.require_stable = false;
  auto w = ignition_bistable_halfplane_wave(ig, Boundary::dirichlet(), opt);
  CHECK(w.violation() == "");
  CHECK(w.window_deltas.size() == 1);
  double cstar = wave_speed_bistable_ignition(ig).speed;
  CHECK(std::abs(w.speed - cstar) / cstar < 0.05);
  CHECK(std::abs(w.pin_value - w.phi(1.0) / 2.0) < 1e-3);
  CHECK_THROWS_AS(ignition_bistable_halfplane_wave(Reaction::kpp(), Boundary::dirichlet(), opt), Error);
}
