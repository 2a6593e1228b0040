#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/shooting.hpp"

using namespace frontlab;
using boost::math::quadrature::gauss_kronrod;

TEST_CASE("shot classification") {
  auto bi = Reaction::cubic_bistable(0.25);
  auto D = Boundary::dirichlet();
  double abar = critical_slope(bi, D);
  CHECK(shoot(bi, D, 0.0, 1e-3).classification == TrajectoryClass::degenerate_zero);
  CHECK(shoot(bi, D, 1.1 * abar, 1e-3).classification == TrajectoryClass::exits_above_one);

  auto ig = Reaction::ignition(0.3);
  double a = 0.5 * critical_slope(ig, D);
  auto m = length_map(ig, D, a);
  CHECK(m.classification == TrajectoryClass::returns_to_boundary);
  CHECK(std::isfinite(m.K));
  CHECK(m.K < m.L_return);
}

TEST_CASE("first integral is conserved at fourth order") {
  auto r = Reaction::cubic_bistable(0.25);
  auto D = Boundary::dirichlet();
  double a = 0.9 * critical_slope(r, D);
  ShootOptions opt;
  opt.record = true;
  opt.y_max = 20.0;
  double e1 = first_integral_residual(shoot(r, D, a, 1e-2, opt), r);
  double e2 = first_integral_residual(shoot(r, D, a, 5e-3, opt), r);
  CHECK(first_integral_residual(shoot(r, D, a, 1e-3, opt), r) < 1e-8);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
  CHECK(first_integral_residual(shoot(r, D, 0.0, 1e-3, opt), r) == 0.0);
}

TEST_CASE("critical slope") {
  auto D = Boundary::dirichlet();
  CHECK(critical_slope(Reaction::cubic_bistable(0.25), D) == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-9));
  CHECK(critical_slope(Reaction::kpp(), D) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-9));

  auto ig = Reaction::ignition(0.3);
  auto R = Boundary::robin(1.0);
  double s = critical_boundary_value(ig, R);
  CHECK(std::abs(lambda_function(ig, s) - 1.0) < 1e-9);
  CHECK(critical_slope(ig, R) == doctest::Approx(s).epsilon(1e-12));
  CHECK(lambda_function(ig, 1.0) == 0.0);
  CHECK(lambda_function(Reaction::cubic_bistable(0.25), 1.0) == 0.0);
}

TEST_CASE("lambda against an independent quadrature") {
  auto ig = Reaction::ignition(0.3);
  for (double s : {0.31, 0.5, 0.8}) {
    double mass = gauss_kronrod<double, 61>::integrate([&](double t) { return ig(t); }, s, 1.0, 15, 1e-13);
    CHECK(lambda_function(ig, s) == doctest::Approx(2.0 * mass / (s * s)).epsilon(1e-10));
  }
  CHECK(lambda_function(ig, 0.35) > lambda_function(ig, 0.5));
  CHECK(lambda_function(ig, 0.5) > lambda_function(ig, 0.6));
}

TEST_CASE("half-line steady states") {
  auto bi = Reaction::cubic_bistable(0.25);
  auto p = halfline_steady_state(bi, Boundary::dirichlet(), 40.0);
  CHECK(p.front() == 0.0);
  CHECK(p(40.0) > 0.999);
  for (std::size_t k = 1; k < p.values.size(); ++k) REQUIRE(p.values[k] >= p.values[k - 1]);
  CHECK(p.max() < 1.0);

  auto ig = Reaction::ignition(0.3);
  auto R = Boundary::robin(1.0);
  auto q = halfline_steady_state(ig, R, 40.0);
  CHECK(q.front() == doctest::Approx(critical_boundary_value(ig, R)).epsilon(1e-9));
  CHECK(q.front() > 0.0);
  CHECK(q.front() < 1.0);

  auto k = halfline_steady_state(Reaction::kpp(), Boundary::dirichlet(), 20.0);
  double h = k.grid.spacing;
  CHECK((k.values[1] - k.values[0]) / h == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-3));
  for (std::size_t i = 1; i + 1 < k.values.size(); ++i)
    REQUIRE(k.values[i + 1] - 2.0 * k.values[i] + k.values[i - 1] <= 1e-12);
}

TEST_CASE("length map near the critical slope grows logarithmically") {
  auto r = Reaction::cubic_bistable(0.25);
  auto D = Boundary::dirichlet();
  double abar = critical_slope(r, D);
  double K3 = turning_length_integral(r, D, abar - 1e-3);
  double K6 = turning_length_integral(r, D, abar - 1e-6);
  double K9 = turning_length_integral(r, D, abar - 1e-9);
  // the approach to the saddle at 1 costs ln(1/gap) / (2 sqrt(-f'(1)))
  double slope = std::log(1e3) / (2.0 * std::sqrt(0.75));
  CHECK(K6 - K3 == doctest::Approx(slope).epsilon(0.01));
  CHECK(K9 - K6 == doctest::Approx(slope).epsilon(0.01));
  CHECK(K6 == doctest::Approx(10.41).epsilon(1e-3));
}

TEST_CASE("length map integral and event forms agree") {
  auto ig = Reaction::ignition(0.3);
  auto D = Boundary::dirichlet();
  double a = 0.5 * critical_slope(ig, D);
  auto m = length_map(ig, D, a);
  CHECK(std::abs(turning_length_integral(ig, D, a) - m.K) < 1e-6);
  CHECK(turning_value(ig, D, a) == doctest::Approx(m.s_max).epsilon(1e-8));
}

TEST_CASE("ignition small-slope asymptotics") {
  auto ig = Reaction::ignition(0.3);
  auto D = Boundary::dirichlet();
  double abar = critical_slope(ig, D);
  for (double frac : {1e-1, 1e-2}) {
    double a = frac * abar;
    auto m = length_map(ig, D, a);
    // time spent above theta, with the turning singularity removed by s = s_max - w^2
    double smax = turning_value(ig, D, a);
    double Kt = gauss_kronrod<double, 61>::integrate(
        [&](double w) {
          if (w < 1e-5) return std::sqrt(2.0 / ig(smax));
          double gap = a * a - 2.0 * ig.antiderivative(smax - w * w);
          return 2.0 * w / std::sqrt(gap);
        },
        0.0, std::sqrt(smax - 0.3), 15, 1e-12);
    CHECK(m.L_return == doctest::Approx(2.0 * 0.3 / a + 2.0 * Kt).epsilon(1e-6));
  }
}

TEST_CASE("return length at the turn matches the shot") {
  auto ig = Reaction::ignition(0.3);
  auto D = Boundary::dirichlet();
  double a = 0.5 * critical_slope(ig, D);
  auto m = length_map(ig, D, a);
  CHECK(return_length_at_turn(ig, D, m.s_max) == doctest::Approx(m.L_return).epsilon(1e-6));
  CHECK_THROWS_AS(return_length_at_turn(ig, D, 1.0), Error);
}

TEST_CASE("strip steady states are ordered") {
  auto ig = Reaction::ignition(0.3);
  auto D = Boundary::dirichlet();
  auto s40 = strip_steady_states(ig, D, 40.0);
  REQUIRE(s40.phi_L.values.size() == s40.psi_L.values.size());
  for (std::size_t k = 1; k + 1 < s40.phi_L.values.size(); ++k) REQUIRE(s40.psi_L.values[k] < s40.phi_L.values[k]);
  CHECK(s40.A_ODE_estimate < 40.0);
  CHECK(length_map(ig, D, s40.alpha_psi).L_return == doctest::Approx(40.0).epsilon(1e-5));

  auto s30 = strip_steady_states(ig, D, 30.0);
  auto s60 = strip_steady_states(ig, D, 60.0);
  CHECK(s60.psi_L.max() - 0.3 < s30.psi_L.max() - 0.3);
  CHECK(s60.psi_L.max() > 0.3);

  auto phi = halfline_steady_state(ig, D, 40.0);
  auto err = [&](const StripStateReport& s) {
    double e = 0.0;
    for (std::size_t k = 0; k < s.phi_L.values.size(); ++k) {
      double y = s.phi_L.grid.at(k);
      if (y <= s.L / 2.0) e = std::max(e, std::abs(s.phi_L.values[k] - phi(y)));
    }
    return e;
  };
  CHECK(err(s60) < err(s40));
  CHECK(err(s40) < err(s30));
}

TEST_CASE("energy ordering") {
  auto ig = Reaction::ignition(0.3);
  auto s = strip_steady_states(ig, Boundary::dirichlet(), 60.0);
  CHECK(s.energy_zero == 0.0);
  CHECK(s.energy_phi < 0.0);
  CHECK(s.energy_psi > 0.0);
  CHECK(energy(s.phi_L, ig) == doctest::Approx(s.energy_phi));
}

TEST_CASE("no interval states below the existence length") {
  auto ig = Reaction::ignition(0.3);
  auto D = Boundary::dirichlet();
  auto [amid, Lmin] = minimal_return_length(ig, D);
  CHECK(amid > 0.0);
  CHECK_THROWS_AS(strip_steady_states(ig, D, 0.5 * Lmin), Error);
}

TEST_CASE("radial subsolution") {
  auto bi = Reaction::cubic_bistable(0.25);
  auto v = radial_subsolution(bi, 0.2, 0.0);
  CHECK(std::isfinite(v.support()));
  CHECK(v.support() > 0.0);
  CHECK(v.min_residual(bi) >= -1e-6);
  auto w = radial_subsolution(bi, 0.05, 0.0);
  CHECK(w.support() > v.support());
}
