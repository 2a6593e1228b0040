#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/reaction.hpp"

using namespace frontlab;
using boost::math::quadrature::gauss_kronrod;

namespace {

double quad(const Reaction& r, double a, double b) {
  return gauss_kronrod<double, 61>::integrate([&](double s) { return r(s); }, a, b, 15, 1e-13);
}

bool check_passed(const ClassReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c.passed;
  FAIL("missing check " << name);
  return false;
}

}  // namespace

TEST_CASE("cubic bistable sign pattern and integral") {
  auto r = Reaction::cubic_bistable(0.25);
  CHECK(r(0.25) == doctest::Approx(0.0));
  CHECK(r(0.1) < 0.0);
  CHECK(r(0.5) > 0.0);
  CHECK(quad(r, 0.0, 0.25) < 0.0);
  CHECK(quad(r, 0.0, 1.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-10));
  CHECK(r.antiderivative(1.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-10));
  CHECK(r.antiderivative(0.0) == 0.0);
}

TEST_CASE("cubic bistable at theta = 1/2 is rejected") {
  try {
    Reaction::cubic_bistable(0.5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.invariant() == "violates (B3)");
  }
}

TEST_CASE("kpp values and slopes") {
  auto r = Reaction::kpp();
  CHECK(r(0.0) == 0.0);
  CHECK(r(1.0) == 0.0);
  CHECK(r(0.5) == doctest::Approx(0.25));
  CHECK(r.left_slope() == 1.0);
  CHECK(r.right_slope() == -1.0);
  CHECK(r.derivative(1e-9) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.antiderivative(1.0) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("ignition vanishes below threshold") {
  auto r = Reaction::ignition(0.3);
  CHECK(r(0.2) == 0.0);
  CHECK(r.antiderivative(0.3) == 0.0);
  double slope = (r(0.3 + 1e-7) - r(0.3)) / 1e-7;
  CHECK(slope == doctest::Approx(0.7).epsilon(1e-5));
  double closed = std::pow(0.7, 3) / 6.0;
  CHECK(quad(r, 0.3, 1.0) == doctest::Approx(closed).epsilon(1e-10));
  CHECK(r.antiderivative(1.0) == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("vartheta") {
  CHECK(vartheta(Reaction::kpp()) == 0.0);
  CHECK(vartheta(Reaction::ignition(0.3)) == 0.3);
  // root of 3 s^2 - 4 (1 + theta) s + 6 theta in (theta, 1)
  double th = 0.25;
  double b = 4.0 * (1.0 + th), disc = b * b - 72.0 * th;
  double root = (b - std::sqrt(disc)) / 6.0;
  double v = vartheta(Reaction::cubic_bistable(th));
  CHECK(v == doctest::Approx(root).epsilon(1e-9));
  CHECK(v == doctest::Approx(0.392375).epsilon(1e-5));
}

TEST_CASE("slope bounds") {
  auto b = slope_bounds(Reaction::kpp());
  CHECK(b.mu == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(b.rho == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(mu_bound(Reaction::cubic_bistable(0.25)) > 0.0);
  CHECK(lipschitz_bound(Reaction::kpp()) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("hypothesis checks") {
  CHECK(validate(Reaction::cubic_bistable(0.25)).ok());
  CHECK(validate(Reaction::kpp()).ok());
  CHECK(validate(Reaction::ignition(0.3)).ok());

  auto bad = validate(Reaction::cubic_formula(0.6));
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(check_passed(bad, "(B3)"));
  CHECK(check_passed(bad, "(B1)"));
  CHECK(Reaction::cubic_formula(0.6).antiderivative(1.0) == doctest::Approx(-1.0 / 60.0).epsilon(1e-10));
}

TEST_CASE("table reaction reproduces its samples") {
  std::vector<double> s, f;
  auto ref = Reaction::cubic_bistable(0.25);
  for (int k = 0; k <= 40; ++k) {
    s.push_back(k / 40.0);
    f.push_back(ref(k / 40.0));
  }
  auto r = Reaction::table(s, f);
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(r(s[k]) == doctest::Approx(f[k]).epsilon(1e-12));
  CHECK(r(0.3) == doctest::Approx(ref(0.3)).epsilon(1e-2));
  CHECK_THROWS_AS(Reaction::table({0.0, 0.5}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(Reaction::table({0.0, 0.7, 0.5, 1.0}, {0.0, 0.1, 0.1, 0.0}), Error);
}
