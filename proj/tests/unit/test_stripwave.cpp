#include <doctest.h>

#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/stripwave.hpp"

using namespace frontlab;

namespace {

bool monotone_relaxation(const RelaxReport& r) { return r.monotone_violation <= 1e-12; }

}  // namespace

TEST_CASE("box wave bounds and symmetry") {
  auto ig = Reaction::ignition(0.3);
  auto D = Boundary::dirichlet();
  auto s = strip_setup(ig, D, 40.0, 0.5);
  auto w = solve_box_wave(s, ig, D, 60.0, 0.1);
  const Field& u = w.field;
  CHECK(monotone_relaxation(w.report.relax));
  CHECK(w.report.residual < 1e-8);
  for (std::size_t j = 0; j < u.ny(); ++j)
    for (std::size_t i = 0; i < u.nx(); ++i) {
      REQUIRE(u(i, j) >= -1e-12);
      REQUIRE(u(i, j) <= s.phi_L.values[j] + 1e-12);
    }
  CHECK(symmetry_defect(u) < 1e-8);
  CHECK(max_dx(u) <= 1e-10);
}

TEST_CASE("box waves are ordered in c") {
  auto ig = Reaction::ignition(0.3);
  auto D = Boundary::dirichlet();
  auto s = strip_setup(ig, D, 40.0, 0.5);
  auto slow = solve_box_wave(s, ig, D, 60.0, 0.1);
  auto fast = solve_box_wave(s, ig, D, 60.0, 0.3);
  CHECK(compare_in_c(slow.field, fast.field).ok);
  CHECK(compare_in_c(slow.field, slow.field).ok);
  auto bad = compare_in_c(fast.field, slow.field);
  CHECK_FALSE(bad.ok);
  CHECK(bad.worst > 0.0);
}

TEST_CASE("grid must align with the box") {
  auto ig = Reaction::ignition(0.3);
  CHECK_THROWS_AS(solve_box_wave(ig, Boundary::dirichlet(), 40.0, 60.2, 0.1, 0.5), Error);
}

TEST_CASE("pinned speed lies below c*") {
  auto ig = Reaction::ignition(0.3);
  auto D = Boundary::dirichlet();
  auto s = strip_setup(ig, D, 30.0, 0.5);
  auto p = pin_speed(s, ig, D, 60.0);
  CHECK(p.c_pinned > 0.0);
  CHECK(p.c_pinned < s.c_star + 2e-3);
  CHECK(p.residual < 1e-4);
}

TEST_CASE("strip wave and translation probe") {
  auto ig = Reaction::ignition(0.3);
  StripWaveOptions opt;
  opt.translation_probe = true;
  auto sw = strip_wave(ig, Boundary::dirichlet(), 30.0, 0.5, opt);
  CHECK(sw.c_L > 0.0);
  CHECK(sw.c_L <= sw.c_star + 2e-3);
  CHECK(std::abs(sw.translation_c - sw.c_L) < 2e-3);
  CHECK(min_dy(sw.field, 15.0) >= 0.0);
  const Field& u = sw.field;
  double worst = 1.0;
  for (std::size_t j = 0; j + 1 < u.ny() && u.y.at(j + 1) <= 15.0; ++j)
    for (std::size_t i = 0; i < u.nx(); ++i)
      if (std::abs(u.x.at(i)) <= 10.0) worst = std::min(worst, u(i, j + 1) - u(i, j));
  CHECK(worst > 0.0);
}

TEST_CASE("symmetric Robin strip wave") {
  auto ig = Reaction::ignition(0.3);
  auto sw = symmetric_strip_wave(ig, 1.0, 30.0, 0.5);
  CHECK(sw.symmetry_defect < 1e-8);
  CHECK(sw.c_L > 0.0);
  CHECK(sw.c_L <= sw.c_star + 2e-3);
  CHECK(sw.left_error < 1e-2);
}
