#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "frontlab/config.hpp"
#include "frontlab/error.hpp"
#include "frontlab/io.hpp"

using namespace frontlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("frontlab_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<KeySpec> schema() {
  return {{"run.experiment", "steady", ""},
          {"model.reaction", "kpp()", ""},
          {"model.rho", "0", ""},
          {"grid.h", "0.5", ""},
          {"params.L", "30, 45", ""},
          {"params.flag", "false", ""}};
}

}  // namespace

TEST_CASE("config parsing") {
  auto raw = parse_config("experiment = steady  # trailing\n\n[model]\nreaction = ignition(theta=0.3)\n[grid]\nh=0.25\n");
  REQUIRE(raw.entries.size() == 3);
  CHECK(raw.entries[0].qualified() == "run.experiment");
  CHECK(raw.entries[0].value == "steady");
  ResolvedConfig cfg(raw, schema());
  CHECK(cfg.num("grid.h") == 0.25);
  CHECK(cfg.given("grid.h"));
  CHECK_FALSE(cfg.given("params.L"));
  CHECK(cfg.list("params.L") == std::vector<double>{30.0, 45.0});
  CHECK_FALSE(cfg.flag("params.flag"));
  CHECK(cfg.reaction().name() == "ignition(theta=0.3)");
  CHECK(cfg.boundary().is_dirichlet());
}

TEST_CASE("config errors name the key") {
  auto raw = parse_config("[grid]\nspacing = 0.5\n", "bad.cfg");
  try {
    ResolvedConfig cfg(raw, schema());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::configuration);
    CHECK(std::string(e.what()).find("grid.spacing") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[grid]\nh = 1\nh = 2\n"), Error);
  CHECK_THROWS_AS(parse_config("just words\n"), Error);
  CHECK_THROWS_AS(parse_config("[grid\nh = 1\n"), Error);
  ResolvedConfig cfg(parse_config("[grid]\nh = x\n"), schema());
  CHECK_THROWS_AS(cfg.num("grid.h"), Error);
}

TEST_CASE("resolved text parses back to itself") {
  ResolvedConfig cfg(parse_config("[params]\nL = 60\n"), schema());
  std::string text = cfg.text();
  ResolvedConfig again(parse_config(text + "\n[result]\nstatus = ok\n"), schema());
  CHECK(again.text() == text);
  CHECK(again.list("params.L") == std::vector<double>{60.0});
}

TEST_CASE("reaction and boundary specs") {
  CHECK(parse_reaction("kpp()").kind() == ReactionClass::monostable);
  CHECK(parse_reaction("cubic_bistable(theta=0.2)").theta() == 0.2);
  CHECK(parse_reaction(" ignition( theta = 0.4 ) ").theta() == 0.4);
  CHECK_THROWS_AS(parse_reaction("cubic_bistable(eta=0.2)"), Error);
  CHECK_THROWS_AS(parse_reaction("logistic()"), Error);
  CHECK(parse_boundary("0").is_dirichlet());
  CHECK(parse_boundary("1.5").rho() == 1.5);
  CHECK(parse_boundary("neumann").is_neumann());
  CHECK(parse_boundary("inf").is_neumann());
  CHECK_THROWS_AS(parse_boundary("-1"), Error);
}

TEST_CASE("table reaction from csv") {
  auto dir = scratch("table");
  {
    std::ofstream out(dir / "f.csv");
    out << "# s,f\n";
    for (int k = 0; k <= 20; ++k) {
      double s = k / 20.0;
      out << s << "," << s * (1.0 - s) << "\n";
    }
  }
  auto r = parse_reaction("table(path=" + (dir / "f.csv").string() + ")");
  CHECK(r(0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(parse_reaction("table(path=" + (dir / "missing.csv").string() + ")"), Error);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("csv round trips") {
  auto dir = scratch("csv");
  Field u;
  u.x = UniformGrid::spanning(-2.0, 2.0, 0.5);
  u.y = UniformGrid::spanning(0.0, 1.0, 0.5);
  for (std::size_t j = 0; j < u.y.count; ++j)
    for (std::size_t i = 0; i < u.x.count; ++i) u.values.push_back(std::sin(u.x.at(i)) + u.y.at(j));
  write_field_csv((dir / "field.csv").string(), u);
  Field v = read_field_csv((dir / "field.csv").string());
  CHECK(v.nx() == u.nx());
  CHECK(v.ny() == u.ny());
  CHECK(max_abs_difference(u.values, v.values) < 1e-11);

  Profile p{UniformGrid::spanning(0.0, 2.0, 0.25), {}, std::nullopt};
  for (std::size_t k = 0; k < p.grid.count; ++k) p.values.push_back(p.grid.at(k) * p.grid.at(k));
  write_profile_csv((dir / "p.csv").string(), p);
  Profile q = read_profile_csv((dir / "p.csv").string());
  CHECK(max_abs_difference(p.values, q.values) < 1e-11);

  Table t;
  t.header = {"a", "b"};
  t.add({1.0, 2.5});
  t.add_text({"x", "y"});
  write_table_csv((dir / "t.csv").string(), t);
  Table s = read_table_csv((dir / "t.csv").string());
  CHECK(s.header == t.header);
  CHECK(s.rows == t.rows);

  write_heatmap_svg((dir / "u.svg").string(), u, "u");
  write_line_svg((dir / "l.svg").string(), {{"p", {0, 1, 2}, {0, 1, 4}}}, "y", "p");
  CHECK(fs::file_size(dir / "u.svg") > 100);
  CHECK(fs::file_size(dir / "l.svg") > 100);
  CHECK_THROWS_AS(read_field_csv((dir / "none.csv").string()), Error);
}
