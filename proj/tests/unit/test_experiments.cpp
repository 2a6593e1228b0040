#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "frontlab/experiments.hpp"
#include "frontlab/io.hpp"

using namespace frontlab;
namespace fs = std::filesystem;

namespace {

std::string out_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("frontlab_runs_" + name);
  fs::remove_all(p);
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("every experiment has a schema") {
  for (const auto& name : experiment_names()) {
    auto keys = experiment_schema(name);
    CHECK(keys.size() >= 4);
  }
  CHECK(experiment_names().size() == 12);
}

TEST_CASE("exit code classes") {
  CHECK(exit_code_for(ErrorKind::assertion) == 2);
  CHECK(exit_code_for(ErrorKind::numerical) == 2);
  CHECK(exit_code_for(ErrorKind::configuration) == 3);
  CHECK(exit_code_for(ErrorKind::invalid_argument) == 3);
}

TEST_CASE("steady run writes a manifest") {
  std::string dir = out_dir("steady");
  auto rep = run_experiment(parse_config("experiment = steady\n[model]\nreaction = cubic_bistable(theta=0.25)\n"), dir);
  CHECK(rep.exit_code == 0);
  CHECK(rep.status == "ok");
  std::string manifest = slurp(dir + "/manifest.txt");
  CHECK(manifest.find("reaction = cubic_bistable(theta=0.25)") != std::string::npos);
  CHECK(manifest.find("[result]") != std::string::npos);
  CHECK(fs::exists(dir + "/profile.csv"));

  // the manifest is itself a runnable config
  auto again = run_config_file(dir + "/manifest.txt", out_dir("steady_again"));
  CHECK(again.exit_code == 0);
}

TEST_CASE("sub-threshold data go extinct") {
  std::string dir = out_dir("threshold");
  auto rep = run_experiment(parse_config(
      "experiment = threshold\n[grid]\nX = 40\nY = 40\nT = 100\n[params]\namplitude = 0.3\nradius = 2\ny_center = 3\n"),
      dir);
  CHECK(rep.exit_code == 0);
  CHECK(rep.result("mode") == "extinction");
  CHECK(rep.result("outcome") == "extinct");
  CHECK(slurp(dir + "/manifest.txt").find("outcome = extinct") != std::string::npos);
}

TEST_CASE("configuration errors exit with 3") {
  auto code_of = [](const std::string& text, const std::string& key) {
    try {
      run_experiment(parse_config(text), out_dir("bad"));
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find(key) != std::string::npos);
      return exit_code_for(e.kind());
    }
    return 0;
  };
  CHECK(code_of("experiment = steady\n[grid]\nspacing = 1\n", "grid.spacing") == 3);
  CHECK(code_of("experiment = nothing\n", "nothing") == 3);
  std::string dir = out_dir("bad_value");
  auto rep = run_experiment(parse_config("experiment = steady\n[params]\nY = wide\n"), dir);
  CHECK(rep.exit_code == 3);
  CHECK(fs::exists(dir + "/manifest.txt"));
}

TEST_CASE("hypothesis failures exit with 2") {
  auto rep = run_experiment(parse_config("experiment = validate\n[model]\nreaction = cubic_formula(theta=0.6)\n"),
                            out_dir("validate"));
  CHECK(rep.exit_code == 2);
  CHECK(rep.status == "assertion");
}

TEST_CASE("speed study and export") {
  std::string dir = out_dir("speed");
  auto rep = run_experiment(parse_config("experiment = speedstudy\n[params]\nL = 30, 40\n"), dir);
  REQUIRE(rep.exit_code == 0);
  Table t = read_table_csv(dir + "/speedstudy.csv");
  CHECK(t.header == std::vector<std::string>{"L", "c_L", "c_star", "gap"});
  CHECK(t.rows.size() == 2);
  CHECK(fs::exists(dir + "/speedstudy.svg"));

  std::string sdir = out_dir("stripwave");
  auto sw = run_experiment(parse_config("experiment = stripwave\n[params]\nL = 30\nmode = fixed\nc = 0.2\n"), sdir);
  REQUIRE(sw.exit_code == 0);
  auto files = export_run("field", sdir);
  CHECK_FALSE(files.empty());
  auto prof = export_run("profile", sdir);
  CHECK_FALSE(prof.empty());
}
