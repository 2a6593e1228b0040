#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "frontlab/acceptance.hpp"
#include "frontlab/error.hpp"
#include "frontlab/experiments.hpp"

using namespace frontlab;

namespace {

int run_command(const std::string& cfg, const std::string& output) {
  RunReport rep = run_config_file(cfg, output);
  std::cout << rep.experiment << ": " << rep.status;
  if (!rep.invariant.empty()) std::cout << " [" << rep.invariant << "] " << rep.message;
  std::cout << "\n";
  for (const auto& [k, v] : rep.results) std::cout << "  " << k << " = " << v << "\n";
  for (const auto& a : rep.artifacts) std::cout << "  wrote " << a << "\n";
  std::cout << "  manifest: " << rep.output_dir << "/manifest.txt\n";
  return rep.exit_code;
}

int suite_command(bool break_cfl, const std::string& only, const std::string& work) {
  AcceptanceOptions opt;
  opt.break_cfl = break_cfl;
  opt.work_dir = work;
  std::stringstream ss(only);
  std::string id;
  while (std::getline(ss, id, ','))
    if (!id.empty()) opt.only.push_back(id);
  int failed = 0;
  double total = 0.0;
  run_acceptance(opt, [&](const AcceptanceRow& r) {
    std::cout << format_row(r) << std::endl;
    failed += r.pass ? 0 : 1;
    total += r.seconds;
  });
  std::printf("%d row(s) failed, %.1f s total\n", failed, total);
  return failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frontlab: reaction-diffusion fronts in the half-plane"};
  app.require_subcommand(1);

  std::string cfg, output;
  auto* run = app.add_subcommand("run", "run one configured experiment");
  run->add_option("config", cfg, "config file")->required();
  run->add_option("--output", output, "override run.output");

  bool break_cfl = false;
  std::string only, work = "acceptance_runs";
  auto* suite = app.add_subcommand("suite", "run the acceptance battery");
  suite->add_flag("--break-cfl", break_cfl, "step above the monotone bound (negative control)");
  suite->add_option("--only", only, "comma-separated row ids");
  suite->add_option("--work", work, "directory for suite artifacts");

  std::string what, dir;
  auto* exp = app.add_subcommand("export", "re-render artifacts of a finished run");
  exp->add_option("--what", what, "profile or field")->required()->check(CLI::IsMember({"profile", "field"}));
  exp->add_option("--run", dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*run) return run_command(cfg, output);
    if (*suite) return suite_command(break_cfl, only, work);
    for (const auto& f : export_run(what, dir)) std::cout << f << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error [" << e.invariant() << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
