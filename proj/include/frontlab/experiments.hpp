#pragma once

#include <string>
#include <utility>
#include <vector>

#include "frontlab/config.hpp"
#include "frontlab/error.hpp"

namespace frontlab {

const std::vector<std::string>& experiment_names();
std::vector<KeySpec> experiment_schema(const std::string& name);

struct RunReport {
  std::string experiment;
  std::string output_dir;
  std::string status = "ok";  // ok, assertion, error
  std::string invariant;
  std::string message;
  int exit_code = 0;
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<std::string> artifacts;

  /// The value recorded under `key`, or "" when absent.
  std::string result(const std::string& key) const;
};

/// 0 ok, 2 assertion or numerical failure, 3 configuration or argument error.
int exit_code_for(ErrorKind kind);

/// Runs one configured experiment. Every run writes `manifest.txt`: the
/// resolved configuration followed by a `[result]` section.
RunReport run_experiment(const RawConfig& raw, const std::string& output_override = "");
RunReport run_config_file(const std::string& path, const std::string& output_override = "");

/// Re-renders the artifacts of a finished run; returns the files written.
std::vector<std::string> export_run(const std::string& what, const std::string& run_dir);

}  // namespace frontlab
