#pragma once

#include <functional>
#include <string>
#include <vector>

namespace frontlab {

struct AcceptanceRow {
  std::string id;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::string tolerance;
  std::string measured;
  /// Rows whose tolerance no correct solver can meet.
  bool known_unattainable = false;
};

struct AcceptanceOptions {
  /// Row ids to run (empty runs all): "1" .. "13" and "C" for the comparison row.
  std::vector<std::string> only;
  /// Negative control: steps the comparison row and the box relaxation above the monotone bound.
  bool break_cfl = false;
  std::string work_dir = "acceptance_runs";
};

std::vector<AcceptanceRow> run_acceptance(const AcceptanceOptions& opt,
                                          const std::function<void(const AcceptanceRow&)>& on_row = {});

std::string format_row(const AcceptanceRow& row);

}  // namespace frontlab
