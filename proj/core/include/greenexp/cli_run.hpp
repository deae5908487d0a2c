#pragma once

#include <string>

namespace greenexp {

// One resolved command-line invocation. `y_csv` empty means the command's
// default base point handling: origin for expand/green, a lattice scan for
// robin.
struct RunConfig {
  std::string command;    // expand | green | robin | verify | selftest
  std::string spec_path;  // exclusive with preset_name
  std::string preset_name;
  std::string y_csv;
  int order = 1;
  int grid = 257;
  std::string out_dir;            // empty: console output only
  std::string backend = "exact";  // expand listing backend: exact | float
  double tol = 0;                 // > 0: iterative solve with this tolerance
  std::string suite = "all";
};

// Executes the command, writing artifacts under out_dir when set. Returns the
// process exit code: 0 success / all pass, 1 runtime or verification failure,
// 2 configuration error. Error text goes to stderr.
int run(const RunConfig& cfg);

}  // namespace greenexp
