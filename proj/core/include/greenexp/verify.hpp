#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace greenexp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;   // deterministic metrics, no timings
  double seconds = 0;   // console reporting only
};

// Criterion ids for a named suite: all, symbolic (1-4), numeric (5-10),
// disk-identity (5,6). Throws std::invalid_argument for unknown names.
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id);

// Runs a suite, printing one pass/fail line per criterion to `log`.
std::vector<CriterionResult> run_suite(const std::string& suite, std::ostream& log);

}  // namespace greenexp
