#pragma once

#include <string>
#include <vector>

#include "greenexp/coefficient.hpp"

namespace greenexp {

// Built-in coefficient fields anchoring the test suite.
std::vector<std::string> preset_names();
ProblemSpec preset(const std::string& name);

}  // namespace greenexp
