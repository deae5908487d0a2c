#include "greenexp/presets.hpp"

#include <stdexcept>

#include "greenexp/config_parse.hpp"

namespace greenexp {

namespace {

ProblemSpec from_text(const std::string& text) { return parse_spec_text(text); }

}  // namespace

std::vector<std::string> preset_names() {
  return {"identity", "anisotropic-linear", "diagonal-quadratic", "anisotropic-linear-3d"};
}

ProblemSpec preset(const std::string& name) {
  if (name == "identity")
    return from_text(
        "name = identity\n"
        "dimension = 2\n"
        "domain = unit-disk\n");
  if (name == "anisotropic-linear")
    return from_text(
        "name = anisotropic-linear\n"
        "dimension = 2\n"
        "domain = unit-disk\n"
        "K11 = 1 + x1\n"
        "K22 = 1 + x1\n");
  if (name == "diagonal-quadratic")
    return from_text(
        "name = diagonal-quadratic\n"
        "dimension = 2\n"
        "domain = unit-disk\n"
        "K11 = 1 + x1^2\n"
        "K22 = 1\n");
  if (name == "anisotropic-linear-3d")
    return from_text(
        "name = anisotropic-linear-3d\n"
        "dimension = 3\n"
        "domain = unit-disk\n"
        "K11 = 1 + x1\n"
        "K22 = 1 + x1\n"
        "K33 = 1 + x1\n");
  throw std::invalid_argument("unknown preset '" + name + "'; available: identity, anisotropic-linear, diagonal-quadratic, anisotropic-linear-3d");
}

}  // namespace greenexp
