#pragma once

#include <stdexcept>
#include <string>

#include "greenexp/coefficient.hpp"

namespace greenexp {

// Error in a configuration file or polynomial string, carrying 1-based
// position information.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_, column_;
};

// Polynomial in x1..xn with rational coefficients. Supported syntax: +, -, *,
// ^ with nonnegative integer exponents, parentheses, integer / fraction /
// decimal literals. `line` seeds the error position for multi-line files.
GradedFunction<Rational> parse_polynomial(const std::string& text, int n, int line = 1);

// Canonical parseable rendering of a polynomial (expanded to monomials).
std::string polynomial_to_string(const GradedFunction<Rational>& p);

// Problem description in key = value lines: name, dimension, domain
// (unit-disk | unit-square | box lo1,lo2 hi1,hi2), lambda = min,max, and
// matrix entries K11, K12, ... as polynomial strings. Unset diagonal entries
// default to 1, off-diagonal to 0; a given Kij is mirrored to Kji, and giving
// both with different values is an error. The parsed field is validated for
// symmetry and ellipticity.
ProblemSpec parse_spec_text(const std::string& text);
ProblemSpec parse_spec_file(const std::string& path);

// Canonical rendering; parse_spec_text(serialize_spec(s)) round-trips to the
// same rendering.
std::string serialize_spec(const ProblemSpec& spec);

}  // namespace greenexp
