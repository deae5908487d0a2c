#pragma once

#include <vector>

namespace greenexp {

// Closed forms for -Laplace on the unit disk (method of images).

// Green's function; x != y, both inside.
double disk_green_oracle(const std::vector<double>& y, const std::vector<double>& x);

// Regular part with the sign convention G = Phi0 + H (so H(y,y) is negative
// away from the center).
double disk_regular_oracle(const std::vector<double>& y, const std::vector<double>& x);

// Robin's function R(y) = -H(y,y) = -(1/2pi) log(1 - |y|^2); zero at the center.
double disk_robin_oracle(const std::vector<double>& y);

}  // namespace greenexp
