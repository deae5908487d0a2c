#include "greenexp/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace greenexp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double norm(const std::vector<double>& a) { return std::hypot(a[0], a[1]); }

}  // namespace

double disk_green_oracle(const std::vector<double>& y, const std::vector<double>& x) {
  const double d = dist(x, y);
  if (d == 0) throw std::invalid_argument("disk_green_oracle: x = y");
  const double ry = norm(y);
  if (ry == 0) return -std::log(norm(x)) / kTwoPi;
  const std::vector<double> image = {y[0] / (ry * ry), y[1] / (ry * ry)};
  return -(std::log(d) - std::log(ry * dist(x, image))) / kTwoPi;
}

double disk_regular_oracle(const std::vector<double>& y, const std::vector<double>& x) {
  const double ry = norm(y);
  if (ry == 0) return 0.0;
  const std::vector<double> image = {y[0] / (ry * ry), y[1] / (ry * ry)};
  return std::log(ry * dist(x, image)) / kTwoPi;
}

double disk_robin_oracle(const std::vector<double>& y) {
  const double ry2 = y[0] * y[0] + y[1] * y[1];
  if (ry2 >= 1.0) throw std::invalid_argument("disk_robin_oracle: point outside the disk");
  return -std::log1p(-ry2) / kTwoPi;
}

}  // namespace greenexp
