#pragma once

#include <vector>

#include "greenexp/grid.hpp"
#include "greenexp/parametrix.hpp"
#include "greenexp/remainder.hpp"

namespace greenexp {

// Statistics of a field over the annulus r_inner < dist(node, center) <= r_outer
// (interior nodes only).
struct OscillationReport {
  double min_value = 0;
  double max_value = 0;
  double oscillation = 0;  // max - min
  double max_abs = 0;
  int nodes = 0;
};

OscillationReport annulus_oscillation(const GridField& f, const std::vector<double>& center,
                                      double r_inner, double r_outer);

// Centered finite-difference magnitudes over the same annulus; a node
// contributes only if its full 3x3 stencil is interior.
struct DifferenceReport {
  double max_gradient = 0;
  double max_hessian = 0;
  int nodes = 0;
};

DifferenceReport annulus_differences(const GridField& f, const std::vector<double>& center,
                                     double r_inner, double r_outer);

// Flux of K(y) grad(Phi0-hat) through the sphere of the given radius around
// the base point; the normalization makes this -1. Circle trapezoid rule in
// the plane, Gauss-Legendre x trapezoid product rule on the sphere.
double fundamental_flux(const ExpansionResult<double>& exp, double radius, int points = 2048);

// Row-major m x m lattice of planar points (lo + i*step, lo + j*step).
std::vector<std::vector<double>> square_lattice(double lo, double step, int m);

// Centered first/second differences of a lattice table of values along both
// axes, at lattice points whose axis neighbors exist; x-axis block first.
std::vector<double> lattice_first_differences(const std::vector<double>& values, int m,
                                              double step);
std::vector<double> lattice_second_differences(const std::vector<double>& values, int m,
                                               double step);

}  // namespace greenexp
