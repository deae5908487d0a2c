#pragma once

#include <string>
#include <vector>

#include "greenexp/graded.hpp"
#include "greenexp/rational.hpp"
#include "greenexp/transform.hpp"

namespace greenexp {

// Computational domain. The disk/ball is the curved-boundary case; square and
// box boundaries are grid-aligned.
struct Domain {
  enum class Kind { unit_disk, unit_square, box };

  Kind kind = Kind::unit_disk;
  int n = 2;
  std::vector<double> lo;  // box only
  std::vector<double> hi;

  static Domain unit_disk(int n);
  static Domain unit_square(int n);
  static Domain make_box(std::vector<double> lo, std::vector<double> hi);

  // Negative strictly inside, positive strictly outside.
  double level(const std::vector<double>& x) const;
  bool contains(const std::vector<double>& x) const { return level(x) < 0; }

  std::vector<double> box_lo() const;
  std::vector<double> box_hi() const;

  std::string str() const;
};

// Matrix-valued coefficient field K(x): symmetric, with polynomial entries
// over exact rationals.
class CoefficientField {
public:
  // Entries row-major, length n*n; throws unless symmetric polynomials.
  CoefficientField(int n, std::vector<GradedFunction<Rational>> entries);

  static CoefficientField identity(int n);

  int dimension() const { return n_; }
  const GradedFunction<Rational>& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * n_ + j];
  }

  bool is_constant() const;
  int max_degree() const;

  SquareMatrix<Rational> eval_exact(const std::vector<Rational>& y) const;
  SquareMatrix<double> eval(const std::vector<double>& y) const;

private:
  int n_;
  std::vector<GradedFunction<Rational>> entries_;
};

// One fully specified problem: the coefficient field, its domain, and the
// ellipticity window K's eigenvalues must respect there.
struct ProblemSpec {
  std::string name;
  CoefficientField K;
  Domain domain;
  double lambda_min = 1e-8;
  double lambda_max = 1e12;
};

// Samples a coarse interior lattice of the domain and throws
// std::invalid_argument when an eigenvalue of K leaves [lambda_min,
// lambda_max] there. Sampling stays strictly inside the domain, so boundary
// degeneracy (an eigenvalue reaching zero exactly on the boundary) passes.
void validate_ellipticity(const ProblemSpec& spec);

}  // namespace greenexp
