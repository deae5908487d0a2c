#include "greenexp/coefficient.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace greenexp {

Domain Domain::unit_disk(int n) {
  Domain d;
  d.kind = Kind::unit_disk;
  d.n = n;
  return d;
}

Domain Domain::unit_square(int n) {
  Domain d;
  d.kind = Kind::unit_square;
  d.n = n;
  return d;
}

Domain Domain::make_box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size() || lo.empty())
    throw std::invalid_argument("Domain: box bounds must have equal nonzero length");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i]))
      throw std::invalid_argument("Domain: box bounds must satisfy lo < hi per axis");
  Domain d;
  d.kind = Kind::box;
  d.n = static_cast<int>(lo.size());
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  return d;
}

double Domain::level(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("Domain: point dimension mismatch");
  switch (kind) {
    case Kind::unit_disk: {
      double r2 = 0;
      for (double v : x) r2 += v * v;
      return r2 - 1.0;
    }
    case Kind::unit_square: {
      double worst = -1e300;
      for (double v : x) worst = std::max(worst, std::max(0.0 - v, v - 1.0));
      return worst;
    }
    case Kind::box: {
      double worst = -1e300;
      for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::max(lo[i] - x[i], x[i] - hi[i]));
      return worst;
    }
  }
  return 0;
}

std::vector<double> Domain::box_lo() const {
  switch (kind) {
    case Kind::unit_disk: return std::vector<double>(n, -1.0);
    case Kind::unit_square: return std::vector<double>(n, 0.0);
    case Kind::box: return lo;
  }
  return {};
}

std::vector<double> Domain::box_hi() const {
  switch (kind) {
    case Kind::unit_disk: return std::vector<double>(n, 1.0);
    case Kind::unit_square: return std::vector<double>(n, 1.0);
    case Kind::box: return hi;
  }
  return {};
}

std::string Domain::str() const {
  switch (kind) {
    case Kind::unit_disk: return "unit-disk";
    case Kind::unit_square: return "unit-square";
    case Kind::box: {
      std::ostringstream os;
      os << "box";
      for (int i = 0; i < n; ++i) os << (i ? "x" : " ") << "[" << lo[i] << "," << hi[i] << "]";
      return os.str();
    }
  }
  return "?";
}

CoefficientField::CoefficientField(int n, std::vector<GradedFunction<Rational>> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n < kMinDimension || n > kMaxDimension)
    throw std::invalid_argument("CoefficientField: dimension must be in [2,8]");
  if (entries_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("CoefficientField: need n*n entries");
  for (const auto& e : entries_) {
    if (e.dimension() != n)
      throw std::invalid_argument("CoefficientField: entry dimension mismatch");
    if (!e.is_polynomial())
      throw std::invalid_argument("CoefficientField: entries must be polynomials");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(entry(i, j) == entry(j, i)))
        throw std::invalid_argument("CoefficientField: matrix is not symmetric");
}

CoefficientField CoefficientField::identity(int n) {
  std::vector<GradedFunction<Rational>> e;
  e.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      e.push_back(i == j ? GradedFunction<Rational>::constant(n, Rational(1))
                         : GradedFunction<Rational>::zero(n));
  return CoefficientField(n, std::move(e));
}

bool CoefficientField::is_constant() const {
  for (const auto& e : entries_)
    for (const auto& t : e.terms())
      if (t.alpha.order() != 0 || t.radial_power != 0) return false;
  return true;
}

int CoefficientField::max_degree() const {
  int deg = 0;
  for (const auto& e : entries_)
    if (!e.is_zero()) deg = std::max(deg, e.max_homogeneity());
  return deg;
}

SquareMatrix<Rational> CoefficientField::eval_exact(const std::vector<Rational>& y) const {
  SquareMatrix<Rational> m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = eval_polynomial(entry(i, j), y);
  return m;
}

SquareMatrix<double> CoefficientField::eval(const std::vector<double>& y) const {
  SquareMatrix<double> m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = entry(i, j).eval(y);
  return m;
}

void validate_ellipticity(const ProblemSpec& spec) {
  const int n = spec.K.dimension();
  if (spec.domain.n != n)
    throw std::invalid_argument("validate_ellipticity: domain/coefficient dimension mismatch");
  const auto lo = spec.domain.box_lo();
  const auto hi = spec.domain.box_hi();
  double extent = 0;
  for (int i = 0; i < n; ++i) extent = std::max(extent, hi[i] - lo[i]);
  const double inset = 0.02 * extent;

  const int per_axis = 9;
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  Eigen::MatrixXd k(n, n);
  while (true) {
    for (int i = 0; i < n; ++i)
      x[i] = lo[i] + (hi[i] - lo[i]) * (idx[i] + 0.5) / per_axis;
    if (spec.domain.level(x) <= -inset) {
      const auto m = spec.K.eval(x);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = 0.5 * (m(i, j) + m(j, i));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
      const double lmin = es.eigenvalues().minCoeff();
      const double lmax = es.eigenvalues().maxCoeff();
      if (lmin < spec.lambda_min * (1 - 1e-12) || lmax > spec.lambda_max * (1 + 1e-12)) {
        std::ostringstream os;
        os << "coefficient eigenvalues [" << lmin << ", " << lmax
           << "] leave the ellipticity window [" << spec.lambda_min << ", "
           << spec.lambda_max << "] at (";
        for (int i = 0; i < n; ++i) os << (i ? "," : "") << x[i];
        os << ")";
        throw std::invalid_argument(os.str());
      }
    }
    int axis = 0;
    while (axis < n && ++idx[axis] == per_axis) idx[axis++] = 0;
    if (axis == n) break;
  }
}

}  // namespace greenexp
