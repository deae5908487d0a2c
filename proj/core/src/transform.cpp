#include "greenexp/transform.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>

namespace greenexp {

namespace {

constexpr double kEigenvalueFloor = 1e-10;
constexpr double kResidualTolerance = 1e-12;

}  // namespace

double NormalizationUnit::to_double() const {
  return factor.to_double() * std::pow(std::numbers::pi, -pi_power);
}

NormalizationUnit normalization_unit(int n) {
  if (n < kMinDimension || n > kMaxDimension)
    throw std::invalid_argument("normalization_unit: dimension must be in [2,8]");
  if (n == 2) return {Rational(1, 2), 1};
  Rational denom(static_cast<long>(n) * (n - 2));
  if (n % 2 == 0) {
    // w_n = pi^q / q! with q = n/2.
    const int q = n / 2;
    Rational qfact(1);
    for (int i = 2; i <= q; ++i) qfact = qfact * Rational(i);
    return {qfact / denom, q};
  }
  // w_n = 2^(q+1) pi^q / (2q+1)!! with q = (n-1)/2.
  const int q = (n - 1) / 2;
  Rational dfact(1);
  for (int i = 3; i <= 2 * q + 1; i += 2) dfact = dfact * Rational(i);
  Rational pow2(1);
  for (int i = 0; i < q + 1; ++i) pow2 = pow2 * Rational(2);
  return {dfact / (denom * pow2), q};
}

Transform<double> spd_inverse_sqrt(const SquareMatrix<double>& K) {
  const int n = K.dimension();
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = K(i, j);
  k = 0.5 * (k + k.transpose()).eval();  // guard against asymmetric input noise

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  if (es.info() != Eigen::Success)
    throw std::domain_error("spd_inverse_sqrt: eigendecomposition failed");
  const Eigen::VectorXd& lambda = es.eigenvalues();
  if (lambda.minCoeff() < kEigenvalueFloor) {
    std::ostringstream os;
    os << "spd_inverse_sqrt: matrix is not positive definite (smallest eigenvalue "
       << lambda.minCoeff() << ")";
    throw std::domain_error(os.str());
  }

  Eigen::MatrixXd t = es.eigenvectors() *
                      lambda.array().rsqrt().matrix().asDiagonal() *
                      es.eigenvectors().transpose();
  const double residual = (t * k * t - Eigen::MatrixXd::Identity(n, n))
                              .cwiseAbs()
                              .maxCoeff();
  if (residual > kResidualTolerance) {
    std::ostringstream os;
    os << "spd_inverse_sqrt: conjugation residual " << residual
       << " exceeds tolerance";
    throw std::domain_error(os.str());
  }

  Transform<double> out{SquareMatrix<double>(n), SquareMatrix<double>(n), 1.0};
  Eigen::MatrixXd tinv = es.eigenvectors() *
                         lambda.array().sqrt().matrix().asDiagonal() *
                         es.eigenvectors().transpose();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.forward(i, j) = t(i, j);
      out.inverse(i, j) = tinv(i, j);
    }
  out.det_factor = 1.0 / std::sqrt(lambda.prod());
  return out;
}

Transform<Rational> spd_inverse_sqrt_exact(const SquareMatrix<Rational>& K) {
  const int n = K.dimension();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !K(i, j).is_zero())
        throw std::domain_error(
            "spd_inverse_sqrt_exact: off-diagonal entries require the "
            "floating-point backend");
  Transform<Rational> out{SquareMatrix<Rational>(n), SquareMatrix<Rational>(n),
                          Rational(1)};
  for (int i = 0; i < n; ++i) {
    const Rational& d = K(i, i);
    if (d.sign() <= 0)
      throw std::domain_error("spd_inverse_sqrt_exact: diagonal entry is not positive");
    Rational root;
    if (!d.exact_sqrt(root))
      throw std::domain_error(
          "spd_inverse_sqrt_exact: diagonal entry is not a perfect square; use "
          "the floating-point backend");
    out.forward(i, i) = Rational(1) / root;
    out.inverse(i, i) = root;
    out.det_factor = out.det_factor * out.forward(i, i);
  }
  return out;
}

}  // namespace greenexp
