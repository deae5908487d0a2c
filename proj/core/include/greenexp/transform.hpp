#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "greenexp/graded.hpp"
#include "greenexp/rational.hpp"

namespace greenexp {

// Scale unit shared by the fundamental solution and everything derived from
// it: the actual value of a stored coefficient c is c * factor * pi^(-pi_power).
// Keeping the pi power out of the stored coefficients lets the symbolic side
// stay rational end to end.
struct NormalizationUnit {
  Rational factor;
  int pi_power = 0;

  double to_double() const;
};

// Unit for dimension n: 1/(2 pi) when n = 2, otherwise 1/(n (n-2) w_n) with
// w_n the volume of the unit ball, split into a rational factor and a power
// of pi.
NormalizationUnit normalization_unit(int n);

// Dense n-by-n matrix over S, row-major.
template <class S>
class SquareMatrix {
public:
  explicit SquareMatrix(int n)
      : n_(check_dim(n)), a_(static_cast<std::size_t>(n) * n, scalar_traits<S>::zero()) {}

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::from_int(1);
    return m;
  }

  int dimension() const { return n_; }

  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const S& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
    SquareMatrix c(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) {
        S s = scalar_traits<S>::zero();
        for (int k = 0; k < a.n_; ++k) s += a(i, k) * b(k, j);
        c(i, j) = s;
      }
    return c;
  }

  template <class T>
  SquareMatrix<T> cast() const {
    SquareMatrix<T> m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        m(i, j) = T(scalar_traits<S>::to_double((*this)(i, j)));
    return m;
  }

private:
  static int check_dim(int n) {
    if (n < kMinDimension || n > kMaxDimension)
      throw std::invalid_argument("SquareMatrix: dimension must be in [2,8]");
    return n;
  }

  int n_;
  std::vector<S> a_;
};

// Change of variables u = forward * (x - y) that turns the operator
// div(K(y) grad .) at the base point into the Laplacian: forward = K(y)^(-1/2).
// det_factor = det(forward) = det(K(y))^(-1/2) scales the fundamental solution.
template <class S>
struct Transform {
  SquareMatrix<S> forward;
  SquareMatrix<S> inverse;
  S det_factor;
};

// Inverse square root of a symmetric positive definite matrix, computed by
// eigendecomposition. Throws std::domain_error when an eigenvalue falls below
// the positivity floor or the residual ||T K T - I|| exceeds tolerance.
Transform<double> spd_inverse_sqrt(const SquareMatrix<double>& K);

// Exact counterpart, restricted to diagonal matrices whose entries are
// squares of rationals; anything else throws std::domain_error with a hint
// to use the floating-point backend.
Transform<Rational> spd_inverse_sqrt_exact(const SquareMatrix<Rational>& K);

// Fundamental solution of the Laplacian in the transformed frame, scaled by
// det_factor and expressed in the shared normalization unit:
//   n = 2:   -det_factor * log r
//   n >= 3:  +det_factor * r^(2-n)
template <class S>
GradedFunction<S> fundamental_solution(int n, const S& det_factor) {
  if (n == 2) return GradedFunction<S>::single(n, scalar_traits<S>::zero() - det_factor,
                                              MultiIndex(n), 0, 1);
  return GradedFunction<S>::single(n, det_factor, MultiIndex(n), n - 2, 0);
}

// d/dx_i of f(u) under u = M (x - y): sum_k M(k,i) d/du_k f.
template <class S>
GradedFunction<S> partial_in_x(int i, const GradedFunction<S>& f,
                               const SquareMatrix<S>& M) {
  if (M.dimension() != f.dimension())
    throw std::invalid_argument("partial_in_x: dimension mismatch");
  GradedFunction<S> total(f.dimension());
  for (int k = 0; k < f.dimension(); ++k) {
    const S& c = M(k, i);
    if (scalar_traits<S>::is_zero(c)) continue;
    total += partial(k, f).scaled(c);
  }
  return total;
}

namespace detail {

// Sparse polynomial in monomial coordinates; scratch type for substitution.
template <class S>
using MonomialMap = std::map<std::vector<int>, S>;

template <class S>
void monomial_add(MonomialMap<S>& m, const std::vector<int>& key, const S& c) {
  auto it = m.try_emplace(key, scalar_traits<S>::zero()).first;
  it->second += c;
}

template <class S>
MonomialMap<S> monomial_mul(const MonomialMap<S>& a, const MonomialMap<S>& b) {
  MonomialMap<S> out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      std::vector<int> k = ka;
      for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      monomial_add(out, k, ca * cb);
    }
  return out;
}

template <class S>
GradedFunction<S> monomial_collect(int n, const MonomialMap<S>& m) {
  std::vector<GradedTerm<S>> terms;
  terms.reserve(m.size());
  for (const auto& [key, c] : m)
    terms.push_back(GradedTerm<S>{c, MultiIndex(key), 0, 0});
  return GradedFunction<S>(n, std::move(terms));
}

}  // namespace detail

// Composition p(M u) of a polynomial with a linear map.
template <class S>
GradedFunction<S> substitute_linear(const GradedFunction<S>& p,
                                    const SquareMatrix<S>& M) {
  const int n = p.dimension();
  if (M.dimension() != n)
    throw std::invalid_argument("substitute_linear: dimension mismatch");
  detail::MonomialMap<S> acc;
  for (const auto& t : p.monomial_expansion()) {
    detail::MonomialMap<S> prod{{std::vector<int>(n, 0), t.coeff}};
    for (int i = 0; i < n; ++i) {
      detail::MonomialMap<S> row;  // i-th coordinate of M u as a linear form
      for (int j = 0; j < n; ++j) {
        if (scalar_traits<S>::is_zero(M(i, j))) continue;
        std::vector<int> key(n, 0);
        key[j] = 1;
        detail::monomial_add(row, key, M(i, j));
      }
      for (int k = 0; k < t.alpha[i]; ++k) prod = detail::monomial_mul(prod, row);
    }
    for (const auto& [key, c] : prod) detail::monomial_add(acc, key, c);
  }
  return detail::monomial_collect(n, acc);
}

// Recentering p(y + v) of a polynomial, as a polynomial in v.
template <class S>
GradedFunction<S> shift_polynomial(const GradedFunction<S>& p,
                                   const std::vector<S>& y) {
  const int n = p.dimension();
  if (static_cast<int>(y.size()) != n)
    throw std::invalid_argument("shift_polynomial: point dimension mismatch");
  detail::MonomialMap<S> acc;
  for (const auto& t : p.monomial_expansion()) {
    detail::MonomialMap<S> prod{{std::vector<int>(n, 0), t.coeff}};
    for (int i = 0; i < n; ++i) {
      detail::MonomialMap<S> lin;  // y_i + v_i
      if (!scalar_traits<S>::is_zero(y[i]))
        detail::monomial_add(lin, std::vector<int>(n, 0), y[i]);
      std::vector<int> key(n, 0);
      key[i] = 1;
      detail::monomial_add(lin, key, scalar_traits<S>::from_int(1));
      for (int k = 0; k < t.alpha[i]; ++k) prod = detail::monomial_mul(prod, lin);
    }
    for (const auto& [key, c] : prod) detail::monomial_add(acc, key, c);
  }
  return detail::monomial_collect(n, acc);
}

}  // namespace greenexp
