#pragma once

#include <map>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "greenexp/coefficient.hpp"
#include "greenexp/laplace_inverse.hpp"
#include "greenexp/spaces.hpp"
#include "greenexp/transform.hpp"

namespace greenexp {

// Backend dispatch for the inverse square root at the base point.
template <class S>
Transform<S> transform_at(const SquareMatrix<S>& K);
template <>
inline Transform<double> transform_at(const SquareMatrix<double>& K) {
  return spd_inverse_sqrt(K);
}
template <>
inline Transform<Rational> transform_at(const SquareMatrix<Rational>& K) {
  return spd_inverse_sqrt_exact(K);
}

template <class S>
std::vector<GradedFunction<S>> field_entries(const CoefficientField& K) {
  std::vector<GradedFunction<S>> out;
  out.reserve(static_cast<std::size_t>(K.dimension()) * K.dimension());
  for (int i = 0; i < K.dimension(); ++i)
    for (int j = 0; j < K.dimension(); ++j) {
      if constexpr (std::is_same_v<S, Rational>)
        out.push_back(K.entry(i, j));
      else
        out.push_back(K.entry(i, j).template cast<S>());
    }
  return out;
}

// The operator frozen at a base point y: the transform u = T (x - y) that
// turns div(K(y) grad .) into the Laplacian, together with the perturbation
// polynomials q_ij(u) = K_ij(y + T^-1 u) - K_ij(y) and their x-derivatives,
// everything expressed in u-coordinates.
template <class S>
struct FrozenFrame {
  int n;
  std::vector<S> y;
  Transform<S> transform;
  std::vector<GradedFunction<S>> q;   // row-major n*n, each vanishing at u = 0
  std::vector<GradedFunction<S>> dq;  // dq[i*n+j] = d/dx_i q_ij
};

template <class S>
FrozenFrame<S> freeze_at(const CoefficientField& K, const std::vector<S>& y) {
  const int n = K.dimension();
  if (static_cast<int>(y.size()) != n)
    throw std::invalid_argument("freeze_at: base point dimension mismatch");
  const auto entries = field_entries<S>(K);

  SquareMatrix<S> k_at_y(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      k_at_y(i, j) = eval_polynomial(entries[static_cast<std::size_t>(i) * n + j], y);

  FrozenFrame<S> fr{n, y, transform_at(k_at_y), {}, {}};
  fr.q.reserve(entries.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& e = entries[static_cast<std::size_t>(i) * n + j];
      auto shifted = shift_polynomial(e, y);
      shifted -= GradedFunction<S>::constant(n, k_at_y(i, j));
      fr.q.push_back(substitute_linear(shifted, fr.transform.inverse));
    }
  fr.dq.reserve(entries.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      fr.dq.push_back(
          partial_in_x(i, fr.q[static_cast<std::size_t>(i) * n + j], fr.transform.forward));
  return fr;
}

// div((K(x) - K(y)) grad g) in u-coordinates:
//   sum_ij [ q_ij * d2g/dx_i dx_j + (d q_ij/dx_i) * dg/dx_j ].
template <class S>
GradedFunction<S> rhs_of(const FrozenFrame<S>& fr, const GradedFunction<S>& g) {
  GradedFunction<S> out(fr.n);
  for (int j = 0; j < fr.n; ++j) {
    const auto gj = partial_in_x(j, g, fr.transform.forward);
    if (gj.is_zero()) continue;
    for (int i = 0; i < fr.n; ++i) {
      const auto& qij = fr.q[static_cast<std::size_t>(i) * fr.n + j];
      const auto& dqij = fr.dq[static_cast<std::size_t>(i) * fr.n + j];
      if (!qij.is_zero()) out += mul_poly(qij, partial_in_x(i, gj, fr.transform.forward));
      if (!dqij.is_zero()) out += mul_poly(dqij, gj);
    }
  }
  return out;
}

// Inexact backends leave cancellation dust where the exact backend gets
// zeros; the recursion must drop it or the residual's homogeneity floor never
// rises. No-op for exact scalars.
template <class S>
GradedFunction<S> prune_cancellation_dust(const GradedFunction<S>& f) {
  if constexpr (scalar_traits<S>::exact) {
    return f;
  } else {
    double scale = 0;
    for (const auto& t : f.terms())
      scale = std::max(scale, std::abs(scalar_traits<S>::to_double(t.coeff)));
    if (scale == 0) return f;
    std::vector<GradedTerm<S>> keep;
    for (const auto& t : f.terms())
      if (std::abs(scalar_traits<S>::to_double(t.coeff)) > 1e-12 * scale)
        keep.push_back(t);
    return GradedFunction<S>(f.dimension(), std::move(keep));
  }
}

// All terms of f with the given homogeneity degree.
template <class S>
GradedFunction<S> homogeneous_piece(const GradedFunction<S>& f, int h) {
  std::vector<GradedTerm<S>> keep;
  for (const auto& t : f.terms())
    if (t.homogeneity() == h) keep.push_back(t);
  return GradedFunction<S>(f.dimension(), std::move(keep));
}

template <class S>
struct ExpansionGroup {
  int index;  // i in Phi_i; homogeneity of every term is i + 2 - n
  SpaceTag tag;
  GradedFunction<S> phi;     // non-polynomial part of the correction
  GradedFunction<S> smooth;  // polynomial byproduct solved in the same round
};

// The singular expansion around y to order l. All graded functions live in
// u = T(x - y) coordinates and carry the shared normalization unit; the
// actual value of the expansion at x is unit * [phi0 + sum phi_i +
// smooth_part](u). `residual` is div(K grad) applied to that sum (exact for
// polynomial K): the right side of the remainder problem for H^l, whose
// boundary data is minus the sum.
template <class S>
struct ExpansionResult {
  int n = 0;
  int order = 0;
  std::vector<S> y;
  Transform<S> transform{SquareMatrix<S>(2), SquareMatrix<S>(2), S()};
  NormalizationUnit unit;
  GradedFunction<S> phi0{2};
  std::vector<ExpansionGroup<S>> groups;  // ascending index; zero groups omitted
  GradedFunction<S> smooth_part{2};       // polynomial content split off the groups
  GradedFunction<S> residual{2};

  GradedFunction<S> total() const {
    GradedFunction<S> s = phi0;
    for (const auto& g : groups) s += g.phi;
    s += smooth_part;
    return s;
  }
};

// Partial sum phi0 + sum_{i <= max_index} (phi_i + its polynomial byproduct).
// With max_index = n + l - 2 this is the truncation whose defect is the
// l-times differentiable regular part.
template <class S>
GradedFunction<S> truncated_total(const ExpansionResult<S>& res, int max_index) {
  GradedFunction<S> s = res.phi0;
  for (const auto& g : res.groups) {
    if (g.index > max_index) continue;
    s += g.phi;
    s += g.smooth;
  }
  return s;
}

// Runs the recursion: starting from the fundamental solution of the frozen
// operator, repeatedly solve the lowest-homogeneity piece of the residual
// against the Laplacian and fold the correction back in, until every residual
// term has homogeneity degree >= l. Group Phi_i collects the non-polynomial
// part of the correction solved at homogeneity i - n; its polynomial part
// goes to smooth_part (the groups' graded spaces exclude polynomials).
template <class S>
ExpansionResult<S> build_expansion(const CoefficientField& K, const std::vector<S>& y,
                                   int order) {
  if (order < 0) throw std::invalid_argument("build_expansion: order must be >= 0");
  const int n = K.dimension();
  auto fr = freeze_at(K, y);

  ExpansionResult<S> res;
  res.n = n;
  res.order = order;
  res.y = y;
  res.transform = fr.transform;
  res.unit = normalization_unit(n);
  res.phi0 = fundamental_solution(n, fr.transform.det_factor);
  res.smooth_part = GradedFunction<S>::zero(n);
  res.residual = prune_cancellation_dust(rhs_of(fr, res.phi0));

  std::map<int, std::pair<GradedFunction<S>, GradedFunction<S>>> groups;
  const int max_rounds = order + n + 4;
  int rounds = 0;
  while (!res.residual.is_zero()) {
    const int h = res.residual.min_homogeneity();
    if (h > order - 1) break;
    if (++rounds > max_rounds)
      throw std::logic_error("build_expansion: recursion failed to raise homogeneity");
    const auto piece = homogeneous_piece(res.residual, h);
    const auto g = solve_graded(-piece);
    res.residual = prune_cancellation_dust(res.residual + laplacian(g) + rhs_of(fr, g));

    std::vector<GradedTerm<S>> graded, poly;
    for (const auto& t : g.terms())
      (t.is_polynomial() ? poly : graded).push_back(t);
    const int index = h + n;
    auto it = groups.try_emplace(index, std::pair<GradedFunction<S>, GradedFunction<S>>(
                                            GradedFunction<S>(n), GradedFunction<S>(n)))
                  .first;
    it->second.first += GradedFunction<S>(n, std::move(graded));
    auto poly_part = GradedFunction<S>(n, std::move(poly));
    it->second.second += poly_part;
    res.smooth_part += poly_part;
  }

  for (auto& [index, parts] : groups) {
    auto& [phi, smooth] = parts;
    if (phi.is_zero() && smooth.is_zero()) continue;
    SpaceTag tag(n, 2 * index - 1, index + 2,
                 n % 2 == 1 ? SpaceFamily::E : SpaceFamily::F);
    if (!phi.is_zero() && !classify(phi, tag))
      throw std::logic_error("build_expansion: group " + std::to_string(index) +
                             " escapes its graded space " + tag.str());
    res.groups.push_back(ExpansionGroup<S>{index, tag, std::move(phi), std::move(smooth)});
  }
  return res;
}

// Independent recomputation of div(K grad) applied to the assembled sum,
// term by term; equals `residual` when the construction is consistent.
template <class S>
GradedFunction<S> residual_of(const FrozenFrame<S>& fr, const ExpansionResult<S>& res) {
  GradedFunction<S> out = rhs_of(fr, res.phi0);  // laplacian(phi0) = 0 away from 0
  out += laplacian(res.phi0);
  for (const auto& g : res.groups) out += laplacian(g.phi) + rhs_of(fr, g.phi);
  out += laplacian(res.smooth_part) + rhs_of(fr, res.smooth_part);
  return out;
}

// The groups entering the regular part H_K: index >= n - 1. Each must vanish
// at u = 0, i.e. every term has positive homogeneity.
template <class S>
std::vector<ExpansionGroup<S>> robin_terms(const ExpansionResult<S>& res) {
  std::vector<ExpansionGroup<S>> out;
  for (const auto& g : res.groups) {
    if (g.index < res.n - 1) continue;
    if (!g.phi.is_zero() && g.phi.min_homogeneity() < 1)
      throw std::logic_error("robin_terms: group does not vanish at the base point");
    out.push_back(g);
  }
  return out;
}

// Constant coefficient of the smooth part (its value at u = 0), in units of
// the normalization unit.
template <class S>
S smooth_part_at_origin(const ExpansionResult<S>& res) {
  return res.smooth_part.coefficient_of(MultiIndex(res.n), 0, 0);
}

// Double-precision sampler of the symbolic sum at physical points x.
struct ExpansionEvaluator {
  int n = 0;
  std::vector<double> y;
  SquareMatrix<double> forward{2};
  GradedFunction<double> total{2};
  double unit = 1.0;

  double operator()(const std::vector<double>& x) const {
    std::vector<double> u(n);
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += forward(k, j) * (x[j] - y[j]);
      u[k] = s;
    }
    return unit * total.eval(u);
  }
};

template <class S>
ExpansionEvaluator make_evaluator(const ExpansionResult<S>& res) {
  ExpansionEvaluator ev;
  ev.n = res.n;
  ev.y.resize(res.n);
  for (int i = 0; i < res.n; ++i) ev.y[i] = scalar_traits<S>::to_double(res.y[i]);
  ev.forward = res.transform.forward.template cast<double>();
  ev.total = res.total().template cast<double>();
  ev.unit = res.unit.to_double();
  return ev;
}

}  // namespace greenexp
