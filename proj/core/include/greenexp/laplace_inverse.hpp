#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "greenexp/graded.hpp"

namespace greenexp {

// Raised when an inversion hits a vanishing divisor. Reachable only for inputs
// outside the k >= 1 family range (e.g. x1^2/r^4 in n=2, which descends to the
// unsolvable 1/r^2); the payload identifies the offending term.
class DivisorError : public std::runtime_error {
public:
  DivisorError(int n, const std::string& term, const std::string& divisor)
      : std::runtime_error("vanishing divisor " + divisor + " while inverting term " +
                           term + " (n=" + std::to_string(n) + ")") {}
};

namespace detail {

template <class S>
struct RawTerm {
  S coeff;
  MultiIndex alpha;
  int radial;
  int log;
  int depth;
};

template <class S>
std::string raw_term_str(int n, const RawTerm<S>& t) {
  return scalar_traits<S>::str(t.coeff) + " * x^" + t.alpha.str() + " * r^" +
         std::to_string(-t.radial) + " * log^" + std::to_string(t.log);
}

// Core descent shared by all inversion routes. Solves Delta g = f one term at
// a time using the candidate r^2 * term (or x^alpha log r at the resonant
// radial power 2), recursing on the leftover Delta(x^alpha) part. Each step
// drops |alpha| by two, so chains are at most |alpha|/2 + 1 deep.
template <class S>
void solve_raw(int n, std::vector<RawTerm<S>>& work, std::vector<GradedTerm<S>>& out,
               int* max_depth) {
  while (!work.empty()) {
    RawTerm<S> t = work.back();
    work.pop_back();
    if (scalar_traits<S>::is_zero(t.coeff)) continue;
    if (max_depth && t.depth > *max_depth) *max_depth = t.depth;
    const int a = t.alpha.order();
    const int p = t.radial;

    if (t.log == 1) {
      // f = x^alpha r^(2l) log r, l = -p/2 >= 0:
      //   Delta(r^2 f) = (2l+2)(2l+n+2|a|) f
      //               + (2|a|+n+4l+2) x^alpha r^(2l)
      //               + r^(2l+2) log r Delta(x^alpha)
      if (p > 0 || p % 2 != 0)
        throw std::invalid_argument("solve: log term outside L: " + raw_term_str(n, t));
      const long d = static_cast<long>(p - 2) * (p - n - 2 * a);
      const S inv = t.coeff / scalar_traits<S>::from_int(d);
      out.push_back(GradedTerm<S>{inv, t.alpha, p - 2, 1});
      const long byproduct = 2 * a + n - 2 * p + 2;
      work.push_back(RawTerm<S>{scalar_traits<S>::zero() -
                                    inv * scalar_traits<S>::from_int(byproduct),
                                t.alpha, p, 0, t.depth + 1});
      for (int i = 0; i < n; ++i)
        if (t.alpha[i] >= 2)
          work.push_back(RawTerm<S>{
              scalar_traits<S>::zero() -
                  inv * scalar_traits<S>::from_int(static_cast<long>(t.alpha[i]) *
                                                   (t.alpha[i] - 1)),
              t.alpha.bumped(i, -2), p - 2, 1, t.depth + 1});
      continue;
    }

    if (p == 2) {
      // resonant stratum x^alpha / r^2:
      //   Delta(x^alpha log r) = (2|a|+n-2) x^alpha/r^2 + log r Delta(x^alpha)
      const long d0 = 2 * a + n - 2;
      if (d0 == 0)
        throw DivisorError(n, raw_term_str(n, t), "2|alpha|+n-2");
      const S inv = t.coeff / scalar_traits<S>::from_int(d0);
      out.push_back(GradedTerm<S>{inv, t.alpha, 0, 1});
      for (int i = 0; i < n; ++i)
        if (t.alpha[i] >= 2)
          work.push_back(RawTerm<S>{
              scalar_traits<S>::zero() -
                  inv * scalar_traits<S>::from_int(static_cast<long>(t.alpha[i]) *
                                                   (t.alpha[i] - 1)),
              t.alpha.bumped(i, -2), 0, 1, t.depth + 1});
      continue;
    }

    // generic stratum (covers polynomials, p <= 0 even):
    //   Delta(x^alpha r^(2-p)) = (p-2)(p-n-2|a|) x^alpha r^(-p)
    //                          + r^(2-p) Delta(x^alpha)
    const long d = static_cast<long>(p - 2) * (p - n - 2 * a);
    if (d == 0)
      throw DivisorError(n, raw_term_str(n, t), "(p-2)(p-n-2|alpha|)");
    const S inv = t.coeff / scalar_traits<S>::from_int(d);
    out.push_back(GradedTerm<S>{inv, t.alpha, p - 2, 0});
    for (int i = 0; i < n; ++i)
      if (t.alpha[i] >= 2)
        work.push_back(RawTerm<S>{
            scalar_traits<S>::zero() -
                inv * scalar_traits<S>::from_int(static_cast<long>(t.alpha[i]) *
                                                 (t.alpha[i] - 1)),
            t.alpha.bumped(i, -2), p - 2, 0, t.depth + 1});
  }
}

template <class S>
GradedFunction<S> solve_terms(const GradedFunction<S>& f, int* max_depth = nullptr) {
  std::vector<RawTerm<S>> work;
  work.reserve(f.term_count());
  for (const auto& t : f.terms())
    work.push_back(RawTerm<S>{t.coeff, t.alpha, t.radial_power, t.log_power, 1});
  std::vector<GradedTerm<S>> out;
  solve_raw(f.dimension(), work, out, max_depth);
  return GradedFunction<S>(f.dimension(), std::move(out));
}

}  // namespace detail

// Right inverse of the Laplacian on the odd-dimensional graded spaces:
// f in E^{n+2m}_{k+2m} gives g in E^{n+2m}_{k+2m+2} with Delta g = f, and g is
// the unique solution in the family (no harmonic elements for odd n).
template <class S>
GradedFunction<S> solve_E_odd(const GradedFunction<S>& f, int* max_depth = nullptr) {
  const int n = f.dimension();
  if (n % 2 == 0) throw std::invalid_argument("solve_E_odd: even dimension");
  for (const auto& t : f.terms())
    if (t.log_power != 0 || ((t.radial_power % 2) + 2) % 2 != 1)
      throw std::invalid_argument("solve_E_odd: term outside the odd E family: " +
                                  GradedFunction<S>(n, {t}).str());
  return detail::solve_terms(f, max_depth);
}

// Polynomial Poisson solve: Delta q = p with q in r^2 * R[x], the canonical
// complement of the harmonic polynomials. Unique with that normalization.
template <class S>
GradedFunction<S> poisson_polynomial(const GradedFunction<S>& p) {
  if (!p.is_polynomial())
    throw std::invalid_argument("poisson_polynomial: input is not a polynomial");
  return detail::solve_terms(p);
}

// Right inverse on the log spaces: f in L_m gives g in L_{m+2} + R[x].
template <class S>
GradedFunction<S> solve_log(const GradedFunction<S>& f) {
  const int n = f.dimension();
  for (const auto& t : f.terms())
    if (t.log_power != 1 || t.radial_power > 0 || t.radial_power % 2 != 0)
      throw std::invalid_argument("solve_log: term outside L: " +
                                  GradedFunction<S>(n, {t}).str());
  return detail::solve_terms(f);
}

// Right inverse on the even-dimensional extended family E-tilde, dispatching
// per stratum: generic descent, the x^alpha/r^2 resonance (log lift),
// polynomial Poisson, and the log spaces.
template <class S>
GradedFunction<S> solve_F_even(const GradedFunction<S>& f) {
  const int n = f.dimension();
  if (n % 2 != 0) throw std::invalid_argument("solve_F_even: odd dimension");
  for (const auto& t : f.terms())
    if (t.radial_power % 2 != 0)
      throw std::invalid_argument("solve_F_even: odd radial power in even dimension: " +
                                  GradedFunction<S>(n, {t}).str());
  return detail::solve_terms(f);
}

// Parity dispatch over the full graded input. Polynomial terms are accepted in
// either parity (the Poisson construction is parity-free).
template <class S>
GradedFunction<S> solve_graded(const GradedFunction<S>& f) {
  const int n = f.dimension();
  if (n % 2 == 0) return solve_F_even(f);
  std::vector<GradedTerm<S>> odd, poly;
  for (const auto& t : f.terms()) {
    if (t.is_polynomial())
      poly.push_back(t);
    else if (t.log_power == 0 && ((t.radial_power % 2) + 2) % 2 == 1)
      odd.push_back(t);
    else
      throw std::invalid_argument("solve_graded: term untaggable for odd n: " +
                                  GradedFunction<S>(n, {t}).str());
  }
  GradedFunction<S> g = solve_E_odd(GradedFunction<S>(n, std::move(odd)));
  if (!poly.empty()) g += poisson_polynomial(GradedFunction<S>(n, std::move(poly)));
  return g;
}

}  // namespace greenexp
