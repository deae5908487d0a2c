#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

#include "greenexp/graded.hpp"

namespace greenexp {

// Families of graded function spaces, all homogeneous of a fixed degree:
//   E          combinations x^alpha / r^p of homogeneity k - n whose radial
//              exponent matches the parity of n and stays within the stratum
//   E_singular E with its polynomial terms excluded
//   L          homogeneous degree-m polynomials times log r
//   F          E below the polynomial threshold (k < n); at or above it
//              (k >= n) the singular part of E plus L_{k-n}
//   E_tilde    F with arbitrary polynomials adjoined
enum class SpaceFamily { E, E_singular, L, F, E_tilde };

inline const char* family_name(SpaceFamily f) {
  switch (f) {
    case SpaceFamily::E: return "E";
    case SpaceFamily::E_singular: return "E_singular";
    case SpaceFamily::L: return "L";
    case SpaceFamily::F: return "F";
    case SpaceFamily::E_tilde: return "E_tilde";
  }
  return "?";
}

// Tag selecting one concrete space: E^{n+2m}_{k+2m} in dimension n, or L_m,
// or the F / E_tilde space of index k.
struct SpaceTag {
  int n;
  int m;
  int k;
  SpaceFamily family;

  SpaceTag(int n_, int m_, int k_, SpaceFamily fam)
      : n(n_), m(m_), k(k_), family(fam) {
    if (n < kMinDimension || n > kMaxDimension)
      throw std::invalid_argument("SpaceTag: dimension must be in [2,8]");
    if (m < 0) throw std::invalid_argument("SpaceTag: m must be nonnegative");
    if (family != SpaceFamily::L && k < 1)
      throw std::invalid_argument("SpaceTag: k must be positive");
  }

  static SpaceTag log_space(int n_, int m_) {
    return SpaceTag(n_, m_, 1, SpaceFamily::L);
  }

  std::string str() const {
    std::ostringstream os;
    os << family_name(family) << "(n=" << n;
    if (family == SpaceFamily::L)
      os << ", m=" << m;
    else
      os << ", m=" << m << ", k=" << k;
    os << ")";
    return os.str();
  }
};

namespace detail {

// Membership tests for one canonical term.

template <class S>
bool term_in_E(const GradedTerm<S>& t, int n, int m, int k) {
  if (t.log_power != 0) return false;
  if (t.homogeneity() != k - n) return false;
  const int slack = n + 2 * m - t.radial_power;
  return slack >= 0 && slack % 2 == 0;
}

template <class S>
bool term_in_L(const GradedTerm<S>& t, int m) {
  return t.log_power == 1 && t.radial_power <= 0 && t.radial_power % 2 == 0 &&
         t.alpha.order() - t.radial_power == m;
}

}  // namespace detail

// True when every term of f lies in the space selected by `tag`. The zero
// function belongs to every space.
template <class S>
bool classify(const GradedFunction<S>& f, const SpaceTag& tag) {
  if (f.dimension() != tag.n)
    throw std::invalid_argument("classify: dimension mismatch");
  const int n = tag.n;
  const int m = tag.m;
  const int k = tag.k;
  for (const auto& t : f.terms()) {
    bool ok = false;
    switch (tag.family) {
      case SpaceFamily::E:
        ok = detail::term_in_E(t, n, m, k);
        break;
      case SpaceFamily::E_singular:
        ok = detail::term_in_E(t, n, m, k) && !t.is_polynomial();
        break;
      case SpaceFamily::L:
        ok = detail::term_in_L(t, m);
        break;
      case SpaceFamily::F:
        if (k < n)
          ok = detail::term_in_E(t, n, m, k);
        else
          ok = (detail::term_in_E(t, n, m, k) && !t.is_polynomial()) ||
               detail::term_in_L(t, k - n);
        break;
      case SpaceFamily::E_tilde:
        if (k < n)
          ok = detail::term_in_E(t, n, m, k) || t.is_polynomial();
        else
          ok = (detail::term_in_E(t, n, m, k) && !t.is_polynomial()) ||
               detail::term_in_L(t, k - n) || t.is_polynomial();
        break;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace greenexp
