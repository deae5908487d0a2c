#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "greenexp/multi_index.hpp"
#include "greenexp/rational.hpp"

namespace greenexp {

// One term c * x^alpha * r^(-radial_power) * (log r)^log_power.
// log_power is 0 or 1 everywhere; an operation whose result would carry
// (log r)^2 indicates a broken caller and is rejected during normalization.
template <class S>
struct GradedTerm {
  S coeff;
  MultiIndex alpha;
  int radial_power = 0;
  int log_power = 0;

  // Degree of positive homogeneity, ignoring the log factor.
  int homogeneity() const { return alpha.order() - radial_power; }

  // Whether the term is a polynomial (monomial times an even power of r).
  bool is_polynomial() const {
    return log_power == 0 && radial_power <= 0 && radial_power % 2 == 0;
  }
};

namespace detail {

struct TermKey {
  std::vector<int> alpha;
  int radial;
  int log;
  bool operator<(const TermKey& o) const {
    return std::tie(alpha, radial, log) < std::tie(o.alpha, o.radial, o.log);
  }
};

// Multinomial expansion of (x_1^2 + ... + x_n^2)^l onto `sink(exponents, count)`.
template <class Fn>
void expand_r2_power(int n, int l, Fn&& sink) {
  std::vector<int> a(n, 0);
  auto rec = [&](auto&& self, int pos, int rest, long coeff) -> void {
    if (pos == n - 1) {
      a[pos] = rest;
      sink(a, coeff);
      return;
    }
    long c = coeff;  // walks coeff * C(rest, k) along k
    for (int k = 0; k <= rest; ++k) {
      a[pos] = k;
      self(self, pos + 1, rest - k, c);
      c = c * (rest - k) / (k + 1);
    }
    a[pos] = 0;
  };
  rec(rec, 0, l, 1);
}

}  // namespace detail

// Finite sum of graded terms over one dimension n. The representation carries
// the relation x_1^2 + ... + x_n^2 = r^2, so terms are kept in the quotient
// basis where the last variable's exponent is 0 or 1: x_n^2 is rewritten as
// r^2 - (x_1^2 + ... + x_{n-1}^2) until that holds. In this basis equality of
// functions is equality of term lists, which makes exact zero tests sound.
// Terms are merged by (alpha, radial_power, log_power), sorted, and zero
// coefficients dropped.
template <class S>
class GradedFunction {
public:
  explicit GradedFunction(int n) : n_(check_dim(n)) {}

  GradedFunction(int n, std::vector<GradedTerm<S>> terms) : n_(check_dim(n)) {
    std::map<detail::TermKey, S> acc;
    for (auto& t : terms) accumulate(acc, t);
    adopt(acc);
  }

  static GradedFunction zero(int n) { return GradedFunction(n); }

  static GradedFunction single(int n, S coeff, MultiIndex alpha, int radial_power,
                               int log_power) {
    return GradedFunction(
        n, {GradedTerm<S>{std::move(coeff), std::move(alpha), radial_power, log_power}});
  }

  // Monomial c * x^alpha.
  static GradedFunction monomial(int n, S coeff, MultiIndex alpha) {
    return single(n, std::move(coeff), std::move(alpha), 0, 0);
  }

  static GradedFunction constant(int n, S coeff) {
    return monomial(n, std::move(coeff), MultiIndex(n));
  }

  int dimension() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<GradedTerm<S>>& terms() const { return terms_; }

  bool is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.is_polynomial(); });
  }

  bool has_log() const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.log_power != 0; });
  }

  // Smallest / largest homogeneity degree over the terms; requires nonempty.
  int min_homogeneity() const {
    require_nonempty();
    int h = terms_.front().homogeneity();
    for (const auto& t : terms_) h = std::min(h, t.homogeneity());
    return h;
  }
  int max_homogeneity() const {
    require_nonempty();
    int h = terms_.front().homogeneity();
    for (const auto& t : terms_) h = std::max(h, t.homogeneity());
    return h;
  }

  S coefficient_of(const MultiIndex& alpha, int radial_power, int log_power) const {
    for (const auto& t : terms_)
      if (t.alpha == alpha && t.radial_power == radial_power && t.log_power == log_power)
        return t.coeff;
    return scalar_traits<S>::zero();
  }

  GradedFunction operator-() const {
    GradedFunction r(*this);
    for (auto& t : r.terms_) t.coeff = scalar_traits<S>::zero() - t.coeff;
    return r;
  }

  GradedFunction& operator+=(const GradedFunction& o) {
    require_same_dim(o);
    std::map<detail::TermKey, S> acc;
    for (const auto& t : terms_) accumulate(acc, GradedTerm<S>(t));
    for (const auto& t : o.terms_) accumulate(acc, GradedTerm<S>(t));
    adopt(acc);
    return *this;
  }
  GradedFunction& operator-=(const GradedFunction& o) { return *this += -o; }

  friend GradedFunction operator+(GradedFunction a, const GradedFunction& b) {
    return a += b;
  }
  friend GradedFunction operator-(GradedFunction a, const GradedFunction& b) {
    return a -= b;
  }

  GradedFunction scaled(const S& c) const {
    if (scalar_traits<S>::is_zero(c)) return zero(n_);
    GradedFunction r(*this);
    for (auto& t : r.terms_) t.coeff = t.coeff * c;
    r.drop_zeros();
    return r;
  }

  friend bool operator==(const GradedFunction& a, const GradedFunction& b) {
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      const auto& s = a.terms_[i];
      const auto& t = b.terms_[i];
      if (!(s.alpha == t.alpha) || s.radial_power != t.radial_power ||
          s.log_power != t.log_power || !(s.coeff == t.coeff))
        return false;
    }
    return true;
  }

  double eval(const std::vector<double>& u) const {
    if (static_cast<int>(u.size()) != n_)
      throw std::invalid_argument("GradedFunction::eval: point dimension mismatch");
    double r2 = 0;
    for (double v : u) r2 += v * v;
    const double r = std::sqrt(r2);
    double total = 0;
    for (const auto& t : terms_) {
      double v = scalar_traits<S>::to_double(t.coeff);
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < t.alpha[i]; ++k) v *= u[i];
      if (t.radial_power != 0) v *= std::pow(r, -t.radial_power);
      if (t.log_power != 0) v *= std::log(r);
      total += v;
    }
    return total;
  }

  // Expansion of a polynomial into plain monomials (leaves the quotient
  // basis; used for composition and linear substitution).
  std::vector<GradedTerm<S>> monomial_expansion() const {
    if (!is_polynomial())
      throw std::invalid_argument("monomial_expansion: not a polynomial");
    std::vector<GradedTerm<S>> out;
    for (const auto& t : terms_) {
      const int l = -t.radial_power / 2;
      if (l == 0) {
        out.push_back(t);
        continue;
      }
      detail::expand_r2_power(n_, l, [&](const std::vector<int>& extra, long mult) {
        MultiIndex a = t.alpha;
        for (int i = 0; i < n_; ++i) a[i] += 2 * extra[i];
        out.push_back(
            GradedTerm<S>{t.coeff * scalar_traits<S>::from_int(mult), a, 0, 0});
      });
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      if (!first) os << " + ";
      first = false;
      os << scalar_traits<S>::str(t.coeff) << " * x^" << t.alpha.str() << " * r^"
         << -t.radial_power << " * log^" << t.log_power;
    }
    return os.str();
  }

  template <class T>
  GradedFunction<T> cast() const {
    std::vector<GradedTerm<T>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
      out.push_back(GradedTerm<T>{T(scalar_traits<S>::to_double(t.coeff)), t.alpha,
                                  t.radial_power, t.log_power});
    return GradedFunction<T>(n_, std::move(out));
  }

private:
  static int check_dim(int n) {
    if (n < kMinDimension || n > kMaxDimension)
      throw std::invalid_argument("GradedFunction: dimension must be in [2,8]");
    return n;
  }
  void require_same_dim(const GradedFunction& o) const {
    if (o.n_ != n_) throw std::invalid_argument("GradedFunction: dimension mismatch");
  }
  void require_nonempty() const {
    if (terms_.empty())
      throw std::logic_error("GradedFunction: homogeneity of the zero function");
  }

  // Reduces one incoming term to the quotient basis (last exponent <= 1) and
  // merges the pieces into the accumulator.
  static void accumulate(std::map<detail::TermKey, S>& acc, const GradedTerm<S>& t) {
    if (t.log_power < 0 || t.log_power > 1)
      throw std::logic_error("GradedFunction: log power outside {0,1}: " +
                             std::to_string(t.log_power));
    if (scalar_traits<S>::is_zero(t.coeff)) return;
    const int n = t.alpha.dimension();
    const int last = n - 1;
    if (t.alpha[last] >= 2) {
      GradedTerm<S> up = t;
      up.alpha[last] -= 2;
      up.radial_power -= 2;
      accumulate(acc, up);
      for (int i = 0; i < last; ++i) {
        GradedTerm<S> side = t;
        side.alpha[last] -= 2;
        side.alpha[i] += 2;
        side.coeff = scalar_traits<S>::zero() - side.coeff;
        accumulate(acc, side);
      }
      return;
    }
    detail::TermKey key{std::vector<int>(n), t.radial_power, t.log_power};
    for (int i = 0; i < n; ++i) key.alpha[i] = t.alpha[i];
    auto it = acc.try_emplace(key, scalar_traits<S>::zero()).first;
    it->second += t.coeff;
  }

  void adopt(const std::map<detail::TermKey, S>& acc) {
    terms_.clear();
    terms_.reserve(acc.size());
    for (const auto& [key, coeff] : acc) {
      if (scalar_traits<S>::is_zero(coeff)) continue;
      terms_.push_back(GradedTerm<S>{coeff, MultiIndex(key.alpha), key.radial, key.log});
    }
  }

  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const auto& t) {
                                  return scalar_traits<S>::is_zero(t.coeff);
                                }),
                 terms_.end());
  }

  int n_;
  std::vector<GradedTerm<S>> terms_;
};

// d/dx_i. Lowers every term's homogeneity by exactly one.
template <class S>
GradedFunction<S> partial(int i, const GradedFunction<S>& f) {
  const int n = f.dimension();
  if (i < 0 || i >= n) throw std::invalid_argument("partial: axis out of range");
  std::vector<GradedTerm<S>> out;
  for (const auto& t : f.terms()) {
    if (t.alpha[i] > 0)
      out.push_back(GradedTerm<S>{t.coeff * scalar_traits<S>::from_int(t.alpha[i]),
                                  t.alpha.bumped(i, -1), t.radial_power, t.log_power});
    if (t.radial_power != 0)
      out.push_back(GradedTerm<S>{t.coeff * scalar_traits<S>::from_int(-t.radial_power),
                                  t.alpha.bumped(i, +1), t.radial_power + 2, t.log_power});
    if (t.log_power == 1)
      out.push_back(GradedTerm<S>{t.coeff, t.alpha.bumped(i, +1), t.radial_power + 2, 0});
  }
  return GradedFunction<S>(n, std::move(out));
}

template <class S>
GradedFunction<S> laplacian(const GradedFunction<S>& f) {
  GradedFunction<S> total(f.dimension());
  for (int i = 0; i < f.dimension(); ++i) total += partial(i, partial(i, f));
  return total;
}

// Exact evaluation of a polynomial at a point with coordinates in S.
template <class S>
S eval_polynomial(const GradedFunction<S>& p, const std::vector<S>& y) {
  if (static_cast<int>(y.size()) != p.dimension())
    throw std::invalid_argument("eval_polynomial: point dimension mismatch");
  if (!p.is_polynomial())
    throw std::invalid_argument("eval_polynomial: not a polynomial");
  S r2 = scalar_traits<S>::zero();
  for (const auto& c : y) r2 += c * c;
  S total = scalar_traits<S>::zero();
  for (const auto& t : p.terms()) {
    S v = t.coeff;
    for (int i = 0; i < p.dimension(); ++i)
      for (int k = 0; k < t.alpha[i]; ++k) v = v * y[i];
    for (int l = 0; l < -t.radial_power / 2; ++l) v = v * r2;
    total += v;
  }
  return total;
}

// p * f where p is a polynomial.
template <class S>
GradedFunction<S> mul_poly(const GradedFunction<S>& p, const GradedFunction<S>& f) {
  if (p.dimension() != f.dimension())
    throw std::invalid_argument("mul_poly: dimension mismatch");
  if (!p.is_polynomial())
    throw std::invalid_argument("mul_poly: multiplier is not a polynomial");
  std::vector<GradedTerm<S>> out;
  out.reserve(p.term_count() * f.term_count());
  for (const auto& a : p.terms())
    for (const auto& b : f.terms())
      out.push_back(GradedTerm<S>{a.coeff * b.coeff, a.alpha + b.alpha,
                                  a.radial_power + b.radial_power,
                                  a.log_power + b.log_power});
  return GradedFunction<S>(f.dimension(), std::move(out));
}

}  // namespace greenexp
