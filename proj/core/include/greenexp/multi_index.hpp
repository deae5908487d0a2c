#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace greenexp {

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 8;

// Exponent vector of a monomial x^alpha in n variables, 2 <= n <= 8.
class MultiIndex {
public:
  explicit MultiIndex(int n) : e_(check_dim(n), 0) {}
  MultiIndex(std::initializer_list<int> e) : e_(e) {
    check_dim(static_cast<int>(e_.size()));
    for (int v : e_)
      if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
  }
  explicit MultiIndex(std::vector<int> e) : e_(std::move(e)) {
    check_dim(static_cast<int>(e_.size()));
    for (int v : e_)
      if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
  }

  int dimension() const { return static_cast<int>(e_.size()); }
  int order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

  int operator[](int i) const { return e_[i]; }
  int& operator[](int i) { return e_[i]; }

  // e_i added to slot i; throws rather than producing a negative exponent.
  MultiIndex bumped(int i, int delta) const {
    MultiIndex r(*this);
    r.e_[i] += delta;
    if (r.e_[i] < 0) throw std::logic_error("MultiIndex: exponent went negative");
    return r;
  }

  MultiIndex operator+(const MultiIndex& o) const {
    require_same_dim(o);
    MultiIndex r(*this);
    for (int i = 0; i < dimension(); ++i) r.e_[i] += o.e_[i];
    return r;
  }

  auto operator<=>(const MultiIndex& o) const = default;

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dimension(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

private:
  static int check_dim(int n) {
    if (n < kMinDimension || n > kMaxDimension)
      throw std::invalid_argument("MultiIndex: dimension must be in [2,8], got " +
                                  std::to_string(n));
    return n;
  }
  void require_same_dim(const MultiIndex& o) const {
    if (o.dimension() != dimension())
      throw std::invalid_argument("MultiIndex: dimension mismatch");
  }

  std::vector<int> e_;
};

}  // namespace greenexp
