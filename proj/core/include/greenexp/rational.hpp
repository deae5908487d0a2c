#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace greenexp {

// Exact rational scalar. Always canonical: gcd(num, den) = 1, den > 0.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long num) : v_(num) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "a", "-a", "a/b".
  static Rational parse(const std::string& text) {
    mpq_class v;
    if (v.set_str(text, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    v.canonicalize();
    if (v.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
    return Rational(v);
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  // "n" when integral, "n/d" otherwise.
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_str();
  }

  // Exact square root when numerator and denominator are perfect squares.
  bool exact_sqrt(Rational& out) const {
    if (sign() < 0) return false;
    mpz_class num = v_.get_num(), den = v_.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
      return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = Rational(mpq_class(rn, rd));
    return true;
  }

  const mpq_class& raw() const { return v_; }

private:
  mpq_class v_;
};

// Uniform scalar hooks so the symbolic kernel can run over Rational or double.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_rational(const Rational& v) { return v; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static std::string str(const Rational& v) { return v.str(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& v) { return v.to_double(); }
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static std::string str(double v);
};

}  // namespace greenexp
