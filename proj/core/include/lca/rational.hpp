#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lca/error.hpp"

namespace lca {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar over arbitrary-precision integers.
/// Always normalized: gcd(|num|, den) = 1 and den >= 1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}            // NOLINT: implicit by design
  Rational(long n) : v_(n) {}           // NOLINT
  Rational(long long n) : v_(n) {}      // NOLINT
  explicit Rational(const BigInt& n) : v_(n) {}
  Rational(BigInt num, BigInt den);

  /// Parses "n" or "n/d" with optional leading '-'. Returns nullopt on
  /// malformed input or zero denominator.
  static std::optional<Rational> parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_.sign(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  /// "num" when integral, else "num/den".
  std::string str() const;

 private:
  boost::multiprecision::cpp_rational v_;
};

/// k! as an exact rational.
Rational factorial(unsigned k);

/// Binomial coefficient C(n, k) for n, k >= 0 (zero when k > n).
Rational binomial(unsigned n, unsigned k);

}  // namespace lca
