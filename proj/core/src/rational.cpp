#include "lca/rational.hpp"

#include <charconv>

namespace lca {

Rational::Rational(BigInt num, BigInt den) {
  if (den.is_zero()) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  v_ = boost::multiprecision::cpp_rational(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<BigInt> {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) return std::nullopt;
    BigInt v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };

  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash));
  auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || d->is_zero()) return std::nullopt;
  return Rational(*n, *d);
}

std::string Rational::str() const {
  std::string s = numerator().str();
  if (!is_integer()) {
    s += '/';
    s += denominator().str();
  }
  return s;
}

Rational factorial(unsigned k) {
  BigInt v = 1;
  for (unsigned i = 2; i <= k; ++i) v *= i;
  return Rational(v);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return Rational(num, den);
}

}  // namespace lca
