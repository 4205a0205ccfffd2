#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lca/rational.hpp"
#include "lca/ring.hpp"

namespace lca {

/// Sparse exponent vector: (variable, exponent) pairs with positive
/// exponents, sorted by variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::pair<VarRef, std::uint32_t>> factors);

  static Monomial one() { return Monomial(); }
  static Monomial var(VarRef v, std::uint32_t e = 1);

  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(VarRef v) const;
  std::uint32_t total_degree() const;
  const std::vector<std::pair<VarRef, std::uint32_t>>& factors() const { return factors_; }

  Monomial operator*(const Monomial& o) const;
  /// Removes variable v entirely (used by coefficient extraction).
  Monomial without(VarRef v) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.factors_ < b.factors_; }

 private:
  std::vector<std::pair<VarRef, std::uint32_t>> factors_;
};

/// Exact sparse multivariate polynomial over the rationals in a shared Ring.
/// Canonical form: no zero coefficients stored. Immutable in spirit; all
/// operations return fresh values.
class Poly {
 public:
  Poly() = default;  // ring-less zero; usable only as a placeholder

  static Poly zero(RingPtr ring);
  static Poly constant(RingPtr ring, Rational c);
  static Poly variable(RingPtr ring, VarRef v);
  static Poly variable(RingPtr ring, std::string_view name);

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (the whole value when is_constant()).
  Rational constant_term() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  /// Max exponent of v across terms; -1 for the zero polynomial.
  long degree(VarRef v) const;
  /// Max total degree; -1 for the zero polynomial.
  long total_degree() const;
  bool uses(VarRef v) const { return degree(v) > 0; }

  Rational coeff(const Monomial& m) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Rational& c) const;
  Poly pow(std::uint32_t e) const;

  /// Equality requires the same ring instance (throws otherwise); use
  /// structurally_equal for cross-ring comparison by variable name.
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Simultaneous substitution; image polynomials must live in this ring.
  Poly substitute(const std::map<VarRef, Poly>& images) const;
  Poly substitute(const std::map<std::string, Poly>& images) const;

  /// Raw coefficient of v^k as a polynomial in the remaining variables.
  Poly coeff_of(VarRef v, std::uint32_t k) const;

  /// Re-homes this polynomial into target, matching variables by name.
  Poly transfer(const RingPtr& target) const;

  /// Canonical textual form in DSL expression syntax; reparses to an equal
  /// polynomial. "0" for zero.
  std::string str() const;

 private:
  void prune();
  void require_same_ring(const Poly& o) const;

  RingPtr ring_;
  std::map<Monomial, Rational> terms_;
};

enum class CoeffMode { Raw, KthProduct };

/// Coefficient extraction: raw coefficient of var^degree, or k! times it in
/// k-th-product mode. Negative degree is an error.
Poly coeff_extract(const Poly& p, VarRef var, long degree, CoeffMode mode = CoeffMode::Raw);

/// Cross-ring structural comparison by variable names.
bool structurally_equal(const Poly& a, const Poly& b);

/// Divides p by (var + r), requiring an exact division; returns the
/// quotient. Throws when the remainder is nonzero.
Poly divide_by_linear(const Poly& p, VarRef var, const Rational& r);

}  // namespace lca
