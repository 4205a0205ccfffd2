#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "lca/ast.hpp"
#include "lca/report.hpp"

namespace lca {

/// Reference to one generator of a graded family; the index is either a
/// concrete nonnegative integer or a linear expression in index variables
/// (symbolic mode).
struct GenRef {
  std::string family;
  IndexExpr index;

  static GenRef at(std::string family, long index) {
    return {std::move(family), IndexExpr::constant(index)};
  }
  static GenRef symbolic(std::string family, const std::string& var) {
    return {std::move(family), IndexExpr::variable(var)};
  }

  std::string str() const { return family + "(" + index.str() + ")"; }
  friend bool operator==(const GenRef& a, const GenRef& b) {
    return a.family == b.family && a.index == b.index;
  }
  friend bool operator<(const GenRef& a, const GenRef& b) {
    if (a.family != b.family) return a.family < b.family;
    return a.index < b.index;
  }
};

/// Finite C[∂]-linear combination of generators with polynomial
/// coefficients; the value type of λ-bracket evaluation. Canonical: no zero
/// coefficients stored.
class LambdaValue {
 public:
  LambdaValue() = default;

  static LambdaValue generator(const RingPtr& ring, const GenRef& g) {
    LambdaValue v;
    v.add(g, Poly::constant(ring, 1));
    return v;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<GenRef, Poly>& terms() const { return terms_; }
  const Poly& coeff(const GenRef& g) const;

  void add(const GenRef& g, const Poly& coeff);
  LambdaValue& operator+=(const LambdaValue& o);
  LambdaValue& operator-=(const LambdaValue& o);
  friend LambdaValue operator+(LambdaValue a, const LambdaValue& b) { return a += b; }
  friend LambdaValue operator-(LambdaValue a, const LambdaValue& b) { return a -= b; }
  LambdaValue operator-() const;

  LambdaValue scaled(const Poly& p) const;
  LambdaValue substituted(const std::map<std::string, Poly>& images) const;

  friend bool operator==(const LambdaValue& a, const LambdaValue& b) {
    return a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  std::map<GenRef, Poly> terms_;
};

enum class CheckMode { Symbolic, Enumerate };
enum class NestMode { OuterLeft, OuterRight };

/// λ-bracket evaluation over a parsed algebra definition: rule lookup with
/// skew-derived mirrors, sesquilinear extension to C[∂]-combinations, nested
/// brackets, k-th products, and the axiom checkers.
class BracketEngine {
 public:
  explicit BracketEngine(const AlgebraDef& def);

  const AlgebraDef& def() const { return *def_; }
  const RingPtr& ring() const { return def_->ring; }
  VarRef lambda() const { return lambda_; }
  VarRef mu() const { return mu_; }

  /// [a slot b] for single generators.
  LambdaValue bracket(const GenRef& a, const GenRef& b, VarRef slot) const;
  /// Bilinear extension to C[∂]-combinations: a left coefficient P(∂)
  /// contributes P(-slot), a right coefficient Q(∂) contributes Q(∂+slot).
  LambdaValue bracket(const LambdaValue& a, const LambdaValue& b, VarRef slot) const;

  /// OuterRight: [outer_slot inner] = sum Q_k(∂+slot, ...) [outer_slot e_k].
  /// OuterLeft: [inner_sigma outer] with sigma = outer_slot plus the given
  /// inner slots; coefficients P_k are evaluated at ∂ -> -sigma.
  LambdaValue nested_bracket(const GenRef& outer, const LambdaValue& inner,
                             std::span<const VarRef> inner_slots, VarRef outer_slot,
                             NestMode mode) const;

  /// k -> k! times the λ^k coefficient of [a λ b]; absent keys are zero.
  std::map<long, LambdaValue> kth_products(const GenRef& a, const GenRef& b) const;

  /// Residual [a λ b] + [b_{-λ-∂} a] per family pair.
  CheckRecord check_skew(const std::string& fam_a, const std::string& fam_b, CheckMode mode,
                         long max_index = 4) const;
  /// Residual [a λ [b µ c]] - [[a λ b]_{λ+µ} c] - [b µ [a λ c]].
  CheckRecord check_jacobi(const std::string& fam_a, const std::string& fam_b,
                           const std::string& fam_c, CheckMode mode, long max_index = 4) const;

  /// Runs skew on every family pair and Jacobi on every family triple.
  std::vector<CheckRecord> check_axioms(CheckMode mode, long max_index = 4) const;

  /// True when symbolic-index checking is sound for this algebra (no
  /// truncation, no guards, unbounded families).
  bool supports_symbolic() const;

 private:
  enum class Tri { True, False, Unknown };
  long sweep_bound(const std::string& family, long max_index) const;
  Tri eval_guard(const Guard& guard, const std::map<std::string, IndexExpr>& isub) const;
  /// Existence of a generator: false means the generator is zero in a
  /// truncated algebra; errors on negative or out-of-range indices.
  bool exists(const GenRef& g) const;
  bool target_exists(const std::string& family, const IndexExpr& index) const;
  LambdaValue rule_bracket(const GenRef& a, const GenRef& b, VarRef slot) const;
  LambdaValue instantiate(const BracketRule& rule, const GenRef& left, const GenRef& right,
                          VarRef slot) const;

  const AlgebraDef* def_;
  VarRef partial_, formal_, lambda_, mu_, nu_;
};

}  // namespace lca
