#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lca/poly.hpp"

namespace lca {

/// Linear integer form in index variables: sum of coeff*var plus offset.
class IndexExpr {
 public:
  IndexExpr() = default;
  static IndexExpr constant(long c);
  static IndexExpr variable(const std::string& name);

  bool is_concrete() const { return coeffs_.empty(); }
  long concrete() const;
  long offset() const { return offset_; }
  const std::map<std::string, long>& coeffs() const { return coeffs_; }

  IndexExpr operator+(const IndexExpr& o) const;
  IndexExpr operator-(const IndexExpr& o) const;
  IndexExpr scaled(long k) const;

  /// Substitutes variables; unmapped variables stay.
  IndexExpr substituted(const std::map<std::string, IndexExpr>& images) const;
  /// As a polynomial in the given ring (variables resolved by name).
  Poly to_poly(const RingPtr& ring) const;

  std::string str() const;

  friend bool operator==(const IndexExpr& a, const IndexExpr& b) {
    return a.offset_ == b.offset_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const IndexExpr& a, const IndexExpr& b) {
    if (a.offset_ != b.offset_) return a.offset_ < b.offset_;
    return a.coeffs_ < b.coeffs_;
  }

 private:
  std::map<std::string, long> coeffs_;
  long offset_ = 0;
};

enum class CmpOp { Eq, Ne, Le, Lt, Ge, Gt };

std::string cmp_str(CmpOp op);

/// One guard conjunct. Index comparisons select when a rule applies;
/// parameter equalities gate the coefficient (Kronecker-delta style) and are
/// decided by structural polynomial equality at instantiation time.
struct GuardAtom {
  enum class Kind { IndexCmp, ParamCmp } kind;
  // IndexCmp
  IndexExpr ilhs, irhs;
  CmpOp op = CmpOp::Eq;
  // ParamCmp (op restricted to Eq/Ne)
  std::string param;
  std::variant<std::string, Rational> rhs;

  std::string str() const;
  bool operator==(const GuardAtom& o) const;
};

struct Guard {
  std::vector<GuardAtom> atoms;  // conjunction
  std::string str() const;
  bool operator==(const Guard& o) const = default;
};

struct FamilyDecl {
  std::string name;
  std::optional<long> max_index;  // nullopt: all i >= 0; else range 0..max
  bool operator==(const FamilyDecl& o) const = default;
};

struct ResultTerm {
  Poly coeff;            // in D, X, rule index vars, params
  std::string family;    // target family
  IndexExpr index;       // target index, linear in the rule's index vars
};

struct BracketRule {
  std::string left_family, left_var;
  std::string right_family, right_var;
  std::vector<ResultTerm> result;  // empty: zero bracket
  std::optional<Guard> guard;
};

/// A parsed algebra definition. Rule coefficients live in `ring`, which
/// declares D (the partial), X (the rule-formal lambda slot), the evaluation
/// slots lambda/mu/nu, all params, and every index variable in use plus the
/// reserved index variables i, j, k, l.
struct AlgebraDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<FamilyDecl> families;
  std::vector<BracketRule> rules;
  std::optional<long> truncation;
  RingPtr ring;
  /// Accumulated parameter bindings (already substituted into the rules);
  /// guard evaluation resolves parameter names through this map.
  std::map<std::string, Poly> bound;

  const FamilyDecl* find_family(std::string_view fam) const;
  const FamilyDecl& family(std::string_view fam) const;
  /// Declared rule for the ordered pair, if any.
  const BracketRule* find_rule(std::string_view left, std::string_view right) const;
  /// Current value of a parameter: its binding, or itself as a variable.
  Poly param_value(const std::string& name) const;
};

/// One action statement of a module definition.
struct ActionRule {
  std::string family;
  std::optional<long> concrete_index;  // action L(0) = ...
  std::string index_var;               // action L(i) = ... (when not concrete)
  std::string basis_var;               // graded only: v(j) pattern
  std::optional<Guard> guard;
  Poly coeff;                          // in D, X, index vars, params
  IndexExpr target;                    // graded only: target basis index
};

struct ModuleDef {
  std::string name;
  std::string algebra_name;
  bool graded = false;
  std::vector<std::string> params;  // module-local parameters
  std::vector<ActionRule> actions;
  RingPtr ring;  // algebra ring extended by module params (and basis vars)
  std::map<std::string, Poly> bound;

  Poly param_value(const std::string& name) const;
};

/// Reserved variable names present in every definition ring.
namespace names {
inline constexpr const char* partial = "D";
inline constexpr const char* slot_formal = "X";
inline constexpr const char* slot_lambda = "lambda";
inline constexpr const char* slot_mu = "mu";
inline constexpr const char* slot_nu = "nu";
}  // namespace names

/// Builds the ring for an algebra definition: builtins, params, index vars.
RingPtr build_definition_ring(const std::vector<std::string>& params,
                              const std::vector<std::string>& index_vars);

bool structurally_equal(const AlgebraDef& a, const AlgebraDef& b);
bool structurally_equal(const ModuleDef& a, const ModuleDef& b);

/// Substitutes parameters by constants (or other parameters) in every rule
/// coefficient. Binding an undeclared parameter is an error.
AlgebraDef bind_params(const AlgebraDef& def, const std::map<std::string, Poly>& bindings);
ModuleDef bind_params(const ModuleDef& def, const std::map<std::string, Poly>& bindings);

}  // namespace lca
