#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lca/bracket.hpp"
#include "lca/conf_modules.hpp"
#include "lca/linear_system.hpp"

namespace lca {

/// Basis symbol of an (extended) annihilation algebra. Mode conventions are
/// carried explicitly: raw means a_(n) with n >= 0 for any family; shifted
/// means the L_{i,m} = (L_i)_(m+1) convention with m >= -1 (W modes are the
/// same in both conventions).
struct AnnElement {
  enum class Kind { Generator, Partial };
  Kind kind = Kind::Generator;
  std::string family;
  long index = 0;
  long mode = 0;
  bool shifted = false;

  static AnnElement partial() { return {Kind::Partial, "", 0, 0, false}; }
  static AnnElement raw(std::string family, long index, long mode) {
    return {Kind::Generator, std::move(family), index, mode, false};
  }
  static AnnElement at(std::string family, long index, long mode) {
    return {Kind::Generator, std::move(family), index, mode, true};
  }

  std::string str() const;
  friend bool operator==(const AnnElement& a, const AnnElement& b) {
    return a.kind == b.kind && a.family == b.family && a.index == b.index && a.mode == b.mode &&
           a.shifted == b.shifted;
  }
  friend bool operator<(const AnnElement& a, const AnnElement& b);
};

using AnnValue = std::map<AnnElement, Poly>;

std::string ann_value_str(const AnnValue& v);

/// Annihilation-algebra constructions over an algebra definition. The
/// generic expansion route works for any definition; the closed-form route
/// and the finite quotients require the two-family extended Block shape
/// (families L and W, parameters alpha, beta, p).
class Annihilation {
 public:
  explicit Annihilation(const AlgebraDef& def);

  /// Binomial-sum expansion of [a_(m), b_(n)] from the k-th products, with
  /// polynomial ∂-coefficients pushed down via (∂a)_(t) = -t a_(t-1).
  /// Raw modes in and out.
  AnnValue bracket_expanded(const std::string& fam_a, long i, long m_raw,
                            const std::string& fam_b, long j, long n_raw) const;
  /// [∂, a_(n)] = -n a_(n-1), raw modes.
  AnnValue partial_bracket_expanded(const std::string& fam, long i, long n_raw) const;

  /// Closed-form brackets of the shifted basis L_{i,m} (m >= -1), W_{j,n}
  /// (n >= 0), and the adjoined ∂.
  AnnValue bracket_closed(const AnnElement& a, const AnnElement& b) const;

  /// Exhaustive agreement of the closed form with the expansion route over
  /// 0 <= i,j <= imax, L modes in [-1, mmax], W modes in [0, mmax],
  /// including the extended ∂ rows.
  CheckRecord verify_closed_form(long imax, long mmax) const;

  /// Finite quotient on the box 0 <= i,j <= k, 0 <= m,n <= N with
  /// out-of-range targets sent to zero. Parameters must be bound to
  /// concrete rationals.
  class FinLieAlgebra build_Q(long k, long N, const std::map<std::string, Rational>& bind) const;

  const AlgebraDef& def() const { return *def_; }

 private:
  AnnValue push_partial_down(const LambdaValue& value, long t) const;
  const AlgebraDef* def_;
  BracketEngine engine_;
  bool block_shape_;  // families L, W with params alpha, beta, p
};

/// Finite-dimensional Lie algebra with exact structure constants.
class FinLieAlgebra {
 public:
  explicit FinLieAlgebra(std::vector<std::string> basis);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::string>& basis() const { return basis_; }
  void set_bracket(std::size_t x, std::size_t y, std::map<std::size_t, Rational> value);
  const std::map<std::size_t, Rational>& bracket(std::size_t x, std::size_t y) const;
  std::map<std::size_t, Rational> bracket_vectors(const SparseRow& u, const SparseRow& v) const;

  CheckRecord check_antisymmetry() const;
  CheckRecord check_jacobi() const;

  /// Dimensions of the derived series until it stabilizes.
  std::vector<std::size_t> derived_series_dims() const;
  bool is_solvable() const;

  /// JSON array of {left, right, result: [{basis, coeff}]} with exact
  /// "num/den" coefficient strings; nonzero brackets only, in basis order.
  nlohmann::json structure_constants_json() const;

  static FinLieAlgebra sl2();

 private:
  std::vector<std::string> basis_;
  std::vector<std::vector<std::map<std::size_t, Rational>>> table_;
};

/// k-th action coefficient a_(k)v of a rank-one module: k! times the X^k
/// coefficient of the action polynomial.
Poly kth_action(const RankOneModule& m, const std::string& family, long index, long k);

}  // namespace lca
