#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lca/bracket.hpp"
#include "lca/catalog.hpp"

namespace lca {

/// The rank-one module families: four over the two-family extended Block
/// algebra and four over its finite quotients b(n).
enum class Rank1Family { Vab, Vabd, Vabc, Vabcd, BnVab, BnVabd, B1Vabc, B1Vabcd };

std::string rank1_family_name(Rank1Family fam, long n);

/// A free rank-one module: one action polynomial A(∂, X) per generator,
/// with parameter bindings already substituted into both the module and its
/// base algebra.
struct RankOneModule {
  std::optional<Rank1Family> tag;
  long bn = 0;  // n for the b(n) families, 0 otherwise
  AlgebraDef algebra;
  ModuleDef module;
};

/// Constructs one of the published families. Family-specific constraints
/// (e.g. alpha = p, beta = 0 for Vabd) are bound automatically; user
/// bindings that contradict them raise an error. `n` selects the quotient
/// degree for the BnVab/BnVabd families.
RankOneModule make_rank1(Rank1Family fam, const std::map<std::string, Rational>& bindings = {},
                         long n = 2);

/// Name-based constructor: "Vab", "Vabd", "Vabc", "Vabcd", "b1_Vabc",
/// "b1_Vabcd", or "b<N>_Vab" / "b<N>_Vabd".
RankOneModule make_rank1(const std::string& name,
                         const std::map<std::string, Rational>& bindings = {});

/// Action polynomial of generator family(index) on the free generator.
/// Exactly one action rule must cover each generator.
Poly action_coeff(const RankOneModule& m, const std::string& family, long index);

/// Def. of conformal module residuals: x λ (y µ v) - y µ (x λ v) -
/// [x λ y]_{λ+µ} v over all generator pairs with indices up to max_index
/// (default: the larger of 2 and the algebra's truncation degree).
std::vector<CheckRecord> check_module_axiom(const RankOneModule& m, long max_index = -1);

/// Z-graded module with one free generator per degree.
struct GradedModule {
  AlgebraDef algebra;
  ModuleDef module;
};

/// "V_graded" (intermediate series over the one-family Block algebra) or
/// "Vabc_graded" (over the two-family extension, with the Kronecker-guarded
/// W action).
GradedModule make_graded(const std::string& name,
                         const std::map<std::string, Rational>& bindings = {},
                         const std::map<std::string, Poly>& symbolic_bindings = {});

struct GradedCheckOptions {
  long window = 6;         // basis indices swept over [-window, window]
  long max_gen_index = 2;  // generator indices swept over [0, max_gen_index]
  bool symbolic_indices = false;
};

std::vector<CheckRecord> check_graded_module(const GradedModule& m,
                                             const GradedCheckOptions& opts = {});

/// Roots r such that (∂+r)v generates a proper submodule: for every action
/// A, substituting ∂ = -r into (∂+X+r)A(∂,X) must vanish identically.
/// Requires concrete parameter bindings.
std::vector<Rational> invariant_factor_deg1(const RankOneModule& m);

/// The published irreducibility criterion of a family, e.g. "a != 0".
std::string family_criterion(Rank1Family fam);

struct IrreducibilityVerdict {
  bool irreducible = false;
  std::string criterion;
  std::vector<Rational> deg1_factors;
  /// irreducible implies no degree-1 invariant factor; false flags a bug.
  bool consistent = true;
};

/// Applies the family's published criterion and cross-checks it against the
/// degree-1 invariant factor search. Requires a tagged module with concrete
/// bindings.
IrreducibilityVerdict is_irreducible(const RankOneModule& m);

/// The induced module on the submodule generated by (∂+root)v: actions
/// (∂+X+root)A(∂,X)/(∂+root). Exact by the invariant-factor criterion.
RankOneModule induced_quotient_module(const RankOneModule& m, const Rational& root);

}  // namespace lca
