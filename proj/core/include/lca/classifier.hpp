#pragma once

#include <string>
#include <vector>

#include "lca/conf_modules.hpp"
#include "lca/linear_system.hpp"
#include "lca/poly.hpp"
#include "lca/report.hpp"

namespace lca {

/// Ansatz for the W-side action polynomials h_0..h_K of degree <= D in each
/// of ∂ and λ, with the L-side actions g fixed by the published rank-one
/// shapes: case 1 uses g_0 = p(∂+aλ+b); case 2 (only at p = -1) adds
/// g_1 = c.
struct AnsatzSpec {
  long K = 2;
  long D = 4;
  int g_case = 1;
  Rational a = Rational(1), b = Rational(0), c = Rational(1);
  Rational p, alpha, beta;

  void validate() const;
};

/// One candidate W-action family: h[k] is a polynomial in D and lambda.
struct HSolution {
  std::vector<Poly> h;
  std::string str() const;
};

/// The compatibility equations between the fixed g-side and the unknown
/// h-side, expanded over all generator index pairs 0 <= i,j <= K and
/// collected per monomial into exact linear rows.
LinearSystem build_system(const AnsatzSpec& spec);

/// Unknown name for the coefficient of ∂^r λ^s in h_k.
std::string h_unknown_name(long k, long r, long s);

/// Decodes nullspace vectors into candidate h-families.
std::vector<HSolution> decode_solutions(const AnsatzSpec& spec, const LinearSystem& system,
                                        const NullspaceResult& ns);

/// Filters the candidates by the abelian-pair compatibility equations
/// (bilinear in h): basis vectors individually plus pairwise mixed terms.
struct AbelianFilter {
  std::vector<HSolution> kept;
  std::vector<std::string> witnesses;
};
AbelianFilter impose_abelian(const std::vector<HSolution>& solutions, const AnsatzSpec& spec);

/// Residuals of the specialized one-variable equations used by the case
/// analysis: the k=0 equation, the (k,0) pairing, and the (0,k) pairing
/// rewrite.
std::vector<CheckRecord> check_special_equations(const AnsatzSpec& spec, const HSolution& h);

struct SolveReport {
  AnsatzSpec spec;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  std::vector<HSolution> basis;
  std::string case_id;          // "i", "ii", "iii", "iv"
  std::size_t expected_dimension = 0;
  bool match = false;
  std::vector<CheckRecord> records;
};

/// Full pipeline: build, solve, filter, confirm the special equations,
/// check ∂-freeness, close the loop through the module-axiom checker, and
/// compare against the published case table.
SolveReport classify(const AnsatzSpec& spec);

/// Case id and expected extra W-freedom dimension for given parameters.
std::pair<std::string, std::size_t> expected_case(const Rational& p, const Rational& alpha,
                                                  const Rational& beta);

}  // namespace lca
