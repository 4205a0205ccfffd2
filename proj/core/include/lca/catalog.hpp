#pragma once

#include <string>
#include <vector>

#include "lca/bracket.hpp"

namespace lca {

struct CatalogEntry {
  std::string name;
  AlgebraDef def;
  std::string notes;  // parameter domain notes, e.g. "p != 0"
};

/// Names accepted by make_algebra: Bp, B_abp, W_ab, Vir, b1, b2, b1_table,
/// b2_table, and bN for any N >= 1 (e.g. b3).
const std::vector<std::string>& catalog_names();

CatalogEntry make_algebra(const std::string& name);

/// Truncated quotient: family ranges clipped to 0..n and targets of degree
/// > n sent to zero. Optional parameter bindings are applied first.
AlgebraDef quotient(const AlgebraDef& def, long n,
                    const std::map<std::string, Poly>& bind = {});

/// The degree-n quotient of the two-family extended Block algebra with p
/// bound to -n.
AlgebraDef make_bn(long n);

/// Verifies [(L+hW) λ (L+hW)] = (∂+2λ)(L+hW) inside the alpha'=1, beta=0
/// two-generator algebra (or any alpha' when given).
CheckRecord virasoro_embedding_check(const Rational& h, const Rational& alpha_prime = 1);

/// Bracket tables of the quotient-constructed b1/b2 against the
/// hand-transcribed single-generator tables, under the published renamings
/// (full linear change of basis).
CheckRecord cross_check_b1();
CheckRecord cross_check_b2();

/// Rule-by-rule agreement of quotient(A, n) with A wherever i+j <= n.
CheckRecord quotient_agreement_check(const AlgebraDef& full, long n, long max_index);

}  // namespace lca
