#include <doctest.h>

#include "lca/classifier.hpp"

using namespace lca;

namespace {

AnsatzSpec spec_for(const Rational& p, const Rational& alpha, const Rational& beta, long K = 2,
                    long D = 4) {
  AnsatzSpec spec;
  spec.p = p;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.K = K;
  spec.D = D;
  spec.g_case = p == Rational(-1) ? 2 : 1;
  return spec;
}

std::size_t solved_dimension(const AnsatzSpec& spec) {
  LinearSystem system = build_system(spec);
  return nullspace(system).dimension();
}

RingPtr solution_ring() {
  return Ring::make({{names::partial, VarKind::Partial},
                     {names::slot_lambda, VarKind::LambdaSlot},
                     {names::slot_mu, VarKind::LambdaSlot}});
}

}  // namespace

TEST_CASE("validation rejects bad ansatz parameters") {
  AnsatzSpec bad = spec_for(Rational(0), Rational(1), Rational(0));
  CHECK_THROWS_AS(bad.validate(), Error);
  AnsatzSpec small = spec_for(Rational(2), Rational(1), Rational(0));
  small.K = 0;
  CHECK_THROWS_AS(small.validate(), Error);
  AnsatzSpec wrong_case = spec_for(Rational(2), Rational(1), Rational(0));
  wrong_case.g_case = 2;
  CHECK_THROWS_AS(wrong_case.validate(), Error);
}

TEST_CASE("off-diagonal parameters force a trivial solution space") {
  CHECK(solved_dimension(spec_for(Rational(2), Rational(1), Rational(0))) == 0);
}

TEST_CASE("diagonal parameters leave exactly the constant freedom") {
  AnsatzSpec spec = spec_for(Rational(2), Rational(2), Rational(0));
  LinearSystem system = build_system(spec);
  NullspaceResult ns = nullspace(system);
  REQUIRE(ns.dimension() == 1);
  auto sols = decode_solutions(spec, system, ns);
  REQUIRE(sols.size() == 1);
  RingPtr r = sols[0].h[0].ring();
  CHECK(sols[0].h[0] == Poly::constant(r, 1));
  CHECK(sols[0].h[1].is_zero());
  CHECK(sols[0].h[2].is_zero());
}

TEST_CASE("the p=-1 diagonal keeps the constant freedom under the two-step g") {
  AnsatzSpec spec = spec_for(Rational(-1), Rational(-1), Rational(0));
  LinearSystem system = build_system(spec);
  NullspaceResult ns = nullspace(system);
  REQUIRE(ns.dimension() == 1);
  auto sols = decode_solutions(spec, system, ns);
  CHECK(sols[0].h[0] == Poly::constant(sols[0].h[0].ring(), 1));
}

TEST_CASE("abelian filter keeps constants and rejects a partial-dependent fixture") {
  AnsatzSpec spec = spec_for(Rational(2), Rational(2), Rational(0));
  RingPtr ring = solution_ring();
  HSolution constant;
  constant.h.assign(3, Poly::zero(ring));
  constant.h[0] = Poly::constant(ring, 7);
  AbelianFilter keep = impose_abelian({constant}, spec);
  CHECK(keep.kept.size() == 1);
  CHECK(keep.witnesses.empty());

  HSolution partial_dep;
  partial_dep.h.assign(3, Poly::zero(ring));
  partial_dep.h[0] = Poly::variable(ring, names::partial);
  AbelianFilter drop = impose_abelian({partial_dep}, spec);
  CHECK(drop.kept.empty());
  REQUIRE(!drop.witnesses.empty());
  CHECK(drop.witnesses.front().find("abelian residual") != std::string::npos);

  CHECK(impose_abelian({}, spec).kept.empty());
}

TEST_CASE("special equations decide the constant candidate by regime") {
  RingPtr ring = solution_ring();
  HSolution d_const;
  d_const.h.assign(3, Poly::zero(ring));
  d_const.h[0] = Poly::constant(ring, 5);

  // on the diagonal the constant survives
  auto diag = check_special_equations(spec_for(Rational(2), Rational(2), Rational(0)), d_const);
  for (auto& rec : diag) CHECK(rec.pass);

  // off the diagonal the k=0 equation rejects it
  auto off = check_special_equations(spec_for(Rational(2), Rational(1), Rational(0)), d_const);
  CHECK(!off.front().pass);

  // at p = alpha = -1, a nonzero h1 is rejected by the rewritten pairing
  HSolution h1_const;
  h1_const.h.assign(3, Poly::zero(ring));
  h1_const.h[1] = Poly::constant(ring, 1);
  auto rewritten =
      check_special_equations(spec_for(Rational(-1), Rational(-1), Rational(0)), h1_const);
  bool k1_failed = false;
  for (auto& rec : rewritten)
    if (rec.id == "special-eq-k1" && !rec.pass) k1_failed = true;
  CHECK(k1_failed);
}

TEST_CASE("classify matches the case table on representative regimes") {
  struct Row {
    Rational p, alpha, beta;
    const char* case_id;
    std::size_t dim;
  };
  const Row rows[] = {
      {Rational(3), Rational(0), Rational(5), "i", 0},
      {Rational(2), Rational(2), Rational(0), "ii", 1},
      {Rational(2), Rational(1), Rational(0), "i", 0},
      {Rational(2), Rational(2), Rational(1), "i", 0},
      {Rational(-1), Rational(2), Rational(0), "iii", 0},
      {Rational(-1), Rational(-1), Rational(3), "iii", 0},
      {Rational(-1), Rational(-1), Rational(BigInt(1), BigInt(2)), "iii", 0},
      {Rational(-1), Rational(-1), Rational(0), "iv", 1},
  };
  for (const Row& row : rows) {
    SolveReport report = classify(spec_for(row.p, row.alpha, row.beta));
    CHECK_MESSAGE(report.match, "p=", row.p.str(), " alpha=", row.alpha.str(),
                  " beta=", row.beta.str());
    CHECK(report.case_id == row.case_id);
    CHECK(report.dimension == row.dim);
  }
}

TEST_CASE("the solution space dimension is stable under larger bounds") {
  for (auto& [p, alpha, beta] :
       {std::tuple<long, long, long>{2, 2, 0}, {2, 1, 0}, {-1, -1, 0}}) {
    std::size_t small = solved_dimension(spec_for(Rational(p), Rational(alpha), Rational(beta)));
    std::size_t large =
        solved_dimension(spec_for(Rational(p), Rational(alpha), Rational(beta), 4, 6));
    CHECK(small == large);
  }
}

TEST_CASE("every surviving solution is free of the partial variable") {
  SolveReport report = classify(spec_for(Rational(2), Rational(2), Rational(0)));
  REQUIRE(report.dimension == 1);
  VarRef D = report.basis[0].h[0].ring()->var(names::partial);
  for (auto& h : report.basis[0].h) CHECK(h.degree(D) <= 0);
  bool freeness_checked = false;
  for (auto& rec : report.records)
    if (rec.id == "partial-freeness") freeness_checked = rec.pass;
  CHECK(freeness_checked);
}

TEST_CASE("classification closes the loop through the module checker") {
  SolveReport report = classify(spec_for(Rational(2), Rational(2), Rational(0)));
  bool closed = false;
  for (auto& rec : report.records)
    if (rec.id == "solution-module-axiom") closed = rec.pass;
  CHECK(closed);
}

TEST_CASE("non-default g parameters still classify") {
  AnsatzSpec spec = spec_for(Rational(2), Rational(1), Rational(3));
  spec.a = Rational(BigInt(2), BigInt(3));
  spec.b = Rational(-4);
  SolveReport report = classify(spec);
  CHECK(report.match);
  CHECK(report.dimension == 0);

  AnsatzSpec spec2 = spec_for(Rational(-1), Rational(-1), Rational(0));
  spec2.a = Rational(0);
  spec2.c = Rational(5);
  SolveReport report2 = classify(spec2);
  CHECK(report2.match);
  CHECK(report2.dimension == 1);
}
