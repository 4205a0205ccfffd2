#include <doctest.h>

#include "lca/catalog.hpp"

using namespace lca;

TEST_CASE("extended Block bracket at the lowest pair") {
  AlgebraDef def = make_algebra("B_abp").def;
  BracketEngine engine(def);
  const RingPtr& r = def.ring;
  LambdaValue v = engine.bracket(GenRef::at("L", 0), GenRef::at("W", 0), engine.lambda());
  Poly expected = Poly::variable(r, "p") * (Poly::variable(r, "D") + Poly::variable(r, "beta")) +
                  Poly::variable(r, "alpha") * Poly::variable(r, "lambda");
  REQUIRE(v.terms().size() == 1);
  CHECK(v.coeff(GenRef::at("W", 0)) == expected);
}

TEST_CASE("two-generator subalgebra brackets") {
  AlgebraDef def = make_algebra("W_ab").def;
  BracketEngine engine(def);
  const RingPtr& r = def.ring;
  Poly D = Poly::variable(r, "D");
  Poly lam = Poly::variable(r, "lambda");
  LambdaValue lw = engine.bracket(GenRef::at("L", 0), GenRef::at("W", 0), engine.lambda());
  CHECK(lw.coeff(GenRef::at("W", 0)) ==
        D + Poly::variable(r, "alpha") * lam + Poly::variable(r, "beta"));
  AlgebraDef vir = make_algebra("Vir").def;
  BracketEngine vir_engine(vir);
  LambdaValue ll = vir_engine.bracket(GenRef::at("L", 0), GenRef::at("L", 0),
                                      vir_engine.lambda());
  CHECK(ll.coeff(GenRef::at("L", 0)).transfer(r) == D + lam.scaled(2));
}

TEST_CASE("every catalog entry passes the axiom checks") {
  for (const std::string& name : catalog_names()) {
    AlgebraDef def = make_algebra(name).def;
    BracketEngine engine(def);
    CheckMode mode = engine.supports_symbolic() ? CheckMode::Symbolic : CheckMode::Enumerate;
    long max_index = def.truncation ? *def.truncation + 2 : 4;
    for (auto& rec : engine.check_axioms(mode, max_index))
      CHECK_MESSAGE(rec.pass, name, ": ", rec.id, " ", rec.subject);
  }
}

TEST_CASE("degree-zero quotient matches the two-generator subalgebra at p=1") {
  AlgebraDef base = make_algebra("B_abp").def;
  AlgebraDef q0 = quotient(base, 0, {{"p", Poly::constant(base.ring, 1)}});
  BracketEngine engine(q0);
  const RingPtr& r = q0.ring;
  Poly D = Poly::variable(r, "D");
  Poly lam = Poly::variable(r, "lambda");
  LambdaValue ll = engine.bracket(GenRef::at("L", 0), GenRef::at("L", 0), engine.lambda());
  CHECK(ll.coeff(GenRef::at("L", 0)) == D + lam.scaled(2));
  LambdaValue lw = engine.bracket(GenRef::at("L", 0), GenRef::at("W", 0), engine.lambda());
  CHECK(lw.coeff(GenRef::at("W", 0)) ==
        D + Poly::variable(r, "alpha") * lam + Poly::variable(r, "beta"));
}

TEST_CASE("rescaled L0 generates a Virasoro copy at concrete p") {
  for (long pv : {2L, 3L, -5L}) {
    AlgebraDef base = make_algebra("B_abp").def;
    AlgebraDef def = bind_params(base, {{"p", Poly::constant(base.ring, Rational(pv))}});
    BracketEngine engine(def);
    const RingPtr& r = def.ring;
    Rational inv_p = Rational(1) / Rational(pv);
    LambdaValue gen;
    gen.add(GenRef::at("L", 0), Poly::constant(r, inv_p));
    LambdaValue lhs = engine.bracket(gen, gen, engine.lambda());
    Poly vir = Poly::variable(r, "D") + Poly::variable(r, "lambda").scaled(2);
    LambdaValue residual = lhs - gen.scaled(vir);
    CHECK(residual.is_zero());
  }
}

TEST_CASE("quotient brackets agree with the full algebra below the cut") {
  AlgebraDef base = make_algebra("B_abp").def;
  for (long n : {0L, 1L, 2L, 3L}) {
    CheckRecord rec = quotient_agreement_check(base, n, n + 3);
    CHECK_MESSAGE(rec.pass, "n = ", n);
  }
  CHECK_THROWS_AS(quotient(base, -1), Error);
}

TEST_CASE("hand tables match the quotient construction") {
  CheckRecord b1 = cross_check_b1();
  CHECK_MESSAGE(b1.pass, (b1.witnesses.empty() ? std::string() : b1.witnesses.front()));
  CheckRecord b2 = cross_check_b2();
  CHECK_MESSAGE(b2.pass, (b2.witnesses.empty() ? std::string() : b2.witnesses.front()));
}

TEST_CASE("selected quotient brackets in the published renaming") {
  // [M λ W] = (1+alpha) λ G in the degree-1 quotient
  AlgebraDef b1 = make_bn(1);
  BracketEngine engine(b1);
  const RingPtr& r = b1.ring;
  LambdaValue mw = engine.bracket(GenRef::at("L", 1), GenRef::at("W", 0), engine.lambda());
  Poly expected = (Poly::constant(r, 1) + Poly::variable(r, "alpha")) *
                  Poly::variable(r, "lambda");
  REQUIRE(mw.terms().size() == 1);
  CHECK(mw.coeff(GenRef::at("W", 1)) == expected);

  // [Y λ Y] = (D + 2 λ) M with Y = Lbar1, M = -Lbar2 in the degree-2 quotient
  AlgebraDef b2 = make_bn(2);
  BracketEngine engine2(b2);
  const RingPtr& r2 = b2.ring;
  LambdaValue yy = engine2.bracket(GenRef::at("L", 1), GenRef::at("L", 1), engine2.lambda());
  Poly minus_vir = -(Poly::variable(r2, "D") + Poly::variable(r2, "lambda").scaled(2));
  REQUIRE(yy.terms().size() == 1);
  CHECK(yy.coeff(GenRef::at("L", 2)) == minus_vir);
}

TEST_CASE("Virasoro embedding holds at alpha'=1 and fails at alpha'=2") {
  for (const char* h : {"1", "5/3", "-2", "7", "1/2"}) {
    CheckRecord rec = virasoro_embedding_check(*Rational::parse(h));
    CHECK_MESSAGE(rec.pass, "h = ", h);
  }
  CheckRecord rec = virasoro_embedding_check(Rational(1), Rational(2));
  CHECK(!rec.pass);
  CHECK(!rec.witnesses.empty());
}

TEST_CASE("unknown catalog names are rejected") {
  CHECK_THROWS_AS(make_algebra("nope"), Error);
  CHECK_THROWS_AS(make_algebra("b0"), Error);
  CHECK_THROWS_AS(make_bn(0), Error);
}
