#include <doctest.h>

#include <random>

#include "lca/conf_modules.hpp"
#include "lca/parser.hpp"

using namespace lca;

namespace {

const std::vector<std::pair<Rank1Family, long>>& all_families() {
  static const std::vector<std::pair<Rank1Family, long>> fams = {
      {Rank1Family::Vab, 0},    {Rank1Family::Vabd, 0},   {Rank1Family::Vabc, 0},
      {Rank1Family::Vabcd, 0},  {Rank1Family::BnVab, 2},  {Rank1Family::BnVabd, 2},
      {Rank1Family::B1Vabc, 1}, {Rank1Family::B1Vabcd, 1}};
  return fams;
}

bool axiom_passes(const RankOneModule& m) {
  for (auto& rec : check_module_axiom(m))
    if (!rec.pass) return false;
  return true;
}

}  // namespace

TEST_CASE("the basic family pins the published actions") {
  RankOneModule m = make_rank1(Rank1Family::Vab);
  const RingPtr& r = m.module.ring;
  Poly expected = Poly::variable(r, "p") *
                  (Poly::variable(r, "D") +
                   Poly::variable(r, "a") * Poly::variable(r, "X") + Poly::variable(r, "b"));
  CHECK(action_coeff(m, "L", 0) == expected);
  for (long i = 1; i <= 4; ++i) CHECK(action_coeff(m, "L", i).is_zero());
  for (long i = 0; i <= 4; ++i) CHECK(action_coeff(m, "W", i).is_zero());
}

TEST_CASE("the four-parameter family adds the two constant actions") {
  RankOneModule m = make_rank1(Rank1Family::Vabcd);
  const RingPtr& r = m.module.ring;
  CHECK(action_coeff(m, "L", 1) == Poly::variable(r, "c"));
  CHECK(action_coeff(m, "W", 0) == Poly::variable(r, "d"));
  CHECK(action_coeff(m, "L", 2).is_zero());
  // p, alpha, beta are pinned by the family constraints
  CHECK(m.module.param_value("p") == Poly::constant(r, -1));
  CHECK(m.module.param_value("alpha") == Poly::constant(r, -1));
  CHECK(m.module.param_value("beta") == Poly::constant(r, 0));
}

TEST_CASE("quotient families scale the zeroth action by -n") {
  RankOneModule m = make_rank1(Rank1Family::BnVabd, {}, 2);
  const RingPtr& r = m.module.ring;
  Poly expected = (Poly::variable(r, "D") +
                   Poly::variable(r, "a") * Poly::variable(r, "X") + Poly::variable(r, "b"))
                      .scaled(-2);
  CHECK(action_coeff(m, "L", 0) == expected);
  CHECK(action_coeff(m, "W", 0) == Poly::variable(r, "d"));
  CHECK(action_coeff(m, "L", 2).is_zero());
  CHECK(m.module.param_value("alpha") == Poly::constant(r, -2));
}

TEST_CASE("constraint violations are rejected") {
  CHECK_THROWS_AS(make_rank1(Rank1Family::Vabd, {{"beta", Rational(1)}}), Error);
  CHECK_THROWS_AS(make_rank1(Rank1Family::Vabc, {{"p", Rational(2)}}), Error);
  CHECK_THROWS_AS(make_rank1(Rank1Family::B1Vabcd, {{"alpha", Rational(3)}}), Error);
  // consistent explicit bindings are fine
  RankOneModule m = make_rank1(Rank1Family::Vabd, {{"alpha", Rational(2)}, {"p", Rational(2)},
                                                   {"beta", Rational(0)}});
  CHECK(axiom_passes(m));
}

TEST_CASE("name-based construction covers the quotient families") {
  CHECK(make_rank1("b3_Vab").bn == 3);
  CHECK(make_rank1("b1_Vabcd").bn == 1);
  CHECK_THROWS_AS(make_rank1("b3_Vabcd"), Error);
  CHECK_THROWS_AS(make_rank1("nope"), Error);
}

TEST_CASE("all eight families pass the module axiom with symbolic parameters") {
  for (auto& [fam, n] : all_families()) {
    RankOneModule m = make_rank1(fam, {}, n);
    for (auto& rec : check_module_axiom(m))
      CHECK_MESSAGE(rec.pass, rank1_family_name(fam, n), ": ", rec.subject, " ",
                    (rec.witnesses.empty() ? std::string() : rec.witnesses.front()));
  }
}

TEST_CASE("a corrupted action fails the axiom on the diagonal pair") {
  AlgebraDef algebra = make_algebra("B_abp").def;
  ModuleDef module = parse_module(R"(module broken over B_abp
params a b
action L(0) = p*(D + a*X^2 + b)
action L(i) = 0 if i >= 1
action W(i) = 0
)",
                                  algebra);
  RankOneModule m;
  m.algebra = algebra;
  m.module = module;
  bool diagonal_failed = false;
  for (auto& rec : check_module_axiom(m))
    if (!rec.pass && rec.subject.find("(L, L)") != std::string::npos) diagonal_failed = true;
  CHECK(diagonal_failed);
}

TEST_CASE("graded intermediate-series module passes in and out of the window") {
  GradedModule gm = make_graded("V_graded");
  for (auto& rec : check_graded_module(gm))
    CHECK_MESSAGE(rec.pass, rec.subject, " ", (rec.witnesses.empty() ? std::string() : rec.witnesses.front()));
  GradedCheckOptions symbolic;
  symbolic.symbolic_indices = true;
  for (auto& rec : check_graded_module(gm, symbolic)) CHECK(rec.pass);
}

TEST_CASE("graded module over the extension under the Kronecker guard") {
  // alpha = p, beta = 0 bound symbolically: the W action is live
  AlgebraDef probe = make_algebra("B_abp").def;
  GradedModule live = make_graded("Vabc_graded", {},
                                  {{"alpha", Poly::variable(probe.ring, "p")},
                                   {"beta", Poly::constant(probe.ring, 0)}});
  bool w_live = false;
  for (auto& a : live.module.actions)
    if (a.family == "W" && !a.coeff.is_zero()) w_live = true;
  CHECK(w_live);
  for (auto& rec : check_graded_module(live)) CHECK_MESSAGE(rec.pass, rec.subject);

  // fully symbolic parameters: the guard turns the W action off at
  // instantiation (the rule text still carries c) and residuals vanish
  GradedModule guarded = make_graded("Vabc_graded");
  for (auto& rec : check_graded_module(guarded)) CHECK(rec.pass);
  GradedCheckOptions symbolic;
  symbolic.symbolic_indices = true;
  for (auto& rec : check_graded_module(guarded, symbolic)) CHECK(rec.pass);
}

TEST_CASE("degree-one invariant factors of the degenerate bindings") {
  RankOneModule flat = make_rank1(Rank1Family::Vab, {{"a", Rational(0)}, {"b", Rational(3)},
                                                     {"p", Rational(2)}, {"alpha", Rational(1)},
                                                     {"beta", Rational(0)}});
  auto roots = invariant_factor_deg1(flat);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == Rational(3));

  RankOneModule moving = make_rank1(Rank1Family::Vab, {{"a", Rational(1)}, {"b", Rational(0)},
                                                       {"p", Rational(2)}, {"alpha", Rational(1)},
                                                       {"beta", Rational(0)}});
  CHECK(invariant_factor_deg1(moving).empty());

  RankOneModule blocked = make_rank1(Rank1Family::Vabd, {{"a", Rational(0)}, {"b", Rational(0)},
                                                         {"d", Rational(1)}, {"p", Rational(2)},
                                                         {"alpha", Rational(2)},
                                                         {"beta", Rational(0)}});
  CHECK(invariant_factor_deg1(blocked).empty());

  RankOneModule symbolic = make_rank1(Rank1Family::Vab);
  CHECK_THROWS_AS(invariant_factor_deg1(symbolic), Error);
}

TEST_CASE("irreducibility criteria and the published examples") {
  RankOneModule v1 = make_rank1(Rank1Family::Vab, {{"a", Rational(2)}, {"b", Rational(0)},
                                                   {"p", Rational(3)}, {"alpha", Rational(0)},
                                                   {"beta", Rational(5)}});
  IrreducibilityVerdict r1 = is_irreducible(v1);
  CHECK(r1.irreducible);
  CHECK(r1.criterion == "a != 0");
  CHECK(r1.consistent);

  RankOneModule v2 = make_rank1(Rank1Family::Vabcd, {{"a", Rational(0)}, {"b", Rational(0)},
                                                     {"c", Rational(0)}, {"d", Rational(0)}});
  IrreducibilityVerdict r2 = is_irreducible(v2);
  CHECK(!r2.irreducible);

  RankOneModule v3 = make_rank1(Rank1Family::Vabc, {{"a", Rational(0)}, {"b", Rational(1)},
                                                    {"c", Rational(7)}, {"alpha", Rational(2)},
                                                    {"beta", Rational(0)}});
  IrreducibilityVerdict r3 = is_irreducible(v3);
  CHECK(r3.irreducible);
  CHECK(r3.criterion == "a != 0 or c != 0");
  CHECK(r3.deg1_factors.empty());
}

TEST_CASE("random irreducible bindings never have a degree-1 factor") {
  std::mt19937 rng(20240815);
  std::uniform_int_distribution<long long> val(-5, 5);
  auto pick = [&] { return Rational(val(rng)); };
  for (auto& [fam, n] : all_families()) {
    int done = 0;
    while (done < 20) {
      std::map<std::string, Rational> binds = {{"a", pick()}, {"b", pick()}};
      if (fam == Rank1Family::Vab || fam == Rank1Family::Vabd) {
        Rational p = pick();
        if (p.is_zero()) continue;
        binds.emplace("p", p);
      }
      if (fam == Rank1Family::Vab) {
        binds.emplace("alpha", pick());
        binds.emplace("beta", pick());
      }
      if (fam == Rank1Family::Vabd) {
        binds.emplace("alpha", binds.at("p"));
        binds.emplace("beta", Rational(0));
      }
      if (fam == Rank1Family::Vabc || fam == Rank1Family::BnVab || fam == Rank1Family::B1Vabc) {
        binds.emplace("alpha", pick());
        binds.emplace("beta", pick());
      }
      if (fam == Rank1Family::Vabc || fam == Rank1Family::Vabcd ||
          fam == Rank1Family::B1Vabc || fam == Rank1Family::B1Vabcd)
        binds.emplace("c", pick());
      if (fam == Rank1Family::Vabd || fam == Rank1Family::Vabcd ||
          fam == Rank1Family::BnVabd || fam == Rank1Family::B1Vabcd)
        binds.emplace("d", pick());
      RankOneModule m = make_rank1(fam, binds, n);
      IrreducibilityVerdict verdict = is_irreducible(m);
      if (!verdict.irreducible) continue;
      CHECK(verdict.deg1_factors.empty());
      CHECK(verdict.consistent);
      ++done;
    }
  }
}

TEST_CASE("the degenerate bindings yield exactly the root b across families") {
  for (auto& [fam, n] : all_families()) {
    for (long bval : {-2L, 0L, 3L}) {
      std::map<std::string, Rational> binds = {{"a", Rational(0)}, {"b", Rational(bval)}};
      if (fam == Rank1Family::Vab || fam == Rank1Family::Vabd) binds.emplace("p", Rational(2));
      if (fam == Rank1Family::Vab) {
        binds.emplace("alpha", Rational(1));
        binds.emplace("beta", Rational(4));
      }
      if (fam == Rank1Family::Vabc || fam == Rank1Family::BnVab || fam == Rank1Family::B1Vabc) {
        binds.emplace("alpha", Rational(1));
        binds.emplace("beta", Rational(0));
      }
      if (fam == Rank1Family::Vabc || fam == Rank1Family::Vabcd ||
          fam == Rank1Family::B1Vabc || fam == Rank1Family::B1Vabcd)
        binds.emplace("c", Rational(0));
      if (fam == Rank1Family::Vabd || fam == Rank1Family::Vabcd ||
          fam == Rank1Family::BnVabd || fam == Rank1Family::B1Vabcd)
        binds.emplace("d", Rational(0));
      RankOneModule m = make_rank1(fam, binds, n);
      auto roots = invariant_factor_deg1(m);
      REQUIRE_MESSAGE(roots.size() == 1, rank1_family_name(fam, n), " b=", bval);
      CHECK(roots[0] == Rational(bval));
      CHECK(!is_irreducible(m).irreducible);
    }
  }
}

TEST_CASE("the induced module of the degenerate family is the a=1 family") {
  for (long bval : {0L, 3L, -5L}) {
    RankOneModule flat = make_rank1(Rank1Family::Vab, {{"a", Rational(0)}, {"b", Rational(bval)},
                                                       {"p", Rational(2)},
                                                       {"alpha", Rational(1)},
                                                       {"beta", Rational(0)}});
    RankOneModule induced = induced_quotient_module(flat, Rational(bval));
    CHECK(axiom_passes(induced));
    RankOneModule target = make_rank1(Rank1Family::Vab, {{"a", Rational(1)}, {"b", Rational(bval)},
                                                         {"p", Rational(2)},
                                                         {"alpha", Rational(1)},
                                                         {"beta", Rational(0)}});
    for (auto& fam : {"L", "W"})
      for (long idx = 0; idx <= 2; ++idx)
        CHECK(structurally_equal(action_coeff(induced, fam, idx),
                                 action_coeff(target, fam, idx)));
  }
}

TEST_CASE("higher quotients keep the axiom with symbolic parameters") {
  AlgebraDef b3 = make_bn(3);
  BracketEngine engine(b3);
  for (auto& rec : engine.check_axioms(CheckMode::Enumerate, 5)) CHECK(rec.pass);
  for (auto fam : {Rank1Family::BnVab, Rank1Family::BnVabd}) {
    RankOneModule m = make_rank1(fam, {}, 3);
    for (auto& rec : check_module_axiom(m))
      CHECK_MESSAGE(rec.pass, rank1_family_name(fam, 3), ": ", rec.subject);
  }
}

TEST_CASE("quotient-family actions vanish beyond the declared support") {
  for (long n : {1L, 2L, 3L}) {
    RankOneModule m = make_rank1(Rank1Family::BnVab, {}, n);
    for (long i = 1; i <= n; ++i) {
      CHECK(action_coeff(m, "L", i).is_zero());
      CHECK(action_coeff(m, "W", i).is_zero());
    }
    CHECK(!action_coeff(m, "L", 0).is_zero());
  }
}

TEST_CASE("module parameters are namespaced away from the algebra's") {
  // the graded family over the extension uses a, b, c next to the
  // algebra-level alpha, beta, p without collision
  GradedModule gm = make_graded("Vabc_graded");
  CHECK(gm.module.ring->has("a"));
  CHECK(gm.module.ring->has("alpha"));
  CHECK(gm.module.params == std::vector<std::string>{"a", "b", "c"});
  // declaring a module parameter that shadows an algebra name is an error
  AlgebraDef algebra = make_algebra("B_abp").def;
  CHECK_THROWS_AS(parse_module("module M over B_abp\nparams alpha\naction L(i) = 0\n"
                               "action W(i) = 0\n",
                               algebra),
                  ParseDiagnostic);
}
