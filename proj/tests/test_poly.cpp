#include <doctest.h>

#include <random>

#include "lca/poly.hpp"

using namespace lca;

namespace {

RingPtr test_ring() {
  return Ring::make({{"D", VarKind::Partial},
                     {"X", VarKind::LambdaSlot},
                     {"mu", VarKind::LambdaSlot},
                     {"p", VarKind::Parameter},
                     {"a", VarKind::Parameter},
                     {"b", VarKind::Parameter},
                     {"i", VarKind::Index},
                     {"j", VarKind::Index}});
}

Poly var(const RingPtr& r, const char* name) { return Poly::variable(r, name); }

Poly random_poly(const RingPtr& ring, std::mt19937& rng) {
  std::uniform_int_distribution<int> term_count(0, 5);
  std::uniform_int_distribution<int> var_pick(0, static_cast<int>(ring->size()) - 1);
  std::uniform_int_distribution<int> exp_pick(0, 2);
  std::uniform_int_distribution<long long> coeff_pick(-6, 6);
  Poly p = Poly::zero(ring);
  int terms = term_count(rng);
  for (int t = 0; t < terms; ++t) {
    Poly term = Poly::constant(ring, Rational(coeff_pick(rng)));
    for (int v = 0; v < 3; ++v) {
      int exponent = exp_pick(rng);
      if (exponent > 0)
        term *= Poly::variable(ring, static_cast<VarRef>(var_pick(rng))).pow(exponent);
    }
    p += term;
  }
  return p;
}

}  // namespace

TEST_CASE("addition cancels exactly") {
  auto r = test_ring();
  Poly lhs = (var(r, "D") + var(r, "X")) + (-var(r, "X"));
  CHECK(lhs == var(r, "D"));
}

TEST_CASE("distributivity over a parameter") {
  auto r = test_ring();
  Poly lhs = (var(r, "D") + var(r, "X").scaled(2)) * var(r, "p") - var(r, "p") * var(r, "D");
  CHECK(lhs == var(r, "p") * var(r, "X").scaled(2));
}

TEST_CASE("product of shifted linear factors, expanded by hand") {
  auto r = test_ring();
  // (D + X)(D + mu) = D^2 + D*mu + X*D + X*mu
  Poly lhs = (var(r, "D") + var(r, "X")) * (var(r, "D") + var(r, "mu"));
  Poly expected = var(r, "D").pow(2) + var(r, "D") * var(r, "mu") + var(r, "X") * var(r, "D") +
                  var(r, "X") * var(r, "mu");
  CHECK(lhs == expected);
}

TEST_CASE("substitute the skew shift X -> -X - D") {
  auto r = test_ring();
  Poly p = var(r, "p");
  Poly poly = p * var(r, "D") + (Poly::constant(r, 1) + p.scaled(2)) * var(r, "X");
  Poly shifted = poly.substitute(
      std::map<std::string, Poly>{{"X", -var(r, "X") - var(r, "D")}});
  // direct expansion: p*D + (1+2p)(-X-D) = -(1+p)D - (1+2p)X
  Poly expected = p * var(r, "D") +
                  (Poly::constant(r, 1) + p.scaled(2)) * (-var(r, "X") - var(r, "D"));
  CHECK(shifted == expected);
  // and the expanded canonical form
  Poly canonical = -(Poly::constant(r, 1) + p) * var(r, "D") -
                   (Poly::constant(r, 1) + p.scaled(2)) * var(r, "X");
  CHECK(shifted == canonical);
}

TEST_CASE("substitution drops a slot and shifts the partial") {
  auto r = test_ring();
  Poly sum = var(r, "X") + var(r, "mu");
  CHECK(sum.substitute(std::map<std::string, Poly>{{"mu", Poly::zero(r)}}) == var(r, "X"));

  Poly shifted = (var(r, "D") + var(r, "b"))
                     .substitute(std::map<std::string, Poly>{{"D", var(r, "D") + var(r, "X")}});
  CHECK(shifted == var(r, "D") + var(r, "X") + var(r, "b"));
}

TEST_CASE("substitution is simultaneous, not sequential") {
  auto r = test_ring();
  Poly p = var(r, "i") + var(r, "j");
  Poly swapped = p.substitute(
      std::map<std::string, Poly>{{"i", var(r, "j")}, {"j", var(r, "i")}});
  CHECK(swapped == p);
}

TEST_CASE("coefficient extraction, raw and k-th-product modes") {
  auto r = test_ring();
  Poly i = var(r, "i"), j = var(r, "j"), p = var(r, "p");
  Poly bracket = (i + p) * var(r, "D") + (i + j + p.scaled(2)) * var(r, "X");
  CHECK(coeff_extract(bracket, r->var("X"), 1) == i + j + p.scaled(2));
  CHECK(coeff_extract(bracket, r->var("X"), 0) == (i + p) * var(r, "D"));
  Poly quad = var(r, "b") * var(r, "X").pow(2);
  CHECK(coeff_extract(quad, r->var("X"), 2, CoeffMode::KthProduct) == var(r, "b").scaled(2));
  CHECK_THROWS_AS(coeff_extract(quad, r->var("X"), -1), Error);
}

TEST_CASE("ring axioms hold for random polynomials") {
  auto r = test_ring();
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = random_poly(r, rng), b = random_poly(r, rng), c = random_poly(r, rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Poly::zero(r));
  }
}

TEST_CASE("substitution respects composition on stable images") {
  auto r = test_ring();
  std::mt19937 rng(777);
  // sigma maps X into a polynomial of D and b; tau touches only D and b, so
  // sigma's images are tau-stable in the composition sense
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = random_poly(r, rng);
    Poly sigma_x = var(r, "D").scaled(-1) + var(r, "b");
    Poly tau_d = var(r, "D") + var(r, "mu");
    std::map<std::string, Poly> sigma = {{"X", sigma_x}};
    std::map<std::string, Poly> tau = {{"D", tau_d}};
    Poly two_step = f.substitute(sigma).substitute(tau);
    std::map<std::string, Poly> composed = {{"X", sigma_x.substitute(tau)}, {"D", tau_d}};
    CHECK(two_step == f.substitute(composed));
  }
}

TEST_CASE("coefficients reconstruct the polynomial") {
  auto r = test_ring();
  std::mt19937 rng(99);
  VarRef x = r->var("X");
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = random_poly(r, rng);
    Poly rebuilt = Poly::zero(r);
    for (long k = 0; k <= std::max<long>(f.degree(x), 0); ++k)
      rebuilt += coeff_extract(f, x, k) * Poly::variable(r, x).pow(static_cast<std::uint32_t>(k));
    CHECK(rebuilt == f);
  }
}

TEST_CASE("mismatched ring contexts are rejected") {
  auto r1 = test_ring();
  auto r2 = test_ring();
  Poly a = var(r1, "D");
  Poly b = var(r2, "D");
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(a * b, Error);
  CHECK(structurally_equal(a, b));
  CHECK_THROWS_AS(a.substitute(std::map<std::string, Poly>{{"nope", a}}), Error);
}

TEST_CASE("transfer re-homes by name and rejects missing variables") {
  auto r1 = test_ring();
  auto r2 = Ring::make({{"X", VarKind::LambdaSlot}, {"D", VarKind::Partial}});
  Poly f = var(r1, "D") + var(r1, "X").pow(2);
  Poly moved = f.transfer(r2);
  CHECK(moved == Poly::variable(r2, "D") + Poly::variable(r2, "X").pow(2));
  CHECK_THROWS_AS(var(r1, "p").transfer(r2), Error);
}

TEST_CASE("exact division by a linear factor") {
  auto r = test_ring();
  Poly D = var(r, "D"), X = var(r, "X");
  Poly product = (D + Poly::constant(r, 3)) * (D.pow(2) + X * D + Poly::constant(r, 7));
  Poly q = divide_by_linear(product, r->var("D"), Rational(3));
  CHECK(q == D.pow(2) + X * D + Poly::constant(r, 7));
  CHECK_THROWS_AS(divide_by_linear(D + Poly::constant(r, 1), r->var("D"), Rational(2)), Error);
}

TEST_CASE("canonical string is stable and informative") {
  auto r = test_ring();
  Poly f = var(r, "D") * var(r, "p") - var(r, "X").scaled(Rational(BigInt(3), BigInt(2)));
  CHECK(f.str() == "D*p - 3/2*X");
  CHECK(Poly::zero(r).str() == "0");
}
