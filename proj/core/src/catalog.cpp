#include "lca/catalog.hpp"

#include <algorithm>

#include "lca/parser.hpp"

namespace lca {

namespace {

constexpr const char* kSourceBp = R"(params p
family L all
bracket L(i) L(j) = ((i+p)*D + (i+j+2*p)*X) * L(i+j)
)";

constexpr const char* kSourceBabp = R"(params alpha beta p
family L all
family W all
bracket L(i) L(j) = ((i+p)*D + (i+j+2*p)*X) * L(i+j)
bracket L(i) W(j) = ((i+p)*(D + beta) + (i+j+alpha)*X) * W(i+j)
bracket W(i) W(j) = 0
)";

constexpr const char* kSourceWab = R"(params alpha beta
family L 0..0
family W 0..0
bracket L(i) L(j) = (D + 2*X) * L(i+j)
bracket L(i) W(j) = (D + alpha*X + beta) * W(i+j)
bracket W(i) W(j) = 0
)";

constexpr const char* kSourceVir = R"(family L 0..0
bracket L(i) L(j) = (D + 2*X) * L(i+j)
)";

// Hand-transcribed single-generator table of the degree-1 quotient under
// the renaming L = -Lbar0, W = Wbar0, M = Lbar1, G = Wbar1. Unlisted pairs
// vanish.
constexpr const char* kSourceB1Table = R"(params alpha beta
family L 0..0
family W 0..0
family M 0..0
family G 0..0
bracket L(i) L(j) = (D + 2*X) * L(i+j)
bracket L(i) W(j) = (D + beta - alpha*X) * W(i+j)
bracket L(i) M(j) = (D + X) * M(i+j)
bracket L(i) G(j) = (D + beta - (1+alpha)*X) * G(i+j)
bracket M(i) W(j) = (1+alpha)*X * G(i+j)
)";

// Degree-2 quotient table under L = -(1/2)Lbar0, Y = Lbar1, M = -Lbar2,
// W = Wbar0, G = Wbar1, H = Wbar2.
constexpr const char* kSourceB2Table = R"(params alpha beta
family L 0..0
family Y 0..0
family M 0..0
family W 0..0
family G 0..0
family H 0..0
bracket L(i) L(j) = (D + 2*X) * L(i+j)
bracket L(i) W(j) = (D + beta - (1/2)*alpha*X) * W(i+j)
bracket L(i) Y(j) = (D + (3/2)*X) * Y(i+j)
bracket L(i) G(j) = (D + beta - (1/2)*(1+alpha)*X) * G(i+j)
bracket L(i) M(j) = (D + X) * M(i+j)
bracket L(i) H(j) = (D + beta - (1/2)*(2+alpha)*X) * H(i+j)
bracket Y(i) Y(j) = (D + 2*X) * M(i+j)
bracket Y(i) W(j) = (-(D + beta) + (1+alpha)*X) * G(i+j)
bracket Y(i) G(j) = (-(D + beta) + (2+alpha)*X) * H(i+j)
bracket M(i) W(j) = -(2+alpha)*X * H(i+j)
)";

AlgebraDef parse_named(const char* source, const std::string& name) {
  AlgebraDef def = parse_algebra(source);
  def.name = name;
  return def;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"Bp", "B_abp", "W_ab",     "Vir",
                                                 "b1", "b2",    "b1_table", "b2_table"};
  return names;
}

CatalogEntry make_algebra(const std::string& name) {
  if (name == "Bp") return {name, parse_named(kSourceBp, name), "p != 0 (nonzero scalar)"};
  if (name == "B_abp") return {name, parse_named(kSourceBabp, name), "p != 0; alpha, beta free"};
  if (name == "W_ab") return {name, parse_named(kSourceWab, name), "alpha, beta free"};
  if (name == "Vir") return {name, parse_named(kSourceVir, name), ""};
  if (name == "b1_table")
    return {name, parse_named(kSourceB1Table, name), "alpha, beta free"};
  if (name == "b2_table")
    return {name, parse_named(kSourceB2Table, name), "alpha, beta free"};
  if (name.size() >= 2 && name[0] == 'b' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    long n = std::stol(name.substr(1));
    if (n >= 1) return {name, make_bn(n), "alpha, beta free; p bound to " + std::to_string(-n)};
  }
  throw Error("unknown catalog algebra: " + name);
}

AlgebraDef quotient(const AlgebraDef& def, long n, const std::map<std::string, Poly>& bind) {
  if (n < 0) throw Error("quotient degree must be >= 0");
  AlgebraDef out = bind.empty() ? def : bind_params(def, bind);
  out.truncation = out.truncation ? std::min(*out.truncation, n) : n;
  for (auto& fam : out.families)
    fam.max_index = fam.max_index ? std::min(*fam.max_index, n) : n;
  out.name = def.name.empty() ? "quotient" : def.name + "_[" + std::to_string(n) + "]";
  return out;
}

AlgebraDef make_bn(long n) {
  if (n < 1) throw Error("b(n) requires n >= 1");
  AlgebraDef base = make_algebra("B_abp").def;
  AlgebraDef out =
      quotient(base, n, {{"p", Poly::constant(base.ring, Rational(-n))}});
  out.name = "b" + std::to_string(n);
  return out;
}

CheckRecord virasoro_embedding_check(const Rational& h, const Rational& alpha_prime) {
  CatalogEntry entry = make_algebra("W_ab");
  AlgebraDef def = bind_params(entry.def, {{"alpha", Poly::constant(entry.def.ring, alpha_prime)},
                                           {"beta", Poly::constant(entry.def.ring, 0)}});
  BracketEngine engine(def);
  const RingPtr& ring = def.ring;

  LambdaValue v;
  v.add(GenRef::at("L", 0), Poly::constant(ring, 1));
  v.add(GenRef::at("W", 0), Poly::constant(ring, h));

  Poly vir = Poly::variable(ring, names::partial) +
             Poly::variable(ring, names::slot_lambda).scaled(2);
  LambdaValue expected = v.scaled(vir);
  LambdaValue residual = engine.bracket(v, v, engine.lambda()) - expected;

  CheckRecord rec;
  rec.id = "virasoro-embedding";
  rec.subject = "[(L+hW) λ (L+hW)] = (D+2λ)(L+hW), h=" + h.str() +
                ", alpha'=" + alpha_prime.str();
  rec.mode = "exact";
  for (auto& [g, c] : residual.terms()) rec.fail("residual at " + g.str() + ": " + c.str());
  return rec;
}

namespace {

struct Renaming {
  std::string hand_family;
  Rational coeff;
  std::string quot_family;
  long quot_index;
};

CheckRecord cross_check_table(const std::string& table_name, long n,
                              const std::vector<Renaming>& renaming) {
  AlgebraDef hand = make_algebra(table_name).def;
  AlgebraDef quot = make_bn(n);
  BracketEngine hand_engine(hand);
  BracketEngine quot_engine(quot);

  auto image = [&](const std::string& hand_family) {
    for (auto& r : renaming)
      if (r.hand_family == hand_family) {
        LambdaValue v;
        v.add(GenRef::at(r.quot_family, r.quot_index), Poly::constant(quot.ring, r.coeff));
        return v;
      }
    throw Error("renaming misses family " + hand_family);
  };

  CheckRecord rec;
  rec.id = "quotient-table-cross-check";
  rec.subject = table_name + " vs b" + std::to_string(n);
  rec.mode = "exact";
  for (auto& fa : hand.families)
    for (auto& fb : hand.families) {
      LambdaValue expected_hand =
          hand_engine.bracket(GenRef::at(fa.name, 0), GenRef::at(fb.name, 0),
                              hand_engine.lambda());
      // push the hand-side value through the renaming
      LambdaValue expected;
      for (auto& [g, c] : expected_hand.terms())
        expected += image(g.family).scaled(c.transfer(quot.ring));
      LambdaValue actual =
          quot_engine.bracket(image(fa.name), image(fb.name), quot_engine.lambda());
      LambdaValue residual = actual - expected;
      for (auto& [g, c] : residual.terms())
        rec.fail("[" + fa.name + " λ " + fb.name + "] mismatch at " + g.str() + ": " + c.str());
    }
  return rec;
}

}  // namespace

CheckRecord cross_check_b1() {
  return cross_check_table("b1_table", 1,
                           {{"L", Rational(-1), "L", 0},
                            {"W", Rational(1), "W", 0},
                            {"M", Rational(1), "L", 1},
                            {"G", Rational(1), "W", 1}});
}

CheckRecord cross_check_b2() {
  return cross_check_table("b2_table", 2,
                           {{"L", Rational(BigInt(-1), BigInt(2)), "L", 0},
                            {"Y", Rational(1), "L", 1},
                            {"M", Rational(-1), "L", 2},
                            {"W", Rational(1), "W", 0},
                            {"G", Rational(1), "W", 1},
                            {"H", Rational(1), "W", 2}});
}

CheckRecord quotient_agreement_check(const AlgebraDef& full, long n, long max_index) {
  AlgebraDef quot = quotient(full, n);
  BracketEngine full_engine(full);
  BracketEngine quot_engine(quot);
  CheckRecord rec;
  rec.id = "quotient-agreement";
  rec.subject = (full.name.empty() ? std::string("algebra") : full.name) + " vs degree-" +
                std::to_string(n) + " quotient";
  rec.mode = "enumerate(" + std::to_string(max_index) + ")";
  for (auto& fa : full.families)
    for (auto& fb : full.families)
      for (long i = 0; i <= max_index; ++i)
        for (long j = 0; j <= max_index; ++j) {
          if (i + j > n) continue;
          LambdaValue a = full_engine.bracket(GenRef::at(fa.name, i), GenRef::at(fb.name, j),
                                              full_engine.lambda());
          LambdaValue b = quot_engine.bracket(GenRef::at(fa.name, i), GenRef::at(fb.name, j),
                                              quot_engine.lambda());
          LambdaValue residual = a - b;
          for (auto& [g, c] : residual.terms())
            rec.fail("quotient disagrees at [" + fa.name + "(" + std::to_string(i) + ") λ " +
                     fb.name + "(" + std::to_string(j) + ")] on " + g.str() + ": " + c.str());
        }
  return rec;
}

}  // namespace lca
