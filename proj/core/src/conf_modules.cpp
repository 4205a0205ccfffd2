#include "lca/conf_modules.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lca/parser.hpp"

namespace lca {

namespace {

struct FamilySpec {
  const char* module_name;
  const char* algebra;       // catalog name, "bN" resolved per n
  const char* source;        // module DSL, %n% replaced by the quotient degree
  bool needs_bn;
  // required constraint bindings, resolved at construction
  enum class Constraint { None, AlphaP_Beta0, PMinus1, PMinus1_AlphaMinus1_Beta0, AlphaMinusN_Beta0 };
  Constraint constraint;
};

constexpr const char* kVabSource = R"(module Vab over B_abp
params a b
action L(0) = p*(D + a*X + b)
action L(i) = 0 if i >= 1
action W(i) = 0
)";

constexpr const char* kVabdSource = R"(module Vabd over B_abp
params a b d
action L(0) = p*(D + a*X + b)
action L(i) = 0 if i >= 1
action W(0) = d
action W(i) = 0 if i >= 1
)";

constexpr const char* kVabcSource = R"(module Vabc over B_abp
params a b c
action L(0) = -(D + a*X + b)
action L(1) = c
action L(i) = 0 if i >= 2
action W(i) = 0
)";

constexpr const char* kVabcdSource = R"(module Vabcd over B_abp
params a b c d
action L(0) = -(D + a*X + b)
action L(1) = c
action L(i) = 0 if i >= 2
action W(0) = d
action W(i) = 0 if i >= 1
)";

constexpr const char* kBnVabSource = R"(module bn_Vab over %alg%
params a b
action L(0) = -%n%*(D + a*X + b)
action L(i) = 0 if i >= 1
action W(i) = 0
)";

constexpr const char* kBnVabdSource = R"(module bn_Vabd over %alg%
params a b d
action L(0) = -%n%*(D + a*X + b)
action L(i) = 0 if i >= 1
action W(0) = d
action W(i) = 0 if i >= 1
)";

constexpr const char* kB1VabcSource = R"(module b1_Vabc over b1
params a b c
action L(0) = -(D + a*X + b)
action L(1) = c
action W(i) = 0
)";

constexpr const char* kB1VabcdSource = R"(module b1_Vabcd over b1
params a b c d
action L(0) = -(D + a*X + b)
action L(1) = c
action W(0) = d
action W(1) = 0
)";

std::string expand(std::string text, const std::string& key, const std::string& value) {
  std::size_t at;
  while ((at = text.find(key)) != std::string::npos) text.replace(at, key.size(), value);
  return text;
}

const FamilySpec& family_spec(Rank1Family fam) {
  using C = FamilySpec::Constraint;
  static const std::map<Rank1Family, FamilySpec> specs = {
      {Rank1Family::Vab, {"Vab", "B_abp", kVabSource, false, C::None}},
      {Rank1Family::Vabd, {"Vabd", "B_abp", kVabdSource, false, C::AlphaP_Beta0}},
      {Rank1Family::Vabc, {"Vabc", "B_abp", kVabcSource, false, C::PMinus1}},
      {Rank1Family::Vabcd, {"Vabcd", "B_abp", kVabcdSource, false, C::PMinus1_AlphaMinus1_Beta0}},
      {Rank1Family::BnVab, {"bn_Vab", "bN", kBnVabSource, true, C::None}},
      {Rank1Family::BnVabd, {"bn_Vabd", "bN", kBnVabdSource, true, C::AlphaMinusN_Beta0}},
      {Rank1Family::B1Vabc, {"b1_Vabc", "b1", kB1VabcSource, true, C::None}},
      {Rank1Family::B1Vabcd, {"b1_Vabcd", "b1", kB1VabcdSource, true, C::AlphaMinusN_Beta0}},
  };
  return specs.at(fam);
}

}  // namespace

std::string rank1_family_name(Rank1Family fam, long n) {
  switch (fam) {
    case Rank1Family::Vab: return "Vab";
    case Rank1Family::Vabd: return "Vabd";
    case Rank1Family::Vabc: return "Vabc";
    case Rank1Family::Vabcd: return "Vabcd";
    case Rank1Family::BnVab: return "b" + std::to_string(n) + "_Vab";
    case Rank1Family::BnVabd: return "b" + std::to_string(n) + "_Vabd";
    case Rank1Family::B1Vabc: return "b1_Vabc";
    case Rank1Family::B1Vabcd: return "b1_Vabcd";
  }
  throw Error("unreachable");
}

RankOneModule make_rank1(Rank1Family fam, const std::map<std::string, Rational>& bindings,
                         long n) {
  if (fam == Rank1Family::B1Vabc || fam == Rank1Family::B1Vabcd) n = 1;
  if (fam != Rank1Family::BnVab && fam != Rank1Family::BnVabd &&
      fam != Rank1Family::B1Vabc && fam != Rank1Family::B1Vabcd)
    n = 0;
  const FamilySpec& spec = family_spec(fam);

  AlgebraDef algebra =
      spec.needs_bn ? make_bn(std::max<long>(n, 1)) : make_algebra(spec.algebra).def;

  std::string source = spec.source;
  source = expand(source, "%alg%", algebra.name);
  source = expand(source, "%n%", std::to_string(std::max<long>(n, 1)));
  ModuleDef module = parse_module(source, algebra);

  // constraint bindings required by the family definition
  std::map<std::string, Poly> required;
  const RingPtr& ring = module.ring;
  switch (spec.constraint) {
    case FamilySpec::Constraint::None:
      break;
    case FamilySpec::Constraint::AlphaP_Beta0:
      required.emplace("alpha", Poly::variable(ring, "p"));
      required.emplace("beta", Poly::constant(ring, 0));
      break;
    case FamilySpec::Constraint::PMinus1:
      required.emplace("p", Poly::constant(ring, -1));
      break;
    case FamilySpec::Constraint::PMinus1_AlphaMinus1_Beta0:
      required.emplace("p", Poly::constant(ring, -1));
      required.emplace("alpha", Poly::constant(ring, -1));
      required.emplace("beta", Poly::constant(ring, 0));
      break;
    case FamilySpec::Constraint::AlphaMinusN_Beta0:
      required.emplace("alpha", Poly::constant(ring, Rational(-std::max<long>(n, 1))));
      required.emplace("beta", Poly::constant(ring, 0));
      break;
  }

  std::map<std::string, Poly> user;
  for (auto& [name, value] : bindings) user.emplace(name, Poly::constant(ring, value));

  std::map<std::string, Poly> all = user;
  for (auto& [name, value] : required) {
    Poly resolved = value.substitute(user);
    auto hit = user.find(name);
    if (hit != user.end()) {
      if (!(hit->second == resolved))
        throw Error("constraint violation: family " + rank1_family_name(fam, n) + " requires " +
                    name + " = " + resolved.str() + ", got " + hit->second.str());
    } else {
      all.emplace(name, resolved);
    }
  }

  RankOneModule out;
  out.tag = fam;
  out.bn = n;
  // split bindings between the algebra's parameters and the module's
  std::map<std::string, Poly> algebra_bindings;
  for (auto& [name, value] : all)
    if (std::find(algebra.params.begin(), algebra.params.end(), name) != algebra.params.end())
      algebra_bindings.emplace(name, value.transfer(algebra.ring));
  out.algebra = bind_params(algebra, algebra_bindings);
  out.module = bind_params(module, all);
  out.module.name = rank1_family_name(fam, n);
  return out;
}

RankOneModule make_rank1(const std::string& name,
                         const std::map<std::string, Rational>& bindings) {
  if (name == "Vab") return make_rank1(Rank1Family::Vab, bindings);
  if (name == "Vabd") return make_rank1(Rank1Family::Vabd, bindings);
  if (name == "Vabc") return make_rank1(Rank1Family::Vabc, bindings);
  if (name == "Vabcd") return make_rank1(Rank1Family::Vabcd, bindings);
  if (name == "b1_Vabc") return make_rank1(Rank1Family::B1Vabc, bindings);
  if (name == "b1_Vabcd") return make_rank1(Rank1Family::B1Vabcd, bindings);
  auto under = name.find("_V");
  if (name.size() > 2 && name[0] == 'b' && under != std::string::npos) {
    long n = 0;
    try {
      n = std::stol(name.substr(1, under - 1));
    } catch (const std::exception&) {
      throw Error("unknown module family: " + name);
    }
    std::string tail = name.substr(under + 1);
    if (tail == "Vab") return make_rank1(Rank1Family::BnVab, bindings, n);
    if (tail == "Vabd") return make_rank1(Rank1Family::BnVabd, bindings, n);
  }
  throw Error("unknown module family: " + name);
}

namespace {

/// Three-way index guard evaluation against concrete indices.
bool index_guard_matches(const ActionRule& rule, long index) {
  if (!rule.guard) return true;
  std::map<std::string, IndexExpr> isub;
  if (!rule.index_var.empty()) isub.emplace(rule.index_var, IndexExpr::constant(index));
  for (auto& atom : rule.guard->atoms) {
    if (atom.kind != GuardAtom::Kind::IndexCmp) continue;
    IndexExpr diff = atom.ilhs.substituted(isub) - atom.irhs.substituted(isub);
    long d = diff.concrete();
    bool ok = false;
    switch (atom.op) {
      case CmpOp::Eq: ok = d == 0; break;
      case CmpOp::Ne: ok = d != 0; break;
      case CmpOp::Le: ok = d <= 0; break;
      case CmpOp::Lt: ok = d < 0; break;
      case CmpOp::Ge: ok = d >= 0; break;
      case CmpOp::Gt: ok = d > 0; break;
    }
    if (!ok) return false;
  }
  return true;
}

bool param_guard_on(const ModuleDef& def, const ActionRule& rule) {
  if (!rule.guard) return true;
  for (auto& atom : rule.guard->atoms) {
    if (atom.kind != GuardAtom::Kind::ParamCmp) continue;
    Poly lhs = def.param_value(atom.param);
    Poly rhs = std::holds_alternative<std::string>(atom.rhs)
                   ? def.param_value(std::get<std::string>(atom.rhs))
                   : Poly::constant(def.ring, std::get<Rational>(atom.rhs));
    bool equal = structurally_equal(lhs, rhs);
    if ((atom.op == CmpOp::Eq) ? !equal : equal) return false;
  }
  return true;
}

const ActionRule& matching_rule(const ModuleDef& def, const std::string& family, long index) {
  const ActionRule* found = nullptr;
  for (auto& rule : def.actions) {
    if (rule.family != family) continue;
    bool matches = rule.concrete_index ? *rule.concrete_index == index
                                       : index_guard_matches(rule, index);
    if (!matches) continue;
    if (found)
      throw Error("overlapping action rules for " + family + "(" + std::to_string(index) + ")");
    found = &rule;
  }
  if (!found)
    throw Error("no action rule covers " + family + "(" + std::to_string(index) + ")");
  return *found;
}

}  // namespace

Poly action_coeff(const RankOneModule& m, const std::string& family, long index) {
  const ActionRule& rule = matching_rule(m.module, family, index);
  if (!param_guard_on(m.module, rule)) return Poly::zero(m.module.ring);
  Poly coeff = rule.coeff;
  if (!rule.index_var.empty())
    coeff = coeff.substitute(std::map<std::string, Poly>{
        {rule.index_var, Poly::constant(m.module.ring, Rational(index))}});
  return coeff;
}

std::vector<CheckRecord> check_module_axiom(const RankOneModule& m, long max_index) {
  const RingPtr& ring = m.module.ring;
  BracketEngine engine(m.algebra);
  if (max_index < 0) {
    max_index = 2;
    if (m.algebra.truncation) max_index = std::max(max_index, *m.algebra.truncation);
    for (auto& rule : m.module.actions)
      if (rule.concrete_index) max_index = std::max(max_index, *rule.concrete_index + 1);
  }
  // clamp to the family ranges of a truncated algebra
  long hard_max = max_index;
  if (m.algebra.truncation) hard_max = std::min(hard_max, *m.algebra.truncation);

  Poly D = Poly::variable(ring, names::partial);
  Poly lam = Poly::variable(ring, names::slot_lambda);
  Poly mu = Poly::variable(ring, names::slot_mu);

  bool symbolic = false;
  for (auto& d : ring->decls())
    if (d.kind == VarKind::Parameter && !m.module.bound.count(d.name)) symbolic = true;

  std::vector<CheckRecord> out;
  for (auto& fx : m.algebra.families)
    for (auto& fy : m.algebra.families) {
      CheckRecord rec;
      rec.id = "module-axiom";
      rec.subject = m.module.name + ": pair (" + fx.name + ", " + fy.name + ")";
      rec.mode = (symbolic ? std::string("symbolic-params") : std::string("concrete")) +
                 ", indices<=" + std::to_string(hard_max);
      for (long i = 0; i <= hard_max; ++i)
        for (long j = 0; j <= hard_max; ++j) {
          Poly ax = action_coeff(m, fx.name, i);
          Poly ay = action_coeff(m, fy.name, j);
          Poly term1 = ay.substitute(std::map<std::string, Poly>{{names::partial, D + lam},
                                                                 {names::slot_formal, mu}}) *
                       ax.substitute(std::map<std::string, Poly>{{names::slot_formal, lam}});
          Poly term2 = ax.substitute(std::map<std::string, Poly>{{names::partial, D + mu},
                                                                 {names::slot_formal, lam}}) *
                       ay.substitute(std::map<std::string, Poly>{{names::slot_formal, mu}});
          Poly residual = term1 - term2;
          LambdaValue br = engine.bracket(GenRef::at(fx.name, i), GenRef::at(fy.name, j),
                                          engine.lambda());
          for (auto& [g, p] : br.terms()) {
            Poly coeff = p.transfer(ring).substitute(
                std::map<std::string, Poly>{{names::partial, -lam - mu},
                                            {names::slot_lambda, lam}});
            Poly target_action =
                action_coeff(m, g.family, g.index.concrete())
                    .substitute(std::map<std::string, Poly>{{names::slot_formal, lam + mu}});
            residual -= coeff * target_action;
          }
          if (!residual.is_zero())
            rec.fail("residual for (" + fx.name + "(" + std::to_string(i) + "), " + fy.name +
                     "(" + std::to_string(j) + ")): " + residual.str());
        }
      out.push_back(std::move(rec));
    }
  return out;
}

namespace {

constexpr const char* kGradedIntermediate = R"(module V_graded over Bp graded
params alpha beta
action L(i) v(j) = ((i+p)*(D + beta) + (i+j+alpha)*X) * v(i+j)
)";

constexpr const char* kGradedVabc = R"(module Vabc_graded over B_abp graded
params a b c
action L(i) v(j) = ((i+p)*(D + b) + (i+j+a)*X) * v(i+j)
action W(i) v(j) = c * v(i+j) if alpha == p and beta == 0
)";

}  // namespace

GradedModule make_graded(const std::string& name, const std::map<std::string, Rational>& bindings,
                         const std::map<std::string, Poly>& symbolic_bindings) {
  GradedModule out;
  const char* source = nullptr;
  if (name == "V_graded") {
    out.algebra = make_algebra("Bp").def;
    source = kGradedIntermediate;
  } else if (name == "Vabc_graded") {
    out.algebra = make_algebra("B_abp").def;
    source = kGradedVabc;
  } else {
    throw Error("unknown graded module family: " + name);
  }
  out.module = parse_module(source, out.algebra);

  std::map<std::string, Poly> all;
  for (auto& [k, v] : bindings) all.emplace(k, Poly::constant(out.module.ring, v));
  for (auto& [k, v] : symbolic_bindings) all.emplace(k, v.transfer(out.module.ring));
  if (!all.empty()) {
    std::map<std::string, Poly> algebra_part;
    for (auto& [k, v] : all)
      if (std::find(out.algebra.params.begin(), out.algebra.params.end(), k) !=
          out.algebra.params.end())
        algebra_part.emplace(k, v.transfer(out.algebra.ring));
    out.algebra = bind_params(out.algebra, algebra_part);
    out.module = bind_params(out.module, all);
  }
  return out;
}

namespace {

struct GradedAction {
  Poly coeff;        // with index substitutions applied; slot is X
  IndexExpr target;  // absolute basis target
  bool exists = true;
};

GradedAction graded_action(const ModuleDef& def, const std::string& family,
                           const IndexExpr& gen_index, const IndexExpr& basis_index) {
  // graded families carry one uniform rule per generator family
  const ActionRule* found = nullptr;
  for (auto& rule : def.actions) {
    if (rule.family != family) continue;
    if (found) throw Error("overlapping graded action rules for " + family);
    found = &rule;
  }
  if (!found) throw Error("no graded action rule covers " + family);
  const ActionRule& rule = *found;
  GradedAction out;
  if (!param_guard_on(def, rule)) {
    out.coeff = Poly::zero(def.ring);
    out.target = basis_index;
    return out;
  }
  std::map<std::string, IndexExpr> isub;
  std::map<std::string, Poly> psub;
  if (!rule.index_var.empty()) {
    isub.emplace(rule.index_var, gen_index);
    psub.emplace(rule.index_var, gen_index.to_poly(def.ring));
  }
  isub.emplace(rule.basis_var, basis_index);
  psub.emplace(rule.basis_var, basis_index.to_poly(def.ring));
  out.coeff = rule.coeff.substitute(psub);
  out.target = rule.target.substituted(isub);
  return out;
}

}  // namespace

std::vector<CheckRecord> check_graded_module(const GradedModule& m,
                                             const GradedCheckOptions& opts) {
  const RingPtr& ring = m.module.ring;
  BracketEngine engine(m.algebra);
  Poly D = Poly::variable(ring, names::partial);
  Poly lam = Poly::variable(ring, names::slot_lambda);
  Poly mu = Poly::variable(ring, names::slot_mu);

  const long J = opts.window;
  auto in_window = [&](const IndexExpr& e) {
    return !e.is_concrete() || (e.concrete() >= -J && e.concrete() <= J);
  };

  std::vector<CheckRecord> out;
  for (auto& fx : m.algebra.families)
    for (auto& fy : m.algebra.families) {
      CheckRecord rec;
      rec.id = "graded-module-axiom";
      rec.subject = m.module.name + ": pair (" + fx.name + ", " + fy.name + ")";
      rec.mode = opts.symbolic_indices
                     ? "symbolic-indices"
                     : "window J=" + std::to_string(J) +
                           ", gen indices<=" + std::to_string(opts.max_gen_index);

      auto run_one = [&](const IndexExpr& gi, const IndexExpr& gj, const IndexExpr& bl) {
        GradedAction a_y_l = graded_action(m.module, fy.name, gj, bl);
        GradedAction a_x_on = graded_action(m.module, fx.name, gi, a_y_l.target);
        GradedAction a_x_l = graded_action(m.module, fx.name, gi, bl);
        GradedAction a_y_on = graded_action(m.module, fy.name, gj, a_x_l.target);
        if (!opts.symbolic_indices) {
          // stay inside the window through every intermediate target
          if (!in_window(a_y_l.target) || !in_window(a_x_on.target) || !in_window(a_x_l.target) ||
              !in_window(a_y_on.target))
            return;
        }
        std::map<IndexExpr, Poly> residual;
        auto accumulate = [&](const IndexExpr& target, Poly value) {
          if (value.is_zero()) return;
          auto [it, fresh] = residual.emplace(target, value);
          if (!fresh) {
            it->second += value;
            if (it->second.is_zero()) residual.erase(it);
          }
        };
        accumulate(a_x_on.target,
                   a_y_l.coeff.substitute(std::map<std::string, Poly>{
                       {names::partial, D + lam}, {names::slot_formal, mu}}) *
                       a_x_on.coeff.substitute(
                           std::map<std::string, Poly>{{names::slot_formal, lam}}));
        accumulate(a_y_on.target,
                   -(a_x_l.coeff.substitute(std::map<std::string, Poly>{
                         {names::partial, D + mu}, {names::slot_formal, lam}}) *
                     a_y_on.coeff.substitute(
                         std::map<std::string, Poly>{{names::slot_formal, mu}})));
        LambdaValue br = engine.bracket(GenRef{fx.name, gi}, GenRef{fy.name, gj},
                                        engine.lambda());
        for (auto& [g, p] : br.terms()) {
          Poly coeff = p.transfer(ring).substitute(std::map<std::string, Poly>{
              {names::partial, -lam - mu}, {names::slot_lambda, lam}});
          GradedAction a_t = graded_action(m.module, g.family, g.index, bl);
          if (!opts.symbolic_indices && !in_window(a_t.target)) continue;
          accumulate(a_t.target,
                     -(coeff * a_t.coeff.substitute(
                                   std::map<std::string, Poly>{{names::slot_formal, lam + mu}})));
        }
        for (auto& [target, value] : residual)
          rec.fail("residual for (" + fx.name + "(" + gi.str() + "), " + fy.name + "(" +
                   gj.str() + ")) on v(" + bl.str() + ") at v(" + target.str() +
                   "): " + value.str());
      };

      if (opts.symbolic_indices) {
        run_one(IndexExpr::variable("i"), IndexExpr::variable("j"), IndexExpr::variable("l"));
      } else {
        for (long i = 0; i <= opts.max_gen_index; ++i)
          for (long j = 0; j <= opts.max_gen_index; ++j)
            for (long l = -J; l <= J; ++l)
              run_one(IndexExpr::constant(i), IndexExpr::constant(j), IndexExpr::constant(l));
      }
      out.push_back(std::move(rec));
    }
  return out;
}

namespace {

/// Rational roots of a univariate polynomial in `var` (other variables must
/// be absent). Small-coefficient trial division via the rational root
/// theorem; exact.
std::vector<Rational> rational_roots(const Poly& p, VarRef var) {
  long deg = p.degree(var);
  if (deg <= 0) return {};
  // clear denominators to integer coefficients
  BigInt den_lcm = 1;
  for (auto& [m, c] : p.terms()) {
    BigInt d = c.denominator();
    den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, d) * d;
  }
  std::vector<BigInt> coeffs(static_cast<std::size_t>(deg) + 1, BigInt(0));
  for (auto& [m, c] : p.terms()) {
    if (!m.without(var).is_one()) throw Error("root search needs a univariate polynomial");
    Rational scaled = c * Rational(den_lcm);
    coeffs[m.exponent(var)] = scaled.numerator();
  }
  // factor out var^s so the constant term is nonzero
  std::size_t shift = 0;
  while (shift < coeffs.size() && coeffs[shift].is_zero()) ++shift;
  std::vector<Rational> roots;
  if (shift > 0) roots.push_back(Rational(0));
  if (shift >= static_cast<std::size_t>(deg)) return roots;

  const BigInt a0 = boost::multiprecision::abs(coeffs[shift]);
  const BigInt an = boost::multiprecision::abs(coeffs.back());
  auto divisors = [](const BigInt& value) {
    std::vector<BigInt> out;
    for (BigInt d = 1; d * d <= value; ++d) {
      if (value % d != 0) continue;
      out.push_back(d);
      if (d * d != value) out.push_back(value / d);
    }
    return out;
  };
  auto evaluate = [&](const Rational& x) {
    Rational acc(0);
    for (std::size_t t = coeffs.size(); t-- > shift;) acc = acc * x + Rational(coeffs[t]);
    return acc;
  };
  for (const BigInt& num : divisors(a0))
    for (const BigInt& den : divisors(an))
      for (int sign : {1, -1}) {
        Rational candidate(sign > 0 ? num : BigInt(-num), den);
        if (evaluate(candidate).is_zero() &&
            std::find(roots.begin(), roots.end(), candidate) == roots.end())
          roots.push_back(candidate);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<std::pair<std::string, long>> covered_generators(const RankOneModule& m) {
  std::vector<std::pair<std::string, long>> gens;
  long max_index = 2;
  if (m.algebra.truncation) max_index = std::max(max_index, *m.algebra.truncation);
  for (auto& rule : m.module.actions)
    if (rule.concrete_index) max_index = std::max(max_index, *rule.concrete_index + 1);
  if (m.algebra.truncation) max_index = std::min(max_index, *m.algebra.truncation);
  for (auto& fam : m.algebra.families)
    for (long i = 0; i <= max_index; ++i) gens.push_back({fam.name, i});
  return gens;
}

void require_concrete(const RankOneModule& m, const char* what) {
  for (auto& fam_index : covered_generators(m)) {
    Poly a = action_coeff(m, fam_index.first, fam_index.second);
    for (auto& [mono, c] : a.terms())
      for (auto& [v, e] : mono.factors()) {
        VarKind kind = m.module.ring->decl(v).kind;
        if (kind == VarKind::Parameter || kind == VarKind::Index)
          throw Error(std::string(what) + " requires concrete parameter bindings (found " +
                      m.module.ring->decl(v).name + ")");
      }
  }
}

}  // namespace

std::vector<Rational> invariant_factor_deg1(const RankOneModule& m) {
  require_concrete(m, "invariant factor search");
  const RingPtr& ring = m.module.ring;
  VarRef D = ring->var(names::partial);
  VarRef X = ring->var(names::slot_formal);

  auto gens = covered_generators(m);
  // candidates from the first nonzero action: the condition A(-r, X) = 0
  // forces every X-coefficient of A to vanish at -r
  std::vector<Rational> candidates;
  bool found_nonzero = false;
  for (auto& [fam, idx] : gens) {
    Poly a = action_coeff(m, fam, idx);
    if (a.is_zero()) continue;
    found_nonzero = true;
    long xdeg = a.degree(X);
    for (long k = 0; k <= xdeg; ++k) {
      Poly ck = a.coeff_of(X, static_cast<std::uint32_t>(k));
      if (ck.is_zero()) continue;
      if (ck.degree(D) <= 0) return {};  // nonzero constant: no root exists
      for (Rational& r : rational_roots(ck, D)) candidates.push_back(-r);
      break;
    }
    break;
  }
  if (!found_nonzero) return {};  // trivial module: no proper (∂+r) submodule to report

  std::vector<Rational> roots;
  Poly D_poly = Poly::variable(ring, D);
  Poly X_poly = Poly::variable(ring, X);
  for (const Rational& r : candidates) {
    bool ok = true;
    for (auto& [fam, idx] : gens) {
      Poly a = action_coeff(m, fam, idx);
      Poly shifted = (D_poly + X_poly + Poly::constant(ring, r)) * a;
      Poly at_root = shifted.substitute(
          std::map<VarRef, Poly>{{D, Poly::constant(ring, -r)}});
      if (!at_root.is_zero()) {
        ok = false;
        break;
      }
    }
    if (ok && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string family_criterion(Rank1Family fam) {
  switch (fam) {
    case Rank1Family::Vab:
    case Rank1Family::BnVab:
      return "a != 0";
    case Rank1Family::Vabd:
    case Rank1Family::BnVabd:
      return "a != 0 or d != 0";
    case Rank1Family::Vabc:
    case Rank1Family::B1Vabc:
      return "a != 0 or c != 0";
    case Rank1Family::Vabcd:
    case Rank1Family::B1Vabcd:
      return "a != 0 or c != 0 or d != 0";
  }
  throw Error("unreachable");
}

IrreducibilityVerdict is_irreducible(const RankOneModule& m) {
  if (!m.tag) throw Error("irreducibility criterion needs a catalog module family");
  require_concrete(m, "irreducibility check");
  auto value = [&](const char* name) {
    Poly v = m.module.param_value(name);
    if (!v.is_constant()) throw Error("parameter not bound: " + std::string(name));
    return v.constant_term();
  };
  IrreducibilityVerdict verdict;
  verdict.criterion = family_criterion(*m.tag);
  bool a_nonzero = !value("a").is_zero();
  switch (*m.tag) {
    case Rank1Family::Vab:
    case Rank1Family::BnVab:
      verdict.irreducible = a_nonzero;
      break;
    case Rank1Family::Vabd:
    case Rank1Family::BnVabd:
      verdict.irreducible = a_nonzero || !value("d").is_zero();
      break;
    case Rank1Family::Vabc:
    case Rank1Family::B1Vabc:
      verdict.irreducible = a_nonzero || !value("c").is_zero();
      break;
    case Rank1Family::Vabcd:
    case Rank1Family::B1Vabcd:
      verdict.irreducible = a_nonzero || !value("c").is_zero() || !value("d").is_zero();
      break;
  }
  verdict.deg1_factors = invariant_factor_deg1(m);
  verdict.consistent = !(verdict.irreducible && !verdict.deg1_factors.empty());
  return verdict;
}

RankOneModule induced_quotient_module(const RankOneModule& m, const Rational& root) {
  const RingPtr& ring = m.module.ring;
  VarRef D = ring->var(names::partial);
  Poly D_poly = Poly::variable(ring, D);
  Poly X_poly = Poly::variable(ring, names::slot_formal);
  RankOneModule out = m;
  out.tag.reset();
  out.module.name = m.module.name + "_induced";
  for (auto& rule : out.module.actions) {
    if (rule.coeff.is_zero()) continue;
    Poly shifted = (D_poly + X_poly + Poly::constant(ring, root)) * rule.coeff;
    rule.coeff = divide_by_linear(shifted, D, root);
  }
  return out;
}

}  // namespace lca
