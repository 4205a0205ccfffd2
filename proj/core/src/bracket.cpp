#include "lca/bracket.hpp"

#include <chrono>
#include <sstream>

#include "lca/parallel.hpp"

namespace lca {

namespace {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

}  // namespace

const Poly& LambdaValue::coeff(const GenRef& g) const {
  static const Poly kZero;
  auto it = terms_.find(g);
  return it == terms_.end() ? kZero : it->second;
}

void LambdaValue::add(const GenRef& g, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, fresh] = terms_.emplace(g, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LambdaValue& LambdaValue::operator+=(const LambdaValue& o) {
  for (auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

LambdaValue& LambdaValue::operator-=(const LambdaValue& o) {
  for (auto& [g, c] : o.terms_) add(g, -c);
  return *this;
}

LambdaValue LambdaValue::operator-() const {
  LambdaValue r;
  for (auto& [g, c] : terms_) r.terms_.emplace(g, -c);
  return r;
}

LambdaValue LambdaValue::scaled(const Poly& p) const {
  LambdaValue r;
  if (p.is_zero()) return r;
  for (auto& [g, c] : terms_) r.add(g, c * p);
  return r;
}

LambdaValue LambdaValue::substituted(const std::map<std::string, Poly>& images) const {
  LambdaValue r;
  for (auto& [g, c] : terms_) r.add(g, c.substitute(images));
  return r;
}

std::string LambdaValue::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto& [g, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.str() << ")*" << g.str();
  }
  return out.str();
}

BracketEngine::BracketEngine(const AlgebraDef& def) : def_(&def) {
  partial_ = def.ring->var(names::partial);
  formal_ = def.ring->var(names::slot_formal);
  lambda_ = def.ring->var(names::slot_lambda);
  mu_ = def.ring->var(names::slot_mu);
  nu_ = def.ring->var(names::slot_nu);
}

bool BracketEngine::supports_symbolic() const {
  if (def_->truncation) return false;
  for (auto& f : def_->families)
    if (f.max_index && *f.max_index > 0) return false;
  for (auto& r : def_->rules)
    if (r.guard) return false;
  return true;
}

long BracketEngine::sweep_bound(const std::string& family, long max_index) const {
  // with a truncation the whole sweep is meaningful (inputs beyond the cut
  // are zero); without one, bounded families cap the range
  const FamilyDecl& fam = def_->family(family);
  if (!def_->truncation && fam.max_index) return std::min(max_index, *fam.max_index);
  return max_index;
}

BracketEngine::Tri BracketEngine::eval_guard(const Guard& guard,
                                             const std::map<std::string, IndexExpr>& isub) const {
  for (auto& atom : guard.atoms) {
    if (atom.kind == GuardAtom::Kind::IndexCmp) {
      IndexExpr diff = atom.ilhs.substituted(isub) - atom.irhs.substituted(isub);
      if (!diff.is_concrete()) return Tri::Unknown;
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
      if (!ok) return Tri::False;
    } else {
      // Kronecker-style parameter guard, decided by structural equality of
      // the parameters' current values.
      Poly lhs = def_->param_value(atom.param);
      Poly rhs = std::holds_alternative<std::string>(atom.rhs)
                     ? def_->param_value(std::get<std::string>(atom.rhs))
                     : Poly::constant(def_->ring, std::get<Rational>(atom.rhs));
      bool equal = lhs == rhs;
      bool ok = (atom.op == CmpOp::Eq) ? equal : !equal;
      if (!ok) return Tri::False;
    }
  }
  return Tri::True;
}

bool BracketEngine::exists(const GenRef& g) const {
  const FamilyDecl& fam = def_->family(g.family);
  if (!g.index.is_concrete()) return true;
  long c = g.index.concrete();
  if (c < 0) throw Error("negative generator index: " + g.str());
  if (def_->truncation && c > *def_->truncation) return false;
  if (fam.max_index && c > *fam.max_index) {
    if (def_->truncation) return false;
    throw Error("generator index out of range: " + g.str());
  }
  return true;
}

bool BracketEngine::target_exists(const std::string& family, const IndexExpr& index) const {
  const FamilyDecl& fam = def_->family(family);
  if (!index.is_concrete()) return true;
  long c = index.concrete();
  if (c < 0) throw Error("negative generator index after composition: " + family + "(" +
                         index.str() + ")");
  if (def_->truncation && c > *def_->truncation) return false;
  if (fam.max_index && c > *fam.max_index) {
    if (def_->truncation) return false;
    throw Error("generator index out of range after composition: " + family + "(" + index.str() +
                ")");
  }
  return true;
}

LambdaValue BracketEngine::instantiate(const BracketRule& rule, const GenRef& left,
                                       const GenRef& right, VarRef slot) const {
  std::map<std::string, IndexExpr> isub = {{rule.left_var, left.index},
                                           {rule.right_var, right.index}};
  if (rule.guard) {
    Tri verdict = eval_guard(*rule.guard, isub);
    if (verdict == Tri::False) return {};
    if (verdict == Tri::Unknown)
      throw Error("rule guard needs concrete indices; use enumerate mode");
  }
  std::map<VarRef, Poly> psub = {
      {def_->ring->var(rule.left_var), left.index.to_poly(def_->ring)},
      {def_->ring->var(rule.right_var), right.index.to_poly(def_->ring)},
      {formal_, Poly::variable(def_->ring, slot)},
  };
  LambdaValue out;
  for (auto& term : rule.result) {
    IndexExpr target = term.index.substituted(isub);
    if (!target_exists(term.family, target)) continue;
    out.add(GenRef{term.family, target}, term.coeff.substitute(psub));
  }
  return out;
}

LambdaValue BracketEngine::rule_bracket(const GenRef& a, const GenRef& b, VarRef slot) const {
  if (!exists(a) || !exists(b)) return {};
  if (const BracketRule* rule = def_->find_rule(a.family, b.family))
    return instantiate(*rule, a, b, slot);
  if (const BracketRule* rule = def_->find_rule(b.family, a.family)) {
    // skew-derived mirror: [a λ b] = -[b_{-λ-∂} a]; the substitution is
    // literal on the mirrored value's coefficients
    VarRef temp = slot == lambda_ ? mu_ : lambda_;
    LambdaValue mirrored = instantiate(*rule, b, a, temp);
    Poly repl = -Poly::variable(def_->ring, slot) - Poly::variable(def_->ring, partial_);
    const std::string& temp_name = def_->ring->decl(temp).name;
    return -mirrored.substituted({{temp_name, repl}});
  }
  return {};  // no declared rule in either order: zero bracket
}

LambdaValue BracketEngine::bracket(const GenRef& a, const GenRef& b, VarRef slot) const {
  if (def_->ring->decl(slot).kind != VarKind::LambdaSlot)
    throw Error("bracket slot must be a lambda-slot variable");
  return rule_bracket(a, b, slot);
}

LambdaValue BracketEngine::bracket(const LambdaValue& a, const LambdaValue& b,
                                   VarRef slot) const {
  if (def_->ring->decl(slot).kind != VarKind::LambdaSlot)
    throw Error("bracket slot must be a lambda-slot variable");
  Poly slot_poly = Poly::variable(def_->ring, slot);
  Poly partial_poly = Poly::variable(def_->ring, partial_);
  LambdaValue out;
  for (auto& [ga, p] : a.terms()) {
    if (p.uses(slot)) throw Error("slot collision: left operand already uses the slot");
    Poly left = p.substitute(std::map<VarRef, Poly>{{partial_, -slot_poly}});
    for (auto& [gb, q] : b.terms()) {
      if (q.uses(slot)) throw Error("slot collision: right operand already uses the slot");
      Poly right = q.substitute(std::map<VarRef, Poly>{{partial_, partial_poly + slot_poly}});
      LambdaValue base = rule_bracket(ga, gb, slot);
      out += base.scaled(left * right);
    }
  }
  return out;
}

LambdaValue BracketEngine::nested_bracket(const GenRef& outer, const LambdaValue& inner,
                                          std::span<const VarRef> inner_slots, VarRef outer_slot,
                                          NestMode mode) const {
  for (VarRef s : inner_slots)
    if (s == outer_slot) throw Error("slot collision in nested bracket");
  Poly slot_poly = Poly::variable(def_->ring, outer_slot);
  Poly partial_poly = Poly::variable(def_->ring, partial_);
  LambdaValue out;
  if (mode == NestMode::OuterRight) {
    // [outer_slot X] with X = sum Q_k e_k: Q_k picks up ∂ -> ∂ + slot
    std::map<VarRef, Poly> shift = {{partial_, partial_poly + slot_poly}};
    for (auto& [e, q] : inner.terms())
      out += rule_bracket(outer, e, outer_slot).scaled(q.substitute(shift));
    return out;
  }
  // OuterLeft: [X_sigma outer], sigma = outer_slot + inner slots
  Poly sigma = slot_poly;
  for (VarRef s : inner_slots) sigma += Poly::variable(def_->ring, s);
  std::map<VarRef, Poly> minus_sigma = {{partial_, -sigma}};
  const std::string& nu_name = def_->ring->decl(nu_).name;
  for (auto& [e, p] : inner.terms()) {
    if (p.uses(nu_)) throw Error("slot collision: reserve slot in use");
    LambdaValue v = rule_bracket(e, outer, nu_).substituted({{nu_name, sigma}});
    out += v.scaled(p.substitute(minus_sigma));
  }
  return out;
}

std::map<long, LambdaValue> BracketEngine::kth_products(const GenRef& a, const GenRef& b) const {
  LambdaValue v = bracket(a, b, lambda_);
  std::map<long, LambdaValue> out;
  for (auto& [g, c] : v.terms()) {
    long deg = c.degree(lambda_);
    for (long k = 0; k <= deg; ++k) {
      Poly part = coeff_extract(c, lambda_, k, CoeffMode::KthProduct);
      if (!part.is_zero()) out[k].add(g, part);
    }
  }
  return out;
}

CheckRecord BracketEngine::check_skew(const std::string& fam_a, const std::string& fam_b,
                                      CheckMode mode, long max_index) const {
  Stopwatch timer;
  CheckRecord rec;
  rec.id = "skew";
  rec.subject = def_->name.empty() ? fam_a + "," + fam_b : def_->name + ":" + fam_a + "," + fam_b;
  Poly minus = -Poly::variable(def_->ring, lambda_) - Poly::variable(def_->ring, partial_);
  const std::string lambda_name = def_->ring->decl(lambda_).name;

  auto residual = [&](const GenRef& a, const GenRef& b) {
    LambdaValue r = bracket(a, b, lambda_);
    r += bracket(b, a, lambda_).substituted({{lambda_name, minus}});
    return r;
  };

  if (mode == CheckMode::Symbolic) {
    rec.mode = "symbolic";
    if (!supports_symbolic())
      throw Error("symbolic mode requires an untruncated, guard-free algebra; use enumerate");
    LambdaValue r = residual(GenRef::symbolic(fam_a, "i"), GenRef::symbolic(fam_b, "j"));
    for (auto& [g, c] : r.terms())
      rec.fail("[" + fam_a + "(i) _ " + fam_b + "(j)] skew residual at " + g.str() + ": " +
               c.str());
  } else {
    rec.mode = "enumerate(" + std::to_string(max_index) + ")";
    for (long i = 0; i <= sweep_bound(fam_a, max_index); ++i)
      for (long j = 0; j <= sweep_bound(fam_b, max_index); ++j) {
        LambdaValue r = residual(GenRef::at(fam_a, i), GenRef::at(fam_b, j));
        for (auto& [g, c] : r.terms())
          rec.fail("skew residual at i=" + std::to_string(i) + " j=" + std::to_string(j) +
                   " on " + g.str() + ": " + c.str());
      }
  }
  rec.elapsed_ms = timer.ms();
  return rec;
}

CheckRecord BracketEngine::check_jacobi(const std::string& fam_a, const std::string& fam_b,
                                        const std::string& fam_c, CheckMode mode,
                                        long max_index) const {
  Stopwatch timer;
  CheckRecord rec;
  rec.id = "jacobi";
  std::string triple = fam_a + "," + fam_b + "," + fam_c;
  rec.subject = def_->name.empty() ? triple : def_->name + ":" + triple;

  const VarRef inner_lambda[] = {lambda_};
  const VarRef inner_mu[] = {mu_};
  auto residual = [&](const GenRef& a, const GenRef& b, const GenRef& c) {
    LambdaValue t1 = nested_bracket(a, bracket(b, c, mu_), inner_mu, lambda_, NestMode::OuterRight);
    LambdaValue t2 = nested_bracket(c, bracket(a, b, lambda_), inner_lambda, mu_, NestMode::OuterLeft);
    LambdaValue t3 = nested_bracket(b, bracket(a, c, lambda_), inner_lambda, mu_, NestMode::OuterRight);
    return t1 - t2 - t3;
  };

  if (mode == CheckMode::Symbolic) {
    rec.mode = "symbolic";
    if (!supports_symbolic())
      throw Error("symbolic mode requires an untruncated, guard-free algebra; use enumerate");
    LambdaValue r = residual(GenRef::symbolic(fam_a, "i"), GenRef::symbolic(fam_b, "j"),
                             GenRef::symbolic(fam_c, "k"));
    for (auto& [g, c] : r.terms())
      rec.fail("jacobi residual (" + triple + ") at " + g.str() + ": " + c.str());
  } else {
    rec.mode = "enumerate(" + std::to_string(max_index) + ")";
    const long bound_a = sweep_bound(fam_a, max_index);
    const long bound_b = sweep_bound(fam_b, max_index);
    const long bound_c = sweep_bound(fam_c, max_index);
    const std::size_t n = static_cast<std::size_t>(bound_a) + 1;
    std::vector<std::vector<std::string>> failures(n);
    parallel_for(n, [&](std::size_t ii) {
      long i = static_cast<long>(ii);
      for (long j = 0; j <= bound_b; ++j)
        for (long k = 0; k <= bound_c; ++k) {
          LambdaValue r = residual(GenRef::at(fam_a, i), GenRef::at(fam_b, j),
                                   GenRef::at(fam_c, k));
          for (auto& [g, c] : r.terms())
            failures[ii].push_back("jacobi residual at i=" + std::to_string(i) +
                                   " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                                   " on " + g.str() + ": " + c.str());
        }
    });
    for (auto& chunk : failures)
      for (auto& f : chunk) rec.fail(f);
  }
  rec.elapsed_ms = timer.ms();
  return rec;
}

std::vector<CheckRecord> BracketEngine::check_axioms(CheckMode mode, long max_index) const {
  std::vector<CheckRecord> out;
  const auto& fams = def_->families;
  for (std::size_t a = 0; a < fams.size(); ++a)
    for (std::size_t b = a; b < fams.size(); ++b)
      out.push_back(check_skew(fams[a].name, fams[b].name, mode, max_index));
  for (auto& fa : fams)
    for (auto& fb : fams)
      for (auto& fc : fams)
        out.push_back(check_jacobi(fa.name, fb.name, fc.name, mode, max_index));
  return out;
}

}  // namespace lca
