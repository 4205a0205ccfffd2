#include "lca/ast.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lca {

IndexExpr IndexExpr::constant(long c) {
  IndexExpr e;
  e.offset_ = c;
  return e;
}

IndexExpr IndexExpr::variable(const std::string& name) {
  IndexExpr e;
  e.coeffs_[name] = 1;
  return e;
}

long IndexExpr::concrete() const {
  if (!is_concrete()) throw Error("index expression is not concrete: " + str());
  return offset_;
}

IndexExpr IndexExpr::operator+(const IndexExpr& o) const {
  IndexExpr r = *this;
  r.offset_ += o.offset_;
  for (auto& [v, c] : o.coeffs_) {
    long& slot = r.coeffs_[v];
    slot += c;
    if (slot == 0) r.coeffs_.erase(v);
  }
  return r;
}

IndexExpr IndexExpr::operator-(const IndexExpr& o) const { return *this + o.scaled(-1); }

IndexExpr IndexExpr::scaled(long k) const {
  IndexExpr r;
  if (k == 0) return r;
  r.offset_ = offset_ * k;
  for (auto& [v, c] : coeffs_) r.coeffs_[v] = c * k;
  return r;
}

IndexExpr IndexExpr::substituted(const std::map<std::string, IndexExpr>& images) const {
  IndexExpr r = constant(offset_);
  for (auto& [v, c] : coeffs_) {
    auto it = images.find(v);
    r = r + (it != images.end() ? it->second : variable(v)).scaled(c);
  }
  return r;
}

Poly IndexExpr::to_poly(const RingPtr& ring) const {
  Poly p = Poly::constant(ring, Rational(offset_));
  for (auto& [v, c] : coeffs_) p += Poly::variable(ring, v).scaled(Rational(c));
  return p;
}

std::string IndexExpr::str() const {
  if (coeffs_.empty()) return std::to_string(offset_);
  std::ostringstream out;
  bool first = true;
  for (auto& [v, c] : coeffs_) {
    if (c >= 0 && !first) out << "+";
    if (c == -1)
      out << "-";
    else if (c != 1)
      out << c << "*";
    out << v;
    first = false;
  }
  if (offset_ > 0) out << "+" << offset_;
  if (offset_ < 0) out << offset_;
  return out.str();
}

std::string cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

std::string GuardAtom::str() const {
  if (kind == Kind::IndexCmp) return ilhs.str() + " " + cmp_str(op) + " " + irhs.str();
  std::string r = param + " " + cmp_str(op) + " ";
  if (std::holds_alternative<std::string>(rhs))
    r += std::get<std::string>(rhs);
  else
    r += std::get<Rational>(rhs).str();
  return r;
}

bool GuardAtom::operator==(const GuardAtom& o) const {
  return kind == o.kind && ilhs == o.ilhs && irhs == o.irhs && op == o.op && param == o.param &&
         rhs == o.rhs;
}

std::string Guard::str() const {
  std::string r;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) r += " and ";
    r += atoms[i].str();
  }
  return r;
}

const FamilyDecl* AlgebraDef::find_family(std::string_view fam) const {
  for (auto& f : families)
    if (f.name == fam) return &f;
  return nullptr;
}

const FamilyDecl& AlgebraDef::family(std::string_view fam) const {
  const FamilyDecl* f = find_family(fam);
  if (!f) throw Error("unknown family: " + std::string(fam));
  return *f;
}

const BracketRule* AlgebraDef::find_rule(std::string_view left, std::string_view right) const {
  for (auto& r : rules)
    if (r.left_family == left && r.right_family == right) return &r;
  return nullptr;
}

Poly AlgebraDef::param_value(const std::string& name) const {
  auto it = bound.find(name);
  if (it != bound.end()) return it->second;
  return Poly::variable(ring, name);
}

Poly ModuleDef::param_value(const std::string& name) const {
  auto it = bound.find(name);
  if (it != bound.end()) return it->second;
  return Poly::variable(ring, name);
}

RingPtr build_definition_ring(const std::vector<std::string>& params,
                              const std::vector<std::string>& index_vars) {
  std::vector<VarDecl> decls = {
      {names::partial, VarKind::Partial},        {names::slot_formal, VarKind::LambdaSlot},
      {names::slot_lambda, VarKind::LambdaSlot}, {names::slot_mu, VarKind::LambdaSlot},
      {names::slot_nu, VarKind::LambdaSlot},
  };
  auto reserved = [&](const std::string& n) {
    return std::any_of(decls.begin(), decls.end(), [&](const VarDecl& d) { return d.name == n; });
  };
  for (auto& p : params) {
    if (reserved(p)) throw Error("reserved name used as parameter: " + p);
    decls.push_back({p, VarKind::Parameter});
  }
  std::set<std::string> wanted(index_vars.begin(), index_vars.end());
  for (const char* extra : {"i", "j", "k", "l"}) wanted.insert(extra);
  for (auto& v : wanted) {
    if (reserved(v)) throw Error("reserved name used as index variable: " + v);
    if (std::find(params.begin(), params.end(), v) != params.end())
      throw Error("name declared both as parameter and index variable: " + v);
    decls.push_back({v, VarKind::Index});
  }
  return Ring::make(std::move(decls));
}

namespace {

bool rules_equal(const BracketRule& a, const BracketRule& b) {
  if (a.left_family != b.left_family || a.left_var != b.left_var) return false;
  if (a.right_family != b.right_family || a.right_var != b.right_var) return false;
  if (a.guard.has_value() != b.guard.has_value()) return false;
  if (a.guard && !(*a.guard == *b.guard)) return false;
  if (a.result.size() != b.result.size()) return false;
  for (std::size_t t = 0; t < a.result.size(); ++t) {
    const auto& x = a.result[t];
    const auto& y = b.result[t];
    if (x.family != y.family || !(x.index == y.index)) return false;
    if (!structurally_equal(x.coeff, y.coeff)) return false;
  }
  return true;
}

bool actions_equal(const ActionRule& a, const ActionRule& b) {
  if (a.family != b.family || a.concrete_index != b.concrete_index) return false;
  if (a.index_var != b.index_var || a.basis_var != b.basis_var) return false;
  if (a.guard.has_value() != b.guard.has_value()) return false;
  if (a.guard && !(*a.guard == *b.guard)) return false;
  if (!(a.target == b.target)) return false;
  return structurally_equal(a.coeff, b.coeff);
}

std::map<std::string, Poly> checked_images(const RingPtr& ring,
                                           const std::map<std::string, Poly>& bindings) {
  std::map<std::string, Poly> images;
  for (auto& [name, value] : bindings) {
    auto v = ring->find(name);
    if (!v || ring->decl(*v).kind != VarKind::Parameter)
      throw Error("binding of undeclared parameter: " + name);
    images.emplace(name, value.transfer(ring));
  }
  return images;
}

std::map<std::string, Poly> composed_bound(const std::map<std::string, Poly>& old_bound,
                                           const std::map<std::string, Poly>& images) {
  std::map<std::string, Poly> out;
  for (auto& [k, v] : old_bound) out.emplace(k, v.substitute(images));
  for (auto& [k, v] : images) {
    if (out.count(k) && !(out.at(k) == v))
      throw Error("conflicting rebinding of parameter: " + k);
    out.emplace(k, v);
  }
  return out;
}

}  // namespace

bool structurally_equal(const AlgebraDef& a, const AlgebraDef& b) {
  if (a.params != b.params || a.families != b.families || a.truncation != b.truncation)
    return false;
  if (a.rules.size() != b.rules.size()) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i)
    if (!rules_equal(a.rules[i], b.rules[i])) return false;
  return true;
}

bool structurally_equal(const ModuleDef& a, const ModuleDef& b) {
  if (a.name != b.name || a.algebra_name != b.algebra_name || a.graded != b.graded) return false;
  if (a.params != b.params || a.actions.size() != b.actions.size()) return false;
  for (std::size_t i = 0; i < a.actions.size(); ++i)
    if (!actions_equal(a.actions[i], b.actions[i])) return false;
  return true;
}

AlgebraDef bind_params(const AlgebraDef& def, const std::map<std::string, Poly>& bindings) {
  AlgebraDef out = def;
  auto images = checked_images(def.ring, bindings);
  for (auto& rule : out.rules)
    for (auto& term : rule.result) term.coeff = term.coeff.substitute(images);
  out.bound = composed_bound(def.bound, images);
  return out;
}

ModuleDef bind_params(const ModuleDef& def, const std::map<std::string, Poly>& bindings) {
  ModuleDef out = def;
  auto images = checked_images(def.ring, bindings);
  for (auto& action : out.actions) action.coeff = action.coeff.substitute(images);
  out.bound = composed_bound(def.bound, images);
  return out;
}

}  // namespace lca
