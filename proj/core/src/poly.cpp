#include "lca/poly.hpp"

#include <algorithm>
#include <sstream>

namespace lca {

Monomial::Monomial(std::vector<std::pair<VarRef, std::uint32_t>> factors)
    : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < factors_.size();) {
    VarRef v = factors_[i].first;
    std::uint64_t e = 0;
    while (i < factors_.size() && factors_[i].first == v) e += factors_[i++].second;
    if (e > 0) factors_[out++] = {v, static_cast<std::uint32_t>(e)};
  }
  factors_.resize(out);
}

Monomial Monomial::var(VarRef v, std::uint32_t e) {
  Monomial m;
  if (e > 0) m.factors_.push_back({v, e});
  return m;
}

std::uint32_t Monomial::exponent(VarRef v) const {
  for (auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (auto& [w, e] : factors_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() && b != o.factors_.end()) {
    if (a->first < b->first)
      r.factors_.push_back(*a++);
    else if (b->first < a->first)
      r.factors_.push_back(*b++);
    else {
      r.factors_.push_back({a->first, a->second + b->second});
      ++a, ++b;
    }
  }
  r.factors_.insert(r.factors_.end(), a, factors_.end());
  r.factors_.insert(r.factors_.end(), b, o.factors_.end());
  return r;
}

Monomial Monomial::without(VarRef v) const {
  Monomial r;
  r.factors_.reserve(factors_.size());
  for (auto& f : factors_)
    if (f.first != v) r.factors_.push_back(f);
  return r;
}

Poly Poly::zero(RingPtr ring) {
  Poly p;
  p.ring_ = std::move(ring);
  return p;
}

Poly Poly::constant(RingPtr ring, Rational c) {
  Poly p = zero(std::move(ring));
  if (!c.is_zero()) p.terms_.emplace(Monomial::one(), std::move(c));
  return p;
}

Poly Poly::variable(RingPtr ring, VarRef v) {
  if (v >= ring->size()) throw Error("variable reference out of range");
  Poly p = zero(std::move(ring));
  p.terms_.emplace(Monomial::var(v), Rational(1));
  return p;
}

Poly Poly::variable(RingPtr ring, std::string_view name) {
  VarRef v = ring->var(name);
  return variable(std::move(ring), v);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial::one());
  return it == terms_.end() ? Rational(0) : it->second;
}

long Poly::degree(VarRef v) const {
  long d = -1;
  for (auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m.exponent(v)));
  return d;
}

long Poly::total_degree() const {
  long d = -1;
  for (auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m.total_degree()));
  return d;
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

void Poly::require_same_ring(const Poly& o) const {
  if (ring_ != o.ring_) throw Error("mismatched ring contexts");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_ring(o);
  for (auto& [m, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_ring(o);
  for (auto& [m, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(m, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same_ring(b);
  Poly r = Poly::zero(a.ring_);
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) {
      Rational c = ca * cb;
      Monomial m = ma * mb;
      auto [it, fresh] = r.terms_.emplace(std::move(m), std::move(c));
      if (!fresh) it->second += ca * cb;
    }
  r.prune();
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (c.is_zero()) return zero(ring_);
  Poly r = *this;
  for (auto& [m, rc] : r.terms_) rc *= c;
  return r;
}

Poly Poly::pow(std::uint32_t e) const {
  Poly r = constant(ring_, 1);
  for (std::uint32_t i = 0; i < e; ++i) r *= *this;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  a.require_same_ring(b);
  return a.terms_ == b.terms_;
}

Poly Poly::substitute(const std::map<VarRef, Poly>& images) const {
  for (auto& [v, img] : images) {
    if (v >= ring_->size()) throw Error("substitution of undeclared variable");
    if (img.ring_ != ring_) throw Error("mismatched ring contexts in substitution");
  }
  // power cache per substituted variable
  std::map<VarRef, std::vector<Poly>> powers;
  auto power_of = [&](VarRef v, std::uint32_t e) -> const Poly& {
    auto& vec = powers[v];
    if (vec.empty()) vec.push_back(constant(ring_, 1));
    while (vec.size() <= e) vec.push_back(vec.back() * images.at(v));
    return vec[e];
  };

  Poly result = zero(ring_);
  for (auto& [m, c] : terms_) {
    Poly term = constant(ring_, c);
    Monomial untouched;
    for (auto& [v, e] : m.factors()) {
      if (images.count(v))
        term *= power_of(v, e);
      else
        untouched = untouched * Monomial::var(v, e);
    }
    if (!untouched.is_one()) {
      Poly mono = zero(ring_);
      mono.terms_.emplace(untouched, Rational(1));
      term *= mono;
    }
    result += term;
  }
  return result;
}

Poly Poly::substitute(const std::map<std::string, Poly>& images) const {
  std::map<VarRef, Poly> by_ref;
  for (auto& [name, img] : images) by_ref.emplace(ring_->var(name), img);
  return substitute(by_ref);
}

Poly Poly::coeff_of(VarRef v, std::uint32_t k) const {
  Poly r = zero(ring_);
  for (auto& [m, c] : terms_)
    if (m.exponent(v) == k) r.terms_.emplace(m.without(v), c);
  return r;
}

Poly Poly::transfer(const RingPtr& target) const {
  if (target == ring_) return *this;
  Poly r = zero(target);
  for (auto& [m, c] : terms_) {
    std::vector<std::pair<VarRef, std::uint32_t>> factors;
    factors.reserve(m.factors().size());
    for (auto& [v, e] : m.factors()) factors.push_back({target->var(ring_->decl(v).name), e});
    r.terms_.emplace(Monomial(std::move(factors)), c);
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a.sign() < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    first = false;
    bool coeff_shown = !(a.is_one() && !m.is_one());
    if (coeff_shown) {
      if (a.is_integer())
        out << a.str();
      else
        out << a.numerator().str() << "/" << a.denominator().str();
    }
    bool need_star = coeff_shown;
    for (auto& [v, e] : m.factors()) {
      if (need_star) out << "*";
      out << ring_->decl(v).name;
      if (e > 1) out << "^" << e;
      need_star = true;
    }
  }
  return out.str();
}

Poly coeff_extract(const Poly& p, VarRef var, long degree, CoeffMode mode) {
  if (degree < 0) throw Error("negative degree in coefficient extraction");
  Poly c = p.coeff_of(var, static_cast<std::uint32_t>(degree));
  if (mode == CoeffMode::KthProduct) c = c.scaled(factorial(static_cast<unsigned>(degree)));
  return c;
}

bool structurally_equal(const Poly& a, const Poly& b) {
  if (a.ring() == b.ring()) return a == b;
  return a == b.transfer(a.ring());
}

Poly divide_by_linear(const Poly& p, VarRef var, const Rational& r) {
  // Horner-style synthetic division by (var + r): p = q*(var + r) + rem,
  // rem free of var. Exactness required.
  long d = p.degree(var);
  if (d < 0) return p;  // zero polynomial
  Poly quotient = Poly::zero(p.ring());
  Poly carry = Poly::zero(p.ring());
  Poly var_poly = Poly::variable(p.ring(), var);
  for (long k = d; k >= 1; --k) {
    Poly qk = p.coeff_of(var, static_cast<std::uint32_t>(k)) + carry;
    quotient += qk * var_poly.pow(static_cast<std::uint32_t>(k - 1));
    carry = qk.scaled(-r);
  }
  Poly rem = p.coeff_of(var, 0) + carry;
  if (!rem.is_zero()) throw Error("inexact division by linear factor");
  return quotient;
}

}  // namespace lca
