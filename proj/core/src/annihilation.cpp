#include "lca/annihilation.hpp"

#include <algorithm>
#include <sstream>

namespace lca {

std::string AnnElement::str() const {
  if (kind == Kind::Partial) return "partial";
  std::ostringstream out;
  if (shifted)
    out << family << "{" << index << "," << mode << "}";
  else
    out << "(" << family << "_" << index << ")_(" << mode << ")";
  return out.str();
}

bool operator<(const AnnElement& a, const AnnElement& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.family != b.family) return a.family < b.family;
  if (a.index != b.index) return a.index < b.index;
  if (a.mode != b.mode) return a.mode < b.mode;
  return a.shifted < b.shifted;
}

std::string ann_value_str(const AnnValue& v) {
  if (v.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto& [e, c] : v) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.str() << ")*" << e.str();
  }
  return out.str();
}

namespace {

void ann_add(AnnValue& v, const AnnElement& e, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = v.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

}  // namespace

Annihilation::Annihilation(const AlgebraDef& def) : def_(&def), engine_(def) {
  block_shape_ = def.find_family("L") && def.find_family("W") && def.ring->has("alpha") &&
                 def.ring->has("beta") && def.ring->has("p");
}

AnnValue Annihilation::push_partial_down(const LambdaValue& value, long t) const {
  // (P(∂) e)_(t) expands by ∂-degree: (∂^s e)_(t) = (-1)^s t(t-1)...(t-s+1) e_(t-s)
  AnnValue out;
  VarRef D = def_->ring->var(names::partial);
  for (auto& [g, p] : value.terms()) {
    long gi = g.index.concrete();
    long sdeg = p.degree(D);
    for (long s = 0; s <= sdeg; ++s) {
      Poly coeff = p.coeff_of(D, static_cast<std::uint32_t>(s));
      if (coeff.is_zero()) continue;
      Rational falling(1);
      for (long r = 0; r < s; ++r) falling *= Rational(t - r);
      if (falling.is_zero()) continue;
      if (s % 2) falling = -falling;
      ann_add(out, AnnElement::raw(g.family, gi, t - s), coeff.scaled(falling));
    }
  }
  return out;
}

AnnValue Annihilation::bracket_expanded(const std::string& fam_a, long i, long m_raw,
                                        const std::string& fam_b, long j, long n_raw) const {
  if (m_raw < 0 || n_raw < 0) throw Error("raw annihilation modes must be >= 0");
  AnnValue out;
  auto products = engine_.kth_products(GenRef::at(fam_a, i), GenRef::at(fam_b, j));
  for (auto& [k, value] : products) {
    if (k > m_raw) continue;
    Rational c = binomial(static_cast<unsigned>(m_raw), static_cast<unsigned>(k));
    AnnValue pushed = push_partial_down(value, m_raw + n_raw - k);
    for (auto& [e, p] : pushed) ann_add(out, e, p.scaled(c));
  }
  return out;
}

AnnValue Annihilation::partial_bracket_expanded(const std::string& fam, long i,
                                                long n_raw) const {
  AnnValue out;
  if (n_raw > 0)
    ann_add(out, AnnElement::raw(fam, i, n_raw - 1),
            Poly::constant(def_->ring, Rational(-n_raw)));
  return out;
}

AnnValue Annihilation::bracket_closed(const AnnElement& a, const AnnElement& b) const {
  if (!block_shape_)
    throw Error("closed-form annihilation brackets need the two-family extended Block shape");
  const RingPtr& ring = def_->ring;
  Poly alpha = def_->param_value("alpha").transfer(ring);
  Poly beta = def_->param_value("beta").transfer(ring);
  Poly p = def_->param_value("p").transfer(ring);
  auto c = [&](long v) { return Poly::constant(ring, Rational(v)); };

  AnnValue out;
  if (a.kind == AnnElement::Kind::Partial && b.kind == AnnElement::Kind::Partial) return out;
  if (a.kind == AnnElement::Kind::Partial || b.kind == AnnElement::Kind::Partial) {
    const AnnElement& g = a.kind == AnnElement::Kind::Partial ? b : a;
    if (!g.shifted) throw Error("closed form expects shifted elements");
    AnnValue r;
    if (g.family == "L") {
      // [∂, L_{i,m}] = -(m+1) L_{i,m-1}
      if (g.mode + 1 != 0) ann_add(r, AnnElement::at("L", g.index, g.mode - 1), c(-(g.mode + 1)));
    } else {
      // [∂, W_{j,n}] = -n W_{j,n-1}
      if (g.mode != 0) ann_add(r, AnnElement::at("W", g.index, g.mode - 1), c(-g.mode));
    }
    if (b.kind == AnnElement::Kind::Partial)
      for (auto& [e, q] : r) ann_add(out, e, -q);
    else
      out = std::move(r);
    return out;
  }

  if (!a.shifted || !b.shifted) throw Error("closed form expects shifted elements");
  const long i = a.index, m = a.mode, j = b.index, n = b.mode;
  if (a.family == "W" && b.family == "W") return out;
  if (a.family == "L" && b.family == "L") {
    // ((m+1)(j+p) - (n+1)(i+p)) L_{i+j, m+n}
    Poly coeff = (p + c(j)).scaled(Rational(m + 1)) - (p + c(i)).scaled(Rational(n + 1));
    ann_add(out, AnnElement::at("L", i + j, m + n), coeff);
    return out;
  }
  if (a.family == "L" && b.family == "W") {
    // ((m+1)(j-p+alpha) - n(i+p)) W_{i+j, m+n} + beta (i+p) W_{i+j, m+n+1}
    Poly coeff1 =
        (alpha - p + c(j)).scaled(Rational(m + 1)) - (p + c(i)).scaled(Rational(n));
    if (!coeff1.is_zero() && m + n < 0)
      throw Error("closed form produced an invalid W mode");
    if (m + n >= 0) ann_add(out, AnnElement::at("W", i + j, m + n), coeff1);
    Poly coeff2 = beta * (p + c(i));
    ann_add(out, AnnElement::at("W", i + j, m + n + 1), coeff2);
    return out;
  }
  // [W, L] = -[L, W]
  AnnValue swapped = bracket_closed(b, a);
  for (auto& [e, q] : swapped) ann_add(out, e, -q);
  return out;
}

CheckRecord Annihilation::verify_closed_form(long imax, long mmax) const {
  if (imax < 0 || mmax < 0) throw Error("verification bounds must be >= 0");
  CheckRecord rec;
  rec.id = "closed-form-brackets";
  rec.subject = def_->name.empty() ? "annihilation algebra" : def_->name + " annihilation algebra";
  rec.mode = "imax=" + std::to_string(imax) + ", mmax=" + std::to_string(mmax) +
             ", symbolic params";

  auto to_shifted = [](const AnnValue& raw) {
    AnnValue out;
    for (auto& [e, c] : raw) {
      AnnElement s = e.family == "L" ? AnnElement::at("L", e.index, e.mode - 1)
                                     : AnnElement::at(e.family, e.index, e.mode);
      ann_add(out, s, c);
    }
    return out;
  };
  auto raw_mode = [](const AnnElement& e) { return e.family == "L" ? e.mode + 1 : e.mode; };
  auto compare = [&](const AnnElement& a, const AnnElement& b) {
    AnnValue closed = bracket_closed(a, b);
    AnnValue expanded = to_shifted(
        bracket_expanded(a.family, a.index, raw_mode(a), b.family, b.index, raw_mode(b)));
    if (!(closed == expanded))
      rec.fail("[" + a.str() + ", " + b.str() + "]: closed " + ann_value_str(closed) +
               " vs expanded " + ann_value_str(expanded));
  };

  for (long i = 0; i <= imax; ++i)
    for (long j = 0; j <= imax; ++j) {
      for (long m = -1; m <= mmax; ++m)
        for (long n = -1; n <= mmax; ++n)
          compare(AnnElement::at("L", i, m), AnnElement::at("L", j, n));
      for (long m = -1; m <= mmax; ++m)
        for (long n = 0; n <= mmax; ++n) {
          compare(AnnElement::at("L", i, m), AnnElement::at("W", j, n));
          compare(AnnElement::at("W", j, n), AnnElement::at("L", i, m));
        }
      for (long m = 0; m <= mmax; ++m)
        for (long n = 0; n <= mmax; ++n)
          compare(AnnElement::at("W", i, m), AnnElement::at("W", j, n));
    }

  // extended rows: [∂, L_{i,m}] and [∂, W_{j,n}] against the raw-mode rule
  for (long i = 0; i <= imax; ++i) {
    for (long m = -1; m <= mmax; ++m) {
      AnnValue closed = bracket_closed(AnnElement::partial(), AnnElement::at("L", i, m));
      AnnValue expanded = to_shifted(partial_bracket_expanded("L", i, m + 1));
      if (!(closed == expanded))
        rec.fail("[partial, L{" + std::to_string(i) + "," + std::to_string(m) + "}]: closed " +
                 ann_value_str(closed) + " vs expanded " + ann_value_str(expanded));
    }
    for (long n = 0; n <= mmax; ++n) {
      AnnValue closed = bracket_closed(AnnElement::partial(), AnnElement::at("W", i, n));
      AnnValue expanded = partial_bracket_expanded("W", i, n);
      AnnValue expanded_shifted;
      for (auto& [e, c] : expanded)
        ann_add(expanded_shifted, AnnElement::at("W", e.index, e.mode), c);
      if (!(closed == expanded_shifted))
        rec.fail("[partial, W{" + std::to_string(i) + "," + std::to_string(n) + "}]: closed " +
                 ann_value_str(closed) + " vs expanded " + ann_value_str(expanded_shifted));
    }
  }
  return rec;
}

FinLieAlgebra Annihilation::build_Q(long k, long N,
                                    const std::map<std::string, Rational>& bind) const {
  if (k < 0 || N < 0) throw Error("Q(k,N) needs k, N >= 0");
  if (!block_shape_)
    throw Error("Q(k,N) needs the two-family extended Block shape");
  std::map<std::string, Poly> images;
  for (auto& [name, value] : bind) images.emplace(name, Poly::constant(def_->ring, value));
  AlgebraDef bound = bind_params(*def_, images);
  for (const char* param : {"alpha", "beta", "p"})
    if (!bound.param_value(param).is_constant())
      throw Error(std::string("Q(k,N) needs a concrete value for ") + param);
  Annihilation helper(bound);

  std::vector<std::string> names;
  std::vector<AnnElement> elements;
  auto slot = [&](const std::string& fam, long i, long m) {
    return static_cast<std::size_t>((fam == "W" ? (k + 1) * (N + 1) : 0) + i * (N + 1) + m);
  };
  for (const char* fam : {"L", "W"})
    for (long i = 0; i <= k; ++i)
      for (long m = 0; m <= N; ++m) {
        AnnElement e = AnnElement::at(fam, i, m);
        names.push_back(e.str());
        elements.push_back(e);
      }

  FinLieAlgebra lie(std::move(names));
  for (std::size_t x = 0; x < elements.size(); ++x)
    for (std::size_t y = 0; y < elements.size(); ++y) {
      AnnValue value = helper.bracket_closed(elements[x], elements[y]);
      std::map<std::size_t, Rational> row;
      for (auto& [e, c] : value) {
        if (e.index > k || e.mode > N) continue;  // quotient by the box ideal
        if (!c.is_constant()) throw Error("unbound parameter in Q(k,N) structure constants");
        Rational v = c.constant_term();
        if (!v.is_zero()) row.emplace(slot(e.family, e.index, e.mode), v);
      }
      lie.set_bracket(x, y, std::move(row));
    }
  return lie;
}

FinLieAlgebra::FinLieAlgebra(std::vector<std::string> basis) : basis_(std::move(basis)) {
  table_.assign(basis_.size(), std::vector<std::map<std::size_t, Rational>>(basis_.size()));
}

void FinLieAlgebra::set_bracket(std::size_t x, std::size_t y,
                                std::map<std::size_t, Rational> value) {
  for (auto& [z, c] : value)
    if (z >= dim()) throw Error("structure constant references an unknown basis element");
  table_.at(x).at(y) = std::move(value);
}

const std::map<std::size_t, Rational>& FinLieAlgebra::bracket(std::size_t x,
                                                              std::size_t y) const {
  return table_.at(x).at(y);
}

std::map<std::size_t, Rational> FinLieAlgebra::bracket_vectors(const SparseRow& u,
                                                               const SparseRow& v) const {
  std::map<std::size_t, Rational> out;
  for (auto& [x, cu] : u)
    for (auto& [y, cv] : v)
      for (auto& [z, c] : table_[x][y]) {
        auto [it, fresh] = out.emplace(z, cu * cv * c);
        if (!fresh) {
          it->second += cu * cv * c;
          if (it->second.is_zero()) out.erase(it);
        }
      }
  return out;
}

CheckRecord FinLieAlgebra::check_antisymmetry() const {
  CheckRecord rec;
  rec.id = "antisymmetry";
  rec.subject = "structure constants, dim " + std::to_string(dim());
  rec.mode = "exhaustive";
  for (std::size_t x = 0; x < dim(); ++x)
    for (std::size_t y = x; y < dim(); ++y) {
      std::map<std::size_t, Rational> sum = table_[x][y];
      for (auto& [z, c] : table_[y][x]) {
        auto [it, fresh] = sum.emplace(z, c);
        if (!fresh) {
          it->second += c;
          if (it->second.is_zero()) sum.erase(it);
        }
      }
      if (!sum.empty())
        rec.fail("[x,y] + [y,x] != 0 for x=" + basis_[x] + ", y=" + basis_[y]);
    }
  return rec;
}

CheckRecord FinLieAlgebra::check_jacobi() const {
  CheckRecord rec;
  rec.id = "jacobi";
  rec.subject = "structure constants, dim " + std::to_string(dim());
  rec.mode = "exhaustive";
  auto add_scaled = [](std::map<std::size_t, Rational>& acc,
                       const std::map<std::size_t, Rational>& v, const Rational& s) {
    for (auto& [z, c] : v) {
      auto [it, fresh] = acc.emplace(z, s * c);
      if (!fresh) {
        it->second += s * c;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  };
  // alternating sum over sorted triples; repeated entries vanish given
  // antisymmetry
  for (std::size_t x = 0; x < dim(); ++x)
    for (std::size_t y = x + 1; y < dim(); ++y)
      for (std::size_t z = y + 1; z < dim(); ++z) {
        std::map<std::size_t, Rational> acc;
        for (auto& [w, c] : table_[y][z]) add_scaled(acc, table_[x][w], c);
        for (auto& [w, c] : table_[z][x]) add_scaled(acc, table_[y][w], c);
        for (auto& [w, c] : table_[x][y]) add_scaled(acc, table_[z][w], c);
        if (!acc.empty())
          rec.fail("jacobi fails for (" + basis_[x] + ", " + basis_[y] + ", " + basis_[z] + ")");
      }
  return rec;
}

std::vector<std::size_t> FinLieAlgebra::derived_series_dims() const {
  std::vector<std::size_t> dims;
  // current subalgebra basis as sparse vectors
  std::vector<SparseRow> current;
  for (std::size_t x = 0; x < dim(); ++x) current.push_back({{static_cast<std::uint32_t>(x), Rational(1)}});
  dims.push_back(current.size());
  while (!current.empty()) {
    RowReducer reducer;
    std::vector<SparseRow> next;
    for (std::size_t a = 0; a < current.size(); ++a)
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        auto br = bracket_vectors(current[a], current[b]);
        SparseRow row;
        for (auto& [z, c] : br) row.emplace(static_cast<std::uint32_t>(z), c);
        if (reducer.add(row)) next.push_back(row);
      }
    std::size_t rank = reducer.rank();
    dims.push_back(rank);
    if (rank == 0 || rank == current.size()) break;
    // re-extract a reduced basis of the derived subalgebra
    current.clear();
    for (auto& [col, row] : reducer.pivot_rows()) current.push_back(row);
  }
  return dims;
}

bool FinLieAlgebra::is_solvable() const {
  auto dims = derived_series_dims();
  return dims.back() == 0;
}

nlohmann::json FinLieAlgebra::structure_constants_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t x = 0; x < dim(); ++x)
    for (std::size_t y = 0; y < dim(); ++y) {
      if (table_[x][y].empty()) continue;
      nlohmann::json result = nlohmann::json::array();
      for (auto& [z, c] : table_[x][y])
        result.push_back({{"basis", basis_[z]}, {"coeff", c.str()}});
      out.push_back({{"left", basis_[x]}, {"right", basis_[y]}, {"result", result}});
    }
  return out;
}

FinLieAlgebra FinLieAlgebra::sl2() {
  FinLieAlgebra lie({"e", "f", "h"});
  lie.set_bracket(0, 1, {{2, Rational(1)}});    // [e,f] = h
  lie.set_bracket(1, 0, {{2, Rational(-1)}});
  lie.set_bracket(2, 0, {{0, Rational(2)}});    // [h,e] = 2e
  lie.set_bracket(0, 2, {{0, Rational(-2)}});
  lie.set_bracket(2, 1, {{1, Rational(-2)}});   // [h,f] = -2f
  lie.set_bracket(1, 2, {{1, Rational(2)}});
  return lie;
}

Poly kth_action(const RankOneModule& m, const std::string& family, long index, long k) {
  if (k < 0) throw Error("k-th action needs k >= 0");
  Poly a = action_coeff(m, family, index);
  return coeff_extract(a, m.module.ring->var(names::slot_formal), k, CoeffMode::KthProduct);
}

}  // namespace lca
