#include "lca/classifier.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lca {

namespace {

struct SystemRing {
  RingPtr ring;
  VarRef D, lam, mu;
  std::vector<VarRef> unknowns;         // aligned with unknown names
  std::vector<std::string> unknown_names;
};

SystemRing make_system_ring(const AnsatzSpec& spec) {
  SystemRing sr;
  std::vector<VarDecl> decls = {{names::partial, VarKind::Partial},
                                {names::slot_lambda, VarKind::LambdaSlot},
                                {names::slot_mu, VarKind::LambdaSlot}};
  for (long k = 0; k <= spec.K; ++k)
    for (long r = 0; r <= spec.D; ++r)
      for (long s = 0; s <= spec.D; ++s)
        decls.push_back({h_unknown_name(k, r, s), VarKind::Parameter});
  sr.ring = Ring::make(decls);
  sr.D = sr.ring->var(names::partial);
  sr.lam = sr.ring->var(names::slot_lambda);
  sr.mu = sr.ring->var(names::slot_mu);
  for (long k = 0; k <= spec.K; ++k)
    for (long r = 0; r <= spec.D; ++r)
      for (long s = 0; s <= spec.D; ++s) {
        std::string name = h_unknown_name(k, r, s);
        sr.unknowns.push_back(sr.ring->var(name));
        sr.unknown_names.push_back(std::move(name));
      }
  return sr;
}

/// h_k evaluated at polynomial arguments (A for ∂, B for the slot), as a
/// poly that is linear in the unknown coefficient variables.
Poly h_at(const SystemRing& sr, const AnsatzSpec& spec, long k, const Poly& A, const Poly& B) {
  Poly out = Poly::zero(sr.ring);
  if (k > spec.K) return out;
  std::vector<Poly> apow = {Poly::constant(sr.ring, 1)};
  std::vector<Poly> bpow = {Poly::constant(sr.ring, 1)};
  for (long r = 1; r <= spec.D; ++r) apow.push_back(apow.back() * A);
  for (long s = 1; s <= spec.D; ++s) bpow.push_back(bpow.back() * B);
  for (long r = 0; r <= spec.D; ++r)
    for (long s = 0; s <= spec.D; ++s)
      out += Poly::variable(sr.ring, h_unknown_name(k, r, s)) * apow[r] * bpow[s];
  return out;
}

/// g_i evaluated at polynomial arguments.
Poly g_at(const SystemRing& sr, const AnsatzSpec& spec, long i, const Poly& A, const Poly& B) {
  if (i == 0) {
    Poly base = A + B.scaled(spec.a) + Poly::constant(sr.ring, spec.b);
    return base.scaled(spec.g_case == 1 ? spec.p : Rational(-1));
  }
  if (i == 1 && spec.g_case == 2) return Poly::constant(sr.ring, spec.c);
  return Poly::zero(sr.ring);
}

/// Splits a poly that is linear in the unknowns into rows keyed by the
/// (D, lambda, mu) monomial.
void collect_rows(const SystemRing& sr, const Poly& equation, LinearSystem& system,
                  std::set<std::string>& dedupe) {
  std::map<Monomial, SparseRow> rows;
  std::set<VarRef> unknown_set(sr.unknowns.begin(), sr.unknowns.end());
  for (auto& [mono, coeff] : equation.terms()) {
    std::vector<std::pair<VarRef, std::uint32_t>> base_factors;
    std::optional<VarRef> unknown;
    for (auto& [v, e] : mono.factors()) {
      if (unknown_set.count(v)) {
        if (unknown || e != 1) throw Error("equation is not linear in the unknowns");
        unknown = v;
      } else {
        base_factors.push_back({v, e});
      }
    }
    if (!unknown) throw Error("equation has a term free of unknowns");
    // unknown var refs are contiguous after D/lam/mu in declaration order
    std::uint32_t col = static_cast<std::uint32_t>(*unknown - sr.unknowns.front());
    rows[Monomial(std::move(base_factors))].emplace(col, coeff);
  }
  for (auto& [mono, row] : rows) {
    // normalized textual key for deduplication
    SparseRow normalized = row;
    Rational lead = normalized.begin()->second;
    for (auto& [c, v] : normalized) v /= lead;
    std::ostringstream key;
    for (auto& [c, v] : normalized) key << c << ":" << v.str() << ";";
    if (dedupe.insert(key.str()).second) system.add_row(row);
  }
}

}  // namespace

void AnsatzSpec::validate() const {
  if (K < 1 || D < 2) throw Error("ansatz needs K >= 1 and D >= 2");
  if (p.is_zero()) throw Error("p must be nonzero");
  if (g_case != 1 && g_case != 2) throw Error("g case must be 1 or 2");
  if (g_case == 2 && !(p == Rational(-1)))
    throw Error("g case 2 applies only at p = -1");
}

std::string h_unknown_name(long k, long r, long s) {
  return "h" + std::to_string(k) + "_" + std::to_string(r) + "_" + std::to_string(s);
}

std::string HSolution::str() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (k) out << "; ";
    out << "h" << k << " = " << h[k].str();
  }
  return out.str();
}

LinearSystem build_system(const AnsatzSpec& spec) {
  spec.validate();
  SystemRing sr = make_system_ring(spec);
  Poly D = Poly::variable(sr.ring, sr.D);
  Poly lam = Poly::variable(sr.ring, sr.lam);
  Poly mu = Poly::variable(sr.ring, sr.mu);

  LinearSystem system(sr.unknown_names);
  std::set<std::string> dedupe;
  for (long i = 0; i <= spec.K; ++i)
    for (long j = 0; j <= spec.K; ++j) {
      // h_j(∂+λ, µ) g_i(∂, λ) - g_i(∂+µ, λ) h_j(∂, µ)
      //   = ((i+p)(β-µ) + (j+α-p)λ) h_{i+j}(∂, λ+µ)
      Poly lhs = h_at(sr, spec, j, D + lam, mu) * g_at(sr, spec, i, D, lam) -
                 g_at(sr, spec, i, D + mu, lam) * h_at(sr, spec, j, D, mu);
      Poly factor = (Poly::constant(sr.ring, spec.beta) - mu).scaled(spec.p + Rational(i)) +
                    lam.scaled(Rational(j) + spec.alpha - spec.p);
      Poly rhs = factor * h_at(sr, spec, i + j, D, lam + mu);
      Poly equation = lhs - rhs;
      if (!equation.is_zero()) collect_rows(sr, equation, system, dedupe);
    }
  return system;
}

std::vector<HSolution> decode_solutions(const AnsatzSpec& spec, const LinearSystem& system,
                                        const NullspaceResult& ns) {
  // decode into a small (D, lambda) ring
  RingPtr ring = Ring::make({{names::partial, VarKind::Partial},
                             {names::slot_lambda, VarKind::LambdaSlot},
                             {names::slot_mu, VarKind::LambdaSlot}});
  std::vector<HSolution> out;
  for (auto& vec : ns.basis) {
    HSolution sol;
    sol.h.assign(static_cast<std::size_t>(spec.K) + 1, Poly::zero(ring));
    for (std::size_t col = 0; col < vec.size(); ++col) {
      if (vec[col].is_zero()) continue;
      // parse the unknown name h<k>_<r>_<s>
      const std::string& name = system.unknowns()[col];
      long k, r, s;
      if (std::sscanf(name.c_str(), "h%ld_%ld_%ld", &k, &r, &s) != 3)
        throw Error("unexpected unknown name: " + name);
      Poly term = Poly::variable(ring, names::partial).pow(static_cast<std::uint32_t>(r)) *
                  Poly::variable(ring, names::slot_lambda).pow(static_cast<std::uint32_t>(s));
      sol.h[static_cast<std::size_t>(k)] += term.scaled(vec[col]);
    }
    out.push_back(std::move(sol));
  }
  return out;
}

namespace {

/// Residual of the abelian-pair equation for one candidate pair (x, y):
/// y_j(∂+λ, µ) x_i(∂, λ) - x_i(∂+µ, λ) y_j(∂, µ) summed checks per (i, j).
Poly abelian_residual(const HSolution& x, const HSolution& y, long i, long j) {
  const RingPtr& ring = x.h.front().ring();
  Poly D = Poly::variable(ring, names::partial);
  Poly lam = Poly::variable(ring, names::slot_lambda);
  Poly mu = Poly::variable(ring, names::slot_mu);
  auto at = [&](const Poly& h, const Poly& A, const Poly& B) {
    return h.substitute(std::map<std::string, Poly>{{names::partial, A},
                                                    {names::slot_lambda, B}});
  };
  return at(y.h[j], D + lam, mu) * at(x.h[i], D, lam) -
         at(x.h[i], D + mu, lam) * at(y.h[j], D, mu);
}

}  // namespace

AbelianFilter impose_abelian(const std::vector<HSolution>& solutions, const AnsatzSpec& spec) {
  AbelianFilter out;
  auto residual_zero = [&](const HSolution& x, const HSolution& y, std::string* witness) {
    for (long i = 0; i <= spec.K; ++i)
      for (long j = 0; j <= spec.K; ++j) {
        Poly r = abelian_residual(x, y, i, j);
        if (!r.is_zero()) {
          if (witness)
            *witness = "abelian residual at (i=" + std::to_string(i) +
                       ", j=" + std::to_string(j) + "): " + r.str();
          return false;
        }
      }
    return true;
  };
  std::vector<bool> keep(solutions.size(), true);
  for (std::size_t s = 0; s < solutions.size(); ++s) {
    std::string witness;
    if (!residual_zero(solutions[s], solutions[s], &witness)) {
      keep[s] = false;
      out.witnesses.push_back("basis vector " + std::to_string(s) + ": " + witness);
    }
  }
  // pairwise mixed terms: the form is quadratic, so vanishing on each basis
  // vector and on each pairwise sum covers the whole span
  for (std::size_t s = 0; s < solutions.size(); ++s)
    for (std::size_t t = s + 1; t < solutions.size(); ++t) {
      if (!keep[s] || !keep[t]) continue;
      std::string witness;
      bool ok1 = residual_zero(solutions[s], solutions[t], &witness);
      bool ok2 = ok1 && residual_zero(solutions[t], solutions[s], &witness);
      if (!ok1 || !ok2) {
        keep[t] = false;
        out.witnesses.push_back("pair (" + std::to_string(s) + ", " + std::to_string(t) +
                                "): " + witness);
      }
    }
  for (std::size_t s = 0; s < solutions.size(); ++s)
    if (keep[s]) out.kept.push_back(solutions[s]);
  return out;
}

std::vector<CheckRecord> check_special_equations(const AnsatzSpec& spec, const HSolution& h) {
  const RingPtr& ring = h.h.front().ring();
  Poly lam = Poly::variable(ring, names::slot_lambda);
  Poly mu = Poly::variable(ring, names::slot_mu);
  auto at = [&](const Poly& poly, const Poly& B) {
    return poly.substitute(std::map<std::string, Poly>{{names::slot_lambda, B}});
  };
  std::vector<CheckRecord> out;

  {
    // k = 0: p µ h0(µ) + (p(β-µ) + (α-p)λ) h0(λ+µ) = 0
    CheckRecord rec;
    rec.id = "special-eq-k0";
    rec.subject = "p*mu*h0(mu) + (p*(beta-mu) + (alpha-p)*lambda)*h0(lambda+mu)";
    rec.mode = "exact";
    if (h.h[0].degree(ring->var(names::partial)) > 0) {
      rec.fail("h0 depends on the partial variable");
    } else {
      Poly factor = (Poly::constant(ring, spec.beta) - mu).scaled(spec.p) +
                    lam.scaled(spec.alpha - spec.p);
      Poly residual = mu.scaled(spec.p) * at(h.h[0], mu) + factor * at(h.h[0], lam + mu);
      if (!residual.is_zero()) rec.fail("residual: " + residual.str());
    }
    out.push_back(std::move(rec));
  }

  for (long k = 1; k <= spec.K; ++k) {
    // ((k+p)(β-µ) + (α-p)λ) h_k(λ+µ) = 0
    CheckRecord rec;
    rec.id = "special-eq-k" + std::to_string(k);
    rec.subject = "((k+p)(beta-mu) + (alpha-p)lambda)*h" + std::to_string(k) + "(lambda+mu)";
    rec.mode = "exact";
    if (h.h[k].degree(ring->var(names::partial)) > 0) {
      rec.fail("h" + std::to_string(k) + " depends on the partial variable");
    } else if (spec.alpha == -Rational(k) && spec.p == -Rational(k)) {
      // the factor above vanishes identically at alpha = -k = p, so the
      // constraint comes from the rewritten pairing:
      // p(β-λ-µ) h_k(λ+µ) = -p µ h_k(µ)
      Poly lhs =
          (Poly::constant(ring, spec.beta) - lam - mu).scaled(spec.p) * at(h.h[k], lam + mu);
      Poly rhs = -mu.scaled(spec.p) * at(h.h[k], mu);
      Poly rewrite_residual = lhs - rhs;
      rec.subject = "p(beta-lambda-mu)*h" + std::to_string(k) + "(lambda+mu) + p*mu*h" +
                    std::to_string(k) + "(mu)";
      if (!rewrite_residual.is_zero())
        rec.fail("rewrite residual: " + rewrite_residual.str());
    } else {
      Poly factor = (Poly::constant(ring, spec.beta) - mu).scaled(spec.p + Rational(k)) +
                    lam.scaled(spec.alpha - spec.p);
      Poly residual = factor * at(h.h[k], lam + mu);
      if (!residual.is_zero()) rec.fail("residual: " + residual.str());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::pair<std::string, std::size_t> expected_case(const Rational& p, const Rational& alpha,
                                                  const Rational& beta) {
  bool diagonal = alpha == p && beta.is_zero();
  if (!(p == Rational(-1))) return diagonal ? std::make_pair(std::string("ii"), std::size_t(1))
                                            : std::make_pair(std::string("i"), std::size_t(0));
  return diagonal ? std::make_pair(std::string("iv"), std::size_t(1))
                  : std::make_pair(std::string("iii"), std::size_t(0));
}

SolveReport classify(const AnsatzSpec& spec) {
  spec.validate();
  SolveReport report;
  report.spec = spec;

  LinearSystem system = build_system(spec);
  NullspaceResult ns = nullspace(system);
  report.rank = ns.rank;
  std::vector<HSolution> candidates = decode_solutions(spec, system, ns);

  AbelianFilter filtered = impose_abelian(candidates, spec);
  {
    CheckRecord rec;
    rec.id = "abelian-filter";
    rec.subject = "pairwise h-compatibility";
    rec.mode = "exact";
    rec.pass = filtered.witnesses.empty();
    rec.witnesses = filtered.witnesses;
    report.records.push_back(std::move(rec));
  }
  report.basis = filtered.kept;
  report.dimension = report.basis.size();

  // ∂-freeness is an output, not an assumption
  {
    CheckRecord rec;
    rec.id = "partial-freeness";
    rec.subject = "every solution h_k is free of the partial variable";
    rec.mode = "exact";
    for (auto& sol : report.basis) {
      VarRef D = sol.h.front().ring()->var(names::partial);
      for (std::size_t k = 0; k < sol.h.size(); ++k)
        if (sol.h[k].degree(D) > 0)
          rec.fail("h" + std::to_string(k) + " = " + sol.h[k].str());
    }
    report.records.push_back(std::move(rec));
  }

  for (auto& sol : report.basis) {
    auto recs = check_special_equations(spec, sol);
    report.records.insert(report.records.end(), recs.begin(), recs.end());
  }

  // close the loop: each basis solution defines a module that must pass the
  // module-axiom checker; with no solution the base family itself must pass
  {
    CheckRecord rec;
    rec.id = "solution-module-axiom";
    rec.mode = "concrete";
    std::map<std::string, Rational> binds = {{"alpha", spec.alpha}, {"beta", spec.beta},
                                             {"p", spec.p},         {"a", spec.a},
                                             {"b", spec.b}};
    auto run_module = [&](Rank1Family fam, std::map<std::string, Rational> extra,
                          const std::string& label) {
      std::map<std::string, Rational> all = binds;
      for (auto& [k, v] : extra) all.emplace(k, v);
      RankOneModule m = make_rank1(fam, all);
      bool ok = true;
      for (auto& r : check_module_axiom(m))
        if (!r.pass) {
          ok = false;
          for (auto& w : r.witnesses) rec.fail(label + ": " + w);
        }
      return ok;
    };
    bool diagonal = spec.alpha == spec.p && spec.beta.is_zero();
    if (spec.g_case == 1) {
      rec.subject = diagonal ? "Vabd with d = 1" : "Vab";
      if (diagonal)
        run_module(Rank1Family::Vabd, {{"d", report.dimension == 1 ? Rational(1) : Rational(0)}},
                   "Vabd");
      else
        run_module(Rank1Family::Vab, {}, "Vab");
    } else {
      rec.subject = diagonal ? "Vabcd with d = 1" : "Vabc";
      std::map<std::string, Rational> extra = {{"c", spec.c}};
      if (diagonal) {
        extra.emplace("d", report.dimension == 1 ? Rational(1) : Rational(0));
        run_module(Rank1Family::Vabcd, extra, "Vabcd");
      } else {
        run_module(Rank1Family::Vabc, extra, "Vabc");
      }
    }
    report.records.push_back(std::move(rec));
  }

  auto [case_id, expected_dim] = expected_case(spec.p, spec.alpha, spec.beta);
  report.case_id = case_id;
  report.expected_dimension = expected_dim;

  bool shape_ok = true;
  if (report.dimension == 1) {
    // the extra freedom must be exactly a constant h0
    const HSolution& sol = report.basis.front();
    if (!sol.h[0].is_constant() || sol.h[0].is_zero()) shape_ok = false;
    for (std::size_t k = 1; k < sol.h.size(); ++k)
      if (!sol.h[k].is_zero()) shape_ok = false;
  }
  bool records_ok = true;
  for (auto& r : report.records)
    if (!r.pass) records_ok = false;
  report.match = records_ok && shape_ok && report.dimension == report.expected_dimension;
  {
    CheckRecord rec;
    rec.id = "case-table";
    rec.subject = "solution-space dimension " + std::to_string(report.dimension) +
                  " vs case (" + report.case_id + ") expectation " +
                  std::to_string(report.expected_dimension);
    rec.mode = "exact";
    if (report.dimension != report.expected_dimension)
      rec.fail("dimension mismatch");
    if (!shape_ok) rec.fail("extra solution is not a constant h0 family");
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace lca
