#include "lca/printer.hpp"

#include <sstream>

namespace lca {

namespace {

void print_terms(std::ostringstream& out, const std::vector<ResultTerm>& terms,
                 const std::string& basis_name = "") {
  if (terms.empty()) {
    out << "0";
    return;
  }
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t) out << " + ";
    const ResultTerm& term = terms[t];
    if (!(term.coeff.is_constant() && term.coeff.constant_term().is_one()))
      out << "(" << term.coeff.str() << ")*";
    out << (basis_name.empty() ? term.family : basis_name) << "(" << term.index.str() << ")";
  }
}

}  // namespace

std::string pretty_print(const AlgebraDef& def) {
  std::ostringstream out;
  if (!def.params.empty()) {
    out << "params";
    for (auto& p : def.params) out << " " << p;
    out << "\n";
  }
  for (auto& f : def.families) {
    out << "family " << f.name << " ";
    if (f.max_index)
      out << "0.." << *f.max_index;
    else
      out << "all";
    out << "\n";
  }
  if (def.truncation) out << "truncate " << *def.truncation << "\n";
  for (auto& rule : def.rules) {
    out << "bracket " << rule.left_family << "(" << rule.left_var << ") " << rule.right_family
        << "(" << rule.right_var << ") = ";
    print_terms(out, rule.result);
    if (rule.guard) out << " if " << rule.guard->str();
    out << "\n";
  }
  return out.str();
}

std::string pretty_print(const ModuleDef& def) {
  std::ostringstream out;
  out << "module " << def.name << " over " << def.algebra_name;
  if (def.graded) out << " graded";
  out << "\n";
  if (!def.params.empty()) {
    out << "params";
    for (auto& p : def.params) out << " " << p;
    out << "\n";
  }
  for (auto& a : def.actions) {
    out << "action " << a.family << "(";
    if (a.concrete_index)
      out << *a.concrete_index;
    else
      out << a.index_var;
    out << ")";
    if (def.graded) out << " v(" << a.basis_var << ")";
    out << " = ";
    if (def.graded) {
      if (a.coeff.is_zero()) {
        out << "0";
      } else {
        std::vector<ResultTerm> terms(1);
        terms[0].coeff = a.coeff;
        terms[0].family = "v";
        terms[0].index = a.target;
        print_terms(out, terms, "v");
      }
    } else {
      out << a.coeff.str();
    }
    if (a.guard) out << " if " << a.guard->str();
    out << "\n";
  }
  return out.str();
}

}  // namespace lca
