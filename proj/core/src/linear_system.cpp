#include "lca/linear_system.hpp"

#include <algorithm>

namespace lca {

LinearSystem::LinearSystem(std::vector<std::string> unknowns) : unknowns_(std::move(unknowns)) {
  for (std::size_t i = 0; i < unknowns_.size(); ++i) {
    auto [it, fresh] = index_.emplace(unknowns_[i], static_cast<std::uint32_t>(i));
    if (!fresh) throw Error("duplicate unknown: " + unknowns_[i]);
  }
}

std::uint32_t LinearSystem::unknown(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("undeclared unknown: " + std::string(name));
  return it->second;
}

void LinearSystem::add_row(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= unknowns_.size()) throw Error("row references undeclared unknown");
    it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  rows_.push_back(std::move(row));
}

void LinearSystem::add_row_by_name(const std::map<std::string, Rational>& row) {
  SparseRow r;
  for (auto& [name, c] : row) r.emplace(unknown(name), c);
  add_row(std::move(r));
}

SparseRow RowReducer::reduce(SparseRow row) const {
  while (!row.empty()) {
    auto lead = row.begin()->first;
    auto pivot = pivots_.find(lead);
    if (pivot == pivots_.end()) break;
    Rational factor = row.begin()->second;
    for (auto& [col, c] : pivot->second) {
      auto [it, fresh] = row.emplace(col, -(factor * c));
      if (!fresh) {
        it->second -= factor * c;
        if (it->second.is_zero()) row.erase(it);
      }
    }
  }
  return row;
}

bool RowReducer::add(SparseRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  // normalize to leading coefficient 1
  Rational lead = row.begin()->second;
  for (auto& [col, c] : row) c /= lead;
  std::uint32_t col = row.begin()->first;
  // back-substitute into existing pivot rows to keep the form reduced
  for (auto& [pc, prow] : pivots_) {
    auto hit = prow.find(col);
    if (hit == prow.end()) continue;
    Rational factor = hit->second;
    for (auto& [c2, v2] : row) {
      auto [it, fresh] = prow.emplace(c2, -(factor * v2));
      if (!fresh) {
        it->second -= factor * v2;
        if (it->second.is_zero()) prow.erase(it);
      }
    }
  }
  pivots_.emplace(col, std::move(row));
  return true;
}

NullspaceResult nullspace(const LinearSystem& system) {
  RowReducer reducer;
  for (const auto& row : system.rows()) reducer.add(row);

  NullspaceResult result;
  result.rank = reducer.rank();
  const auto& pivots = reducer.pivot_rows();
  const std::size_t n = system.unknown_count();
  for (std::uint32_t free_col = 0; free_col < n; ++free_col) {
    if (pivots.count(free_col)) continue;
    std::vector<Rational> vec(n, Rational(0));
    vec[free_col] = Rational(1);
    for (auto& [pc, prow] : pivots) {
      auto hit = prow.find(free_col);
      if (hit != prow.end()) vec[pc] = -hit->second;
    }
    result.basis.push_back(std::move(vec));
  }
  return result;
}

}  // namespace lca
