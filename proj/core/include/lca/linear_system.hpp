#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lca/rational.hpp"

namespace lca {

using SparseRow = std::map<std::uint32_t, Rational>;

/// Homogeneous linear system over the rationals with named unknowns.
class LinearSystem {
 public:
  explicit LinearSystem(std::vector<std::string> unknowns);

  std::size_t unknown_count() const { return unknowns_.size(); }
  const std::vector<std::string>& unknowns() const { return unknowns_; }
  std::uint32_t unknown(std::string_view name) const;

  void add_row(SparseRow row);
  void add_row_by_name(const std::map<std::string, Rational>& row);
  std::size_t row_count() const { return rows_.size(); }
  const std::vector<SparseRow>& rows() const { return rows_; }

 private:
  std::vector<std::string> unknowns_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
  std::vector<SparseRow> rows_;
};

struct NullspaceResult {
  std::size_t rank = 0;
  /// Basis of the solution space, dense in unknown order.
  std::vector<std::vector<Rational>> basis;
  std::size_t dimension() const { return basis.size(); }
};

/// Exact basis of the solution space. Empty system yields the full space.
NullspaceResult nullspace(const LinearSystem& system);

/// Incremental reduced row echelon form over sparse rational rows. Used for
/// rank/span computations (nullspaces, derived series).
class RowReducer {
 public:
  /// Reduces the row against the current basis; inserts it when independent.
  /// Returns true when the row enlarged the span.
  bool add(SparseRow row);
  /// Reduction only; the reducer is left unchanged.
  SparseRow reduce(SparseRow row) const;
  std::size_t rank() const { return pivots_.size(); }
  /// Pivot column -> fully reduced row with leading coefficient 1.
  const std::map<std::uint32_t, SparseRow>& pivot_rows() const { return pivots_; }

 private:
  std::map<std::uint32_t, SparseRow> pivots_;
};

}  // namespace lca
