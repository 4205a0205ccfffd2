#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lca/error.hpp"

namespace lca {

enum class VarKind : std::uint8_t { Partial, LambdaSlot, Parameter, Index };

struct VarDecl {
  std::string name;
  VarKind kind;
};

using VarRef = std::uint32_t;

/// Immutable table of declared variables. Polynomials reference a Ring by
/// shared pointer; two polynomials interoperate only when they share the
/// same Ring instance (transfer() on Poly re-homes by name).
class Ring {
 public:
  static std::shared_ptr<const Ring> make(std::vector<VarDecl> vars);

  /// New ring with extra variables appended. Names must be fresh.
  std::shared_ptr<const Ring> extend(std::vector<VarDecl> extra) const;

  std::size_t size() const { return vars_.size(); }
  const VarDecl& decl(VarRef v) const { return vars_.at(v); }
  const std::vector<VarDecl>& decls() const { return vars_; }

  std::optional<VarRef> find(std::string_view name) const;
  /// Lookup that throws on unknown names.
  VarRef var(std::string_view name) const;
  bool has(std::string_view name) const { return find(name).has_value(); }

 private:
  Ring() = default;
  std::vector<VarDecl> vars_;
  std::unordered_map<std::string, VarRef> by_name_;
};

using RingPtr = std::shared_ptr<const Ring>;

}  // namespace lca
