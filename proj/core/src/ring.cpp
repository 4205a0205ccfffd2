#include "lca/ring.hpp"

namespace lca {

std::shared_ptr<const Ring> Ring::make(std::vector<VarDecl> vars) {
  auto ring = std::shared_ptr<Ring>(new Ring());
  ring->vars_ = std::move(vars);
  for (std::size_t i = 0; i < ring->vars_.size(); ++i) {
    auto [it, fresh] = ring->by_name_.emplace(ring->vars_[i].name, static_cast<VarRef>(i));
    if (!fresh) throw Error("duplicate variable name: " + ring->vars_[i].name);
  }
  return ring;
}

std::shared_ptr<const Ring> Ring::extend(std::vector<VarDecl> extra) const {
  std::vector<VarDecl> all = vars_;
  for (auto& d : extra) all.push_back(std::move(d));
  return make(std::move(all));
}

std::optional<VarRef> Ring::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

VarRef Ring::var(std::string_view name) const {
  auto v = find(name);
  if (!v) throw Error("undeclared variable: " + std::string(name));
  return *v;
}

}  // namespace lca
