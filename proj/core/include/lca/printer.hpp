#pragma once

#include <string>

#include "lca/ast.hpp"

namespace lca {

/// Canonical DSL text. parse_algebra(pretty_print(def)) is structurally
/// equal to def.
std::string pretty_print(const AlgebraDef& def);

/// Canonical module text; round-trips through parse_module.
std::string pretty_print(const ModuleDef& def);

}  // namespace lca
