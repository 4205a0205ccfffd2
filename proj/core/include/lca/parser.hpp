#pragma once

#include <string_view>

#include "lca/ast.hpp"

namespace lca {

/// Parses an algebra definition (params / family / bracket / truncate
/// statements). Throws ParseDiagnostic with a 1-based position on any
/// lexical, syntactic, or semantic error.
AlgebraDef parse_algebra(std::string_view text);

/// Parses a module definition (module header, params, action statements)
/// and validates it against the given algebra.
ModuleDef parse_module(std::string_view text, const AlgebraDef& algebra);

}  // namespace lca
