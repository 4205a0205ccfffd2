#pragma once

#include <stdexcept>
#include <string>

namespace lca {

/// Base class for all errors raised by the engine.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Parse diagnostic carrying a 1-based source position.
struct ParseDiagnostic : Error {
  int line;
  int col;
  ParseDiagnostic(const std::string& what, int line_, int col_)
      : Error(what + " (line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

}  // namespace lca
