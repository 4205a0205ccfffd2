#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lca {

inline constexpr const char* kToolName = "lca";
inline constexpr const char* kToolVersion = "0.1.0";

/// One verification record: a named check over a subject, with witnesses for
/// any nonzero residual.
struct CheckRecord {
  std::string id;
  std::string subject;
  std::string mode;
  bool pass = true;
  std::vector<std::string> witnesses;
  double elapsed_ms = 0.0;

  void fail(std::string witness) {
    pass = false;
    witnesses.push_back(std::move(witness));
  }
};

/// Machine-readable report emitted by the CLI; the JSON layout is pinned by
/// schemas/report.schema.json.
struct Report {
  std::string command;
  std::vector<CheckRecord> checks;
  nlohmann::json extra = nlohmann::json::object();

  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json to_json() const;
  std::string human_text() const;
};

}  // namespace lca
