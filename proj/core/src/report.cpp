#include "lca/report.hpp"

#include <sstream>

namespace lca {

nlohmann::json Report::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (auto& c : checks) {
    checks_json.push_back({{"id", c.id},
                           {"subject", c.subject},
                           {"mode", c.mode},
                           {"status", c.pass ? "pass" : "fail"},
                           {"witnesses", c.witnesses},
                           {"elapsed_ms", c.elapsed_ms}});
  }
  nlohmann::json j = {{"tool", kToolName},
                      {"version", kToolVersion},
                      {"command", command},
                      {"checks", checks_json},
                      {"verdict", pass() ? "PASS" : "FAIL"}};
  for (auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

std::string Report::human_text() const {
  std::ostringstream out;
  for (auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.subject;
    if (!c.mode.empty()) out << " (" << c.mode << ")";
    out << "\n";
    for (auto& w : c.witnesses) out << "       witness: " << w << "\n";
  }
  out << (pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace lca
