#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lca/parser.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string command = env_prefix + std::string(LCA_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/lca_cli_test_" + name;
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
  return path;
}

// Minimal JSON-schema interpreter covering the subset the shipped schema
// uses: type, required, properties, items, enum.
bool schema_accepts(const json& schema, const json& value, std::string* why) {
  if (schema.contains("type")) {
    const std::string& type = schema["type"].get_ref<const std::string&>();
    bool ok = (type == "object" && value.is_object()) || (type == "array" && value.is_array()) ||
              (type == "string" && value.is_string()) ||
              (type == "number" && value.is_number()) ||
              (type == "integer" && value.is_number_integer()) ||
              (type == "boolean" && value.is_boolean());
    if (!ok) {
      *why = "expected type " + type + ", got " + value.dump().substr(0, 60);
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (auto& option : schema["enum"])
      if (option == value) hit = true;
    if (!hit) {
      *why = "value " + value.dump() + " not in enum";
      return false;
    }
  }
  if (schema.contains("required"))
    for (auto& key : schema["required"])
      if (!value.contains(key.get<std::string>())) {
        *why = "missing required key " + key.get<std::string>();
        return false;
      }
  if (schema.contains("properties") && value.is_object())
    for (auto& [key, sub] : schema["properties"].items())
      if (value.contains(key) && !schema_accepts(sub, value.at(key), why)) {
        *why = key + ": " + *why;
        return false;
      }
  if (schema.contains("items") && value.is_array())
    for (auto& element : value)
      if (!schema_accepts(schema["items"], element, why)) return false;
  return true;
}

void check_schema(const std::string& output) {
  static json schema = [] {
    std::ifstream in(LCA_SCHEMA_PATH);
    REQUIRE(in.good());
    return json::parse(in);
  }();
  json value = json::parse(output);
  std::string why;
  CHECK_MESSAGE(schema_accepts(schema, value, &why), why);
}

json strip_timings(json j) {
  if (j.contains("checks"))
    for (auto& check : j["checks"]) check.erase("elapsed_ms");
  return j;
}

}  // namespace

TEST_CASE("check-algebra passes on the symbolic catalog entries") {
  for (const char* name : {"catalog:Bp", "catalog:B_abp", "catalog:W_ab", "catalog:Vir"}) {
    RunResult r = run_cli("check-algebra " + std::string(name) + " --mode symbolic --json");
    CHECK(r.exit_code == 0);
    check_schema(r.output);
    CHECK(json::parse(r.output)["verdict"] == "PASS");
  }
}

TEST_CASE("check-algebra enumerates the quotients with bindings") {
  RunResult r = run_cli(
      "check-algebra catalog:b2 --mode enumerate --max-index 4 --bind alpha=1,beta=0 --json");
  CHECK(r.exit_code == 0);
  check_schema(r.output);
}

TEST_CASE("a corrupted coefficient exits 1 with a witness") {
  std::string path = write_temp("corrupted.lca", R"(params p
family L all
bracket L(i) L(j) = ((i+p)*D + (i+j+3*p)*X) * L(i+j)
)");
  RunResult r = run_cli("check-algebra " + path + " --json");
  CHECK(r.exit_code == 1);
  check_schema(r.output);
  json j = json::parse(r.output);
  CHECK(j["verdict"] == "FAIL");
  bool witnessed = false;
  for (auto& check : j["checks"])
    if (!check["witnesses"].empty()) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("a syntax error exits 2") {
  std::string path = write_temp("broken.lca", "family L all\nbracket L(i = nope\n");
  RunResult r = run_cli("check-algebra " + path);
  CHECK(r.exit_code == 2);
  RunResult missing = run_cli("check-algebra /tmp/lca_no_such_file.lca");
  CHECK(missing.exit_code == 2);
  RunResult bad_flag = run_cli("check-algebra catalog:Bp --mode sideways");
  CHECK(bad_flag.exit_code == 2);
}

TEST_CASE("annihilation verifies the closed form and builds quotients") {
  RunResult r =
      run_cli("annihilation catalog:B_abp --imax 4 --mmax 4 --verify-closed-form --json");
  CHECK(r.exit_code == 0);
  check_schema(r.output);

  RunResult q = run_cli(
      "annihilation catalog:B_abp --q 2,2 --bind p=2,alpha=1,beta=0 --solvable --json");
  CHECK(q.exit_code == 0);
  check_schema(q.output);
  json j = json::parse(q.output);
  CHECK(j["solvable"] == true);
  CHECK(!j["structure_constants"].empty());
  CHECK(j["derived_series"].size() >= 2);

  RunResult bad = run_cli("annihilation catalog:B_abp --imax -1");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("annihilation emits exact structure constants without a quotient") {
  RunResult r = run_cli("annihilation catalog:B_abp --imax 1 --mmax 1 --bind p=1/2 --json");
  CHECK(r.exit_code == 0);
  check_schema(r.output);
  json j = json::parse(r.output);
  REQUIRE(j.contains("structure_constants"));
  bool fractional = false;
  for (auto& entry : j["structure_constants"])
    for (auto& term : entry["result"])
      if (term["coeff"].get<std::string>().find('/') != std::string::npos) fractional = true;
  CHECK(fractional);
}

TEST_CASE("check-module reports the criterion with symbolic parameters") {
  RunResult r = run_cli("check-module catalog:B_abp family:Vab --bind p=2 --json");
  CHECK(r.exit_code == 0);
  check_schema(r.output);
  json j = json::parse(r.output);
  CHECK(j["verdict"] == "PASS");
  CHECK(j["irreducibility"]["criterion"] == "a != 0");
  CHECK(!j["irreducibility"].contains("irreducible"));
}

TEST_CASE("check-module reports degree-1 factors for the degenerate binding") {
  RunResult r = run_cli(
      "check-module catalog:b1 family:b1_Vabcd --bind alpha=-1,beta=0,a=0,b=1,c=0,d=0 --json");
  CHECK(r.exit_code == 0);
  check_schema(r.output);
  json j = json::parse(r.output);
  CHECK(j["irreducibility"]["irreducible"] == false);
  REQUIRE(j["irreducibility"]["deg1_factors"].size() == 1);
  CHECK(j["irreducibility"]["deg1_factors"][0] == "1");
}

TEST_CASE("check-module accepts a rank-one module file") {
  std::string path = write_temp("rank1.lcm", R"(module custom over B_abp
params a b
action L(0) = p*(D + a*X + b)
action L(i) = 0 if i >= 1
action W(i) = 0
)");
  RunResult r = run_cli("check-module catalog:B_abp " + path +
                        " --bind p=2,alpha=0,beta=0,a=1,b=0 --json");
  CHECK(r.exit_code == 0);
  check_schema(r.output);
  CHECK(json::parse(r.output)["verdict"] == "PASS");
}

TEST_CASE("check-module accepts a graded module file with a window note") {
  std::string path = write_temp("graded.lcm", R"(module V over Bp graded
params alpha beta
action L(i) v(j) = ((i+p)*(D + beta) + (i+j+alpha)*X) * v(i+j)
)");
  RunResult r = run_cli("check-module catalog:Bp " + path + " --json");
  CHECK(r.exit_code == 0);
  check_schema(r.output);
  json j = json::parse(r.output);
  CHECK(j["verdict"] == "PASS");
  CHECK(j["window"] == 6);
}

TEST_CASE("classify matches the published table and rejects p=0") {
  RunResult ii = run_cli("classify --p 2 --alpha 2 --beta 0 --json");
  CHECK(ii.exit_code == 0);
  check_schema(ii.output);
  json j = json::parse(ii.output);
  CHECK(j["classification"]["dimension"] == 1);
  CHECK(j["classification"]["case"] == "ii");
  CHECK(j["classification"]["match"] == true);

  RunResult i = run_cli("classify --p 2 --alpha 1 --beta 3 --json");
  CHECK(i.exit_code == 0);
  CHECK(json::parse(i.output)["classification"]["dimension"] == 0);

  RunResult bad = run_cli("classify --p 0 --alpha 1 --beta 0");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("export emits parseable canonical text") {
  RunResult r = run_cli("export catalog:B_abp");
  CHECK(r.exit_code == 0);
  lca::AlgebraDef def = lca::parse_algebra(r.output);
  CHECK(def.params == std::vector<std::string>{"alpha", "beta", "p"});
  CHECK(def.rules.size() == 3);
}

TEST_CASE("reports are deterministic modulo timings") {
  const std::string args = "check-algebra catalog:B_abp --mode symbolic --json";
  json a = strip_timings(json::parse(run_cli(args).output));
  json b = strip_timings(json::parse(run_cli(args).output));
  CHECK(a == b);
  const std::string cls = "classify --p -1 --alpha -1 --beta 0 --json";
  json c = strip_timings(json::parse(run_cli(cls).output));
  json d = strip_timings(json::parse(run_cli(cls).output));
  CHECK(c == d);
}

TEST_CASE("worker cap from the environment does not change results") {
  const std::string args = "check-algebra catalog:b2 --mode enumerate --max-index 4 --json";
  json base = strip_timings(json::parse(run_cli(args).output));
  // same command with the worker pool forced to one thread
  json capped = strip_timings(json::parse(run_cli(args, "LCA_THREADS=1 ").output));
  CHECK(base == capped);
}
