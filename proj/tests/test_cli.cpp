#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cp3/config.hpp"
#include "cp3/errors.hpp"

using namespace cp3;
using nlohmann::json;

namespace {

const char* kMinimalConfig = R"({
  "atoms": {
    "A": {"position": [0, 0, 0], "k_res": 1.7, "mu": [0, 0, 0.8]},
    "B": {"position": [2, 0, 0], "k_res": 2.3, "mu": [0, 0, 0.6]},
    "C": {"position": [1, 1.5, 0], "k_res": 1.0, "mu": [0.2, 0.3, 0.5],
           "excited": true}
  }
})";

std::string write_temp(const std::string& text, const std::string& name) {
  const std::string path = std::string("/tmp/cp3_test_") + name + ".json";
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("minimal config parses with defaults filled in") {
  const RunConfig cfg = parse_config(kMinimalConfig);
  CHECK(cfg.excited_index == 2);
  CHECK(cfg.quadrature.rel_tol == 1e-10);
  CHECK(cfg.output_format == "json");
  CHECK(!cfg.sweep.has_value());
  // reference wavenumber defaults to the excited atom's resonance, so
  // internally C sits at k_res = 1
  CHECK(cfg.atoms[2].k_res == doctest::Approx(1.0));
  CHECK(cfg.atoms[0].k_res == doctest::Approx(1.7));
  const json resolved = json::parse(cfg.resolved);
  CHECK(resolved["units"]["reference_wavenumber"] == 1.0);
  CHECK(resolved["quadrature"]["rel_tol"] == 1e-10);
}

TEST_CASE("explicit reference wavenumber rescales every resonance") {
  std::string text = kMinimalConfig;
  text.insert(text.rfind('}'), R"(, "units": {"reference_wavenumber": 2.0})");
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.atoms[2].k_res == doctest::Approx(0.5));
  CHECK(cfg.atoms[0].k_res == doctest::Approx(0.85));
}

TEST_CASE("schema violations report the offending field") {
  CHECK_THROWS_AS(parse_config("not json"), SchemaError);
  CHECK_THROWS_AS(parse_config("{}"), SchemaError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"atoms": {"A": {}, "B": {}}})"),
      doctest::Contains("atoms.C"), SchemaError);
  CHECK_THROWS_WITH_AS(
      parse_config(
          R"({"atoms": {"A": {"mu": [1, 2]}, "B": {}, "C": {"excited": true}}})"),
      doctest::Contains("atoms.A.mu"), SchemaError);
}

TEST_CASE("exactly one excited atom is required") {
  std::string none = kMinimalConfig;
  const auto pos = none.find("\"excited\": true");
  none.replace(pos, 15, "\"excited\": false");
  CHECK_THROWS_AS(parse_config(none), ValidationError);

  std::string two = kMinimalConfig;
  const auto apos = two.find("\"k_res\": 1.7");
  two.insert(apos, "\"excited\": true, ");
  CHECK_THROWS_AS(parse_config(two), ValidationError);
}

TEST_CASE("sweep values respect spacing and bounds") {
  std::string text = kMinimalConfig;
  text.insert(text.rfind('}'),
              R"(, "sweep": {"from": 1.0, "to": 8.0, "steps": 4,
                  "spacing": "log"})");
  const RunConfig cfg = parse_config(text);
  REQUIRE(cfg.sweep.has_value());
  const auto v = cfg.sweep->values();
  REQUIRE(v.size() == 4);
  CHECK(v.front() == doctest::Approx(1.0));
  CHECK(v.back() == doctest::Approx(8.0));
  CHECK(v[1] == doctest::Approx(2.0));  // log spacing doubles each step

  std::string bad = kMinimalConfig;
  bad.insert(bad.rfind('}'),
             R"(, "sweep": {"from": 5.0, "to": 1.0, "steps": 4})");
  CHECK_THROWS_AS(parse_config(bad), ValidationError);
}

TEST_CASE("potential command emits a self-describing artifact") {
  const RunConfig cfg = parse_config(kMinimalConfig);
  std::ostringstream out;
  const int rc = run_command(Command::Potential, cfg, out);
  CHECK(rc == 0);
  const json artifact = json::parse(out.str());
  CHECK(artifact.contains("config"));
  CHECK(artifact["config"]["atoms"]["C"]["excited"] == true);
  CHECK(artifact["potential"].contains("resonant"));
  CHECK(artifact["potential"].contains("nonresonant"));
  CHECK(artifact["potential"].contains("total"));
  CHECK(artifact["potential"].contains("err_estimate"));
  const double total = artifact["potential"]["total"];
  const double res = artifact["potential"]["resonant"];
  const double nonres = artifact["potential"]["nonresonant"];
  CHECK(total == doctest::Approx(res + nonres).epsilon(1e-14));
}

TEST_CASE("repeated runs emit identical bytes") {
  const RunConfig cfg = parse_config(kMinimalConfig);
  std::ostringstream a, b;
  run_command(Command::Potential, cfg, a);
  run_command(Command::Potential, cfg, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("scan emits a CSV table with the embedded config") {
  std::string text = kMinimalConfig;
  text.insert(text.rfind('}'),
              R"(, "sweep": {"from": 1.0, "to": 4.0, "steps": 6},
                 "output": {"format": "csv"})");
  const RunConfig cfg = parse_config(text);
  std::ostringstream out;
  CHECK(run_command(Command::Scan, cfg, out, 2) == 0);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  REQUIRE(line.rfind("# config ", 0) == 0);
  CHECK_NOTHROW(json::parse(line.substr(9)));
  std::getline(in, line);
  CHECK(line == "d,a,b,c,resonant,nonresonant,total,err_estimate");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 6);

  // numeric cells round-trip exactly through shortest-decimal formatting
  std::istringstream in2(out.str());
  std::getline(in2, line);
  std::getline(in2, line);
  std::getline(in2, line);
  std::stringstream cells(line);
  std::string cell;
  std::getline(cells, cell, ',');  // d column
  CHECK(std::stod(cell) == 1.0);
}

TEST_CASE("correlate command evaluates each requested point pair") {
  std::string text = kMinimalConfig;
  text.insert(text.rfind('}'),
              R"(, "correlate": {"points": [
                   [[2, 1.5, 0], [1.8, 2.6, 0]],
                   [[0.4, 1.8, 0], [2, 1.5, 0.3]]]})");
  const RunConfig cfg = parse_config(text);
  std::ostringstream out;
  CHECK(run_command(Command::Correlate, cfg, out) == 0);
  const json artifact = json::parse(out.str());
  REQUIRE(artifact["correlations"].size() == 2);
  CHECK(artifact["correlations"][0]["tensor"].size() == 3);
  CHECK(artifact["correlations"][0].contains("err_estimate"));

  // a correlate run without points is a validation error
  const RunConfig bare = parse_config(kMinimalConfig);
  std::ostringstream sink;
  CHECK_THROWS_AS(run_command(Command::Correlate, bare, sink),
                  ValidationError);
}

#ifdef CP3_TOOL_PATH
TEST_CASE("command-line binary: exit codes and artifact bytes") {
  const std::string cfg_path = write_temp(kMinimalConfig, "cli_ok");
  const std::string out_path = "/tmp/cp3_test_cli_out.json";
  const std::string cmd = std::string(CP3_TOOL_PATH) + " potential --config " +
                          cfg_path + " --out " + out_path;
  CHECK(std::system(cmd.c_str()) == 0);
  std::ifstream in(out_path);
  REQUIRE(in.good());
  json artifact;
  in >> artifact;
  CHECK(artifact["potential"].contains("total"));

  // schema problem: exit code 2
  const std::string bad_path = write_temp("{\"atoms\": {}}", "cli_bad");
  const std::string bad_cmd = std::string(CP3_TOOL_PATH) +
                              " potential --config " + bad_path +
                              " 2>/dev/null";
  const int rc = std::system(bad_cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 2);

  // missing required --config: CLI parse failure, nonzero exit
  const std::string no_cfg =
      std::string(CP3_TOOL_PATH) + " potential 2>/dev/null";
  CHECK(WEXITSTATUS(std::system(no_cfg.c_str())) != 0);
  std::remove(out_path.c_str());
}
#endif
