#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ckepler/json_io.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CKEPLER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("spectrum: analytic spherical levels as JSON") {
  const auto r = run_cli("spectrum --space s3 --e 2 --j2 1 --parity 1 --levels 3 "
                         "--mode analytic");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["space"] == "s3");
  CHECK(j["method"] == "analytic");
  CHECK(j["levels"].size() == 3);
  CHECK(std::abs(j["levels"][0]["energy"].get<double>() - 0.236111111111111) < 1e-12);
  CHECK(std::abs(j["levels"][1]["energy"].get<double>() - 2.805) < 1e-12);
  CHECK(std::abs(j["levels"][2]["energy"].get<double>() - 5.96173469387755) < 1e-10);
  CHECK(j["levels"][0]["N_x2"] == 3);
  CHECK(j["levels"][2]["N_x2"] == 7);
  CHECK(j["meta"]["version"] == "0.1.0");
}

TEST_CASE("JSON output round-trips byte for byte") {
  const auto r = run_cli("spectrum --space h3 --e 10 --j2 1 --parity 1 --levels 5 "
                         "--mode analytic");
  REQUIRE(r.exit_code == 0);
  std::string text = r.out;
  if (!text.empty() && text.back() == '\n') text.pop_back();
  const auto parsed = nlohmann::ordered_json::parse(text);
  CHECK(ckepler::json_io::dump(parsed) == text);
}

TEST_CASE("spectrum: hyperbolic validity flags") {
  const auto r = run_cli("spectrum --space h3 --e 10 --j2 1 --parity 1 --levels 5 "
                         "--mode analytic");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  int valid = 0, invalid = 0;
  for (const auto& lv : j["levels"]) {
    if (lv["valid"].get<bool>()) ++valid;
    else {
      ++invalid;
      CHECK_FALSE(lv["notes"].get<std::string>().empty());
    }
  }
  CHECK(valid == 2);
  CHECK(invalid == 3);
}

TEST_CASE("spectrum: oracle mode on a small grid") {
  const auto r = run_cli("spectrum --space s3 --e 0 --j2 1 --parity 1 --levels 2 "
                         "--mode oracle --points 2001");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(std::abs(j["levels"][0]["energy"].get<double>() - 1.125) < 1e-5);
  CHECK(std::abs(j["levels"][1]["energy"].get<double>() - 3.125) < 1e-5);
}

TEST_CASE("spectrum: csv format") {
  const auto r = run_cli("spectrum --space flat --e 1 --j2 1 --parity 1 --levels 2 "
                         "--format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "space,e,m,j2,parity,method,n,N_x2,energy,valid,notes");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
  CHECK(r.out.find("-0.125") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("spectrum --space flat --e 0 --j2 1 --parity 1").exit_code == 2);
  CHECK(run_cli("spectrum --space nowhere --e 1").exit_code == 2);
  CHECK(run_cli("spectrum --space s3 --e 1 --j2 2 --parity 1").exit_code == 2);
  CHECK(run_cli("spectrum --space s3 --e 1 --j2 1 --parity 1 --levels 0").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  // dimensionful mode needs both knobs, and only applies to curved spaces
  CHECK(run_cli("spectrum --space s3 --e 1 --rho 100").exit_code == 2);
  CHECK(run_cli("spectrum --space flat --e 1 --rho 100 --q2 1").exit_code == 2);
}

TEST_CASE("unbound level requests exit with code 3") {
  CHECK(run_cli("wavefunction --space h3 --e 10 --j2 1 --parity 1 --n 2")
            .exit_code == 3);
}

TEST_CASE("wavefunction files: CSV plus JSON sidecar") {
  const std::string path = "/tmp/ckepler_test_wf.csv";
  std::remove(path.c_str());
  std::remove((path + ".json").c_str());
  const auto r = run_cli("wavefunction --space flat --e 1 --j2 1 --parity 1 --n 0 "
                         "--points 501 --out " + path);
  REQUIRE(r.exit_code == 0);

  std::ifstream csv(path);
  REQUIRE(csv.good());
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "x,f,g");
  int rows = 0;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 501);

  std::ifstream sidecar(path + ".json");
  REQUIRE(sidecar.good());
  std::stringstream ss;
  ss << sidecar.rdbuf();
  const auto j = nlohmann::ordered_json::parse(ss.str());
  CHECK(j["nodes"] == 0);
  CHECK(std::abs(j["energy"].get<double>() + 0.125) < 1e-8);
  CHECK(std::abs(j["norm"].get<double>() - 1.0) < 1e-8);
}

TEST_CASE("dimensionful mode echoes the conversion") {
  const auto r = run_cli("spectrum --space s3 --j2 1 --parity 1 --levels 1 "
                         "--mode analytic --rho 1000 --q2 1");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(std::abs(j["meta"]["units"]["e"].get<double>() - 1000.0) < 1e-9);
  CHECK(std::abs(j["meta"]["units"]["energy_unit"].get<double>() - 1e-6) < 1e-18);
  // dimensionful ground level approaches the Bohr value -1/(2 N^2)
  const double eps = j["levels"][0]["energy"].get<double>();
  CHECK(std::abs(eps + 1.0 / 4.5) < 2e-6);
}

TEST_CASE("verify subcommand: flat-limit subset passes") {
  const auto r = run_cli("verify --only flat-limit --rho 1e3,1e4");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["pass"] == true);
  REQUIRE(j["checks"].size() == 1);
  CHECK(j["checks"][0]["slug"] == "flat-limit");
}

TEST_CASE("verify subcommand: termination report is honest about rejection") {
  const auto r = run_cli("verify --only heun-termination");
  CHECK(r.exit_code == 1);  // non-terminating points whose energies the oracle rejects
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["pass"] == false);
  bool saw_reject = false, saw_free_pass = false;
  for (const auto& c : j["checks"][0]["cases"]) {
    const std::string detail = c["detail"].get<std::string>();
    if (detail.find("oracle rejects") != std::string::npos) saw_reject = true;
    if (c["name"].get<std::string>().find("e=0") != std::string::npos &&
        c["pass"].get<bool>())
      saw_free_pass = true;
  }
  CHECK(saw_reject);
  CHECK(saw_free_pass);
}
