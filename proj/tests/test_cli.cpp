#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/beliefd_cli_") + name;
  std::ofstream(path) << content;
  return path;
}

const char* kReference =
    R"({"states":[0,10],"joint":[[0.4,0.1],[0.1,0.4]],"bias":{"affine":{"intercept":3,"slope":0.3333333333333333}}})";

}  // namespace

TEST_CASE("solve reproduces the reference numbers") {
  const std::string path = write_temp("ref.json", kReference);
  const RunResult r = run_cli("solve " + path);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == "beliefd-report/1");
  CHECK(j["binary"]["tau_star"].get<double>() == doctest::Approx(0.1));
  CHECK(j["binary"]["tau_star_interior"].get<double>() == doctest::Approx(0.3));
  CHECK(j["design"]["payoff"].get<double>() == doctest::Approx(-17.888888888889));
}

TEST_CASE("delegate reports both payoffs") {
  const std::string path = write_temp("ref.json", kReference);
  const RunResult r = run_cli("delegate " + path);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["delegation"]["delegate"] == true);
  CHECK(j["delegation"]["delegation_payoff"].get<double>() == doctest::Approx(-17.888888888889));
  CHECK(j["delegation"]["centralization_payoff"].get<double>() == doctest::Approx(-25.0));
}

TEST_CASE("round trip: the echoed scenario re-validates identically") {
  const std::string path = write_temp("ref.json", kReference);
  const RunResult first = run_cli("validate " + path);
  REQUIRE(first.exit_code == 0);
  const json j = json::parse(first.out);
  const std::string echo_path = write_temp("echo.json", j["scenario"]["echo"].dump());
  const RunResult second = run_cli("validate " + echo_path);
  REQUIRE(second.exit_code == 0);
  CHECK(json::parse(second.out)["scenario"]["hash"] == j["scenario"]["hash"]);
}

TEST_CASE("exit codes") {
  SUBCASE("usage error: missing subcommand") {
    CHECK(run_cli("").exit_code == 1);
  }
  SUBCASE("usage error: missing file") {
    CHECK(run_cli("solve /tmp/beliefd_cli_does_not_exist.json").exit_code == 1);
  }
  SUBCASE("validation error: malformed document") {
    const std::string path = write_temp("bad.json", R"({"states":[0,10]})");
    CHECK(run_cli("validate " + path).exit_code == 2);
  }
  SUBCASE("hypothesis error: transfers out of hypothesis") {
    const std::string path = write_temp(
        "hyp.json",
        R"({"states":[0,1],"joint":[[0.3,0.2],[0.2,0.3]],"bias":{"table":[8,9.5]}})");
    CHECK(run_cli("transfers " + path).exit_code == 3);
  }
}

TEST_CASE("relabel flag") {
  const std::string path = write_temp(
      "swap.json",
      R"({"states":[0,10],"joint":[[0.1,0.4],[0.4,0.1]],"bias":{"table":[1,2]}})");
  CHECK(run_cli("validate " + path).exit_code == 2);
  const RunResult r = run_cli("--relabel-signals validate " + path);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["scenario"].contains("signal_permutation"));
  CHECK(j["scenario"]["signal_permutation"][0] == 1);
}

TEST_CASE("oracle check embeds agreement") {
  const std::string path = write_temp("ref.json", kReference);
  const RunResult r = run_cli("--oracle-check --draws 100000 solve " + path);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.contains("oracle_check"));
  CHECK(j["oracle_check"]["agrees"] == true);
}

TEST_CASE("truth-noise subcommand") {
  const std::string path = write_temp(
      "tn.json",
      R"({"rho":0.5,"grid":{"uniform":{"min":0,"max":10,"count":2}},"bias":{"affine":{"intercept":3,"slope":0.3333333333333333}}})");
  const RunResult r = run_cli("truth-noise " + path);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["truthnoise"]["kappa_star"].get<double>() == doctest::Approx(0.5));
  CHECK(j["truthnoise"]["payoff"].get<double>() == doctest::Approx(-19.5555555556));
}

TEST_CASE("reports are bit-stable across runs") {
  const std::string path = write_temp("ref.json", kReference);
  const RunResult a = run_cli("--seed 77 report " + path);
  const RunResult b = run_cli("--seed 77 report " + path);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}
