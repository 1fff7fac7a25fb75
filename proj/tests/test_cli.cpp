// End-to-end checks of the command-line front end: exit codes, outputs on
// disk, and the config-echo reproducibility contract.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#ifndef NLWLAB_CLI_PATH
#define NLWLAB_CLI_PATH "nlwlab"
#endif

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(NLWLAB_CLI_PATH) + " " + args + " > cli_stdout.txt 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exponents subcommand prints the pack and exits 0") {
  CHECK(run_cli("exponents --n 3 --p 2 --s 1.75 --out -") == 0);
  auto out = slurp("cli_stdout.txt");
  CHECK(out.find("\"delta\": 0.125") != std::string::npos);
  CHECK(out.find("\"delta1\": 0.0") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("exponents --no-such-flag 1") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("") == 2);
}

TEST_CASE("--help lists flags with defaults") {
  CHECK(run_cli("lifespan --help") == 0);
  auto out = slurp("cli_stdout.txt");
  CHECK(out.find("--lambda") != std::string::npos);
  CHECK(out.find("default") != std::string::npos);
}

TEST_CASE("weight-check writes outputs and echoes its config") {
  std::filesystem::remove_all("cli_wc");
  CHECK(run_cli("weight-check --kind power --a -0.5 --n 3 --centers 6 --radii 6 "
                "--refinements 2 --out cli_wc") == 0);
  CHECK(std::filesystem::exists("cli_wc/config-echo.json"));
  CHECK(std::filesystem::exists("cli_wc/report.json"));
  auto rep = slurp("cli_wc/report.json");
  CHECK(rep.find("bounded") != std::string::npos);

  // rerunning from the echoed config reproduces byte-identical outputs
  auto echo1 = slurp("cli_wc/config-echo.json");
  auto report1 = slurp("cli_wc/report.json");
  std::filesystem::remove_all("cli_wc2");
  CHECK(run_cli("weight-check --config cli_wc/config-echo.json --out cli_wc2") == 0);
  CHECK(slurp("cli_wc2/report.json") == report1);
  CHECK(slurp("cli_wc2/config-echo.json") == echo1);
  std::filesystem::remove_all("cli_wc");
  std::filesystem::remove_all("cli_wc2");
}

TEST_CASE("lifespan ODE case through the CLI") {
  std::filesystem::remove_all("cli_life");
  CHECK(run_cli("lifespan --n 3 --p 2 --profile constant --lambda 1 --dr 0.01 "
                "--refinements 1 --out cli_life") == 0);
  auto out = slurp("cli_stdout.txt");
  // T within [0.98, 1.02]
  auto pos = out.find("\"T_high\":");
  REQUIRE(pos != std::string::npos);
  double T = std::stod(out.substr(pos + 9));
  CHECK(T > 0.98);
  CHECK(T < 1.02);
  std::filesystem::remove_all("cli_life");
}

TEST_CASE("failing experiment exits 1") {
  std::filesystem::remove_all("cli_fail");
  // an impossible spread limit forces a failed pass criterion
  CHECK(run_cli("ineq-kss --T 1 4 --dr 0.12 --spread-limit 0.00001 --out cli_fail") == 1);
  std::filesystem::remove_all("cli_fail");
}

TEST_CASE("report subcommand aggregates results") {
  std::filesystem::remove_all("cli_rep");
  CHECK(run_cli("exponents --out cli_rep/a") == 0);
  CHECK(run_cli("weight-check --kind constant --centers 4 --radii 4 --refinements 2 "
                "--out cli_rep/b") == 0);
  CHECK(run_cli("report --in cli_rep --out cli_rep/summary") == 0);
  auto out = slurp("cli_stdout.txt");
  CHECK(out.find("\"found\": 2") != std::string::npos);
  CHECK(std::filesystem::exists("cli_rep/summary/summary.csv"));
  std::filesystem::remove_all("cli_rep");
}

TEST_CASE("ensemble runs are byte-identical across thread counts") {
  std::filesystem::remove_all("cli_det1");
  std::filesystem::remove_all("cli_det2");
  std::string base = "ineq-trace --s 0.75 --size 16 --N 256 --R 40 ";
  CHECK(run_cli(base + "--jobs 1 --out cli_det1") == 0);
  CHECK(run_cli(base + "--jobs 2 --out cli_det2") == 0);
  auto strip_jobs = [](std::string s) {
    auto p = s.find("\"jobs\"");
    if (p != std::string::npos) {
      auto e = s.find('\n', p);
      s.erase(p, e - p + 1);
    }
    return s;
  };
  CHECK(strip_jobs(slurp("cli_det1/report.json")) == strip_jobs(slurp("cli_det2/report.json")));
  CHECK(slurp("cli_det1/summary.csv") == slurp("cli_det2/summary.csv"));
  std::filesystem::remove_all("cli_det1");
  std::filesystem::remove_all("cli_det2");
}
