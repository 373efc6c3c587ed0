// Contract tests for the command-line front end: these spawn the installed
// binary (compile definition TAULAB_CLI_PATH) and assert on its observable
// behavior only -- exit codes, CSV bytes, manifests.

#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

using json = nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, bool keep_stderr = false) {
  const std::string cmd = std::string(TAULAB_CLI_PATH) + " " + args +
                          (keep_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  std::istringstream hdr(line);
  std::string cell;
  while (std::getline(hdr, cell, ',')) csv.columns.push_back(cell);
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) {
      std::size_t pos = 0;
      const double v = std::stod(cell, &pos);
      REQUIRE(pos == cell.size());
      REQUIRE(std::isfinite(v));
      vals.push_back(v);
    }
    REQUIRE(vals.size() == csv.columns.size());
    csv.rows.push_back(std::move(vals));
  }
  return csv;
}

}  // namespace

TEST_CASE("exp subcommand reproduces the rank-one closed form") {
  const auto r = run_cli("exp --lambda 1 --xi 1 --grid 0:3:0.1");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.columns == std::vector<std::string>{"t", "tau", "sigma"});
  REQUIRE(csv.rows.size() == 31);
  CHECK(csv.rows[0][0] == 0.0);
  CHECK(csv.rows[0][1] == doctest::Approx(0.5).epsilon(1e-14));
  for (const auto& row : csv.rows) {
    const double t = row[0];
    const double tau = 1.0 - std::exp(-2.0 * t) / 2.0;
    CHECK(row[1] == doctest::Approx(tau).epsilon(1e-12));
    CHECK(row[2] == doctest::Approx(std::exp(-2.0 * t) / tau).epsilon(1e-10));
  }
}

TEST_CASE("empty symbol yields the constant curve") {
  const auto r = run_cli("exp --grid 0:1:0.25");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 5);
  for (const auto& row : csv.rows) {
    CHECK(row[1] == 1.0);
    CHECK(row[2] == 0.0);
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("exp --lambda 1,1 --xi 1,1 --grid 0:1:0.5").exit_code == 2);
  CHECK(run_cli("exp --lambda 1 --xi 1,2 --grid 0:1:0.5").exit_code == 2);
  CHECK(run_cli("exp --lambda 1 --xi 1 --grid 1:0:0.5").exit_code == 2);
  CHECK(run_cli("exp --lambda 1 --xi 1 --grid 0:1:0").exit_code == 2);
  CHECK(run_cli("exp --lambda 1 --xi 1 --grid nonsense").exit_code == 2);
  CHECK(run_cli("exp --lambda -1 --xi 1 --grid 0:1:0.5").exit_code == 2);
  CHECK(run_cli("lame --k2 1.5").exit_code == 2);
  CHECK(run_cli("check --suite nosuch").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("lame symbol validation errors are usage errors") {
  // alpha = 0.5 K gives a growing symbol; t0 on the real axis hits the poles
  CHECK(run_cli("lame --k2 0.36 --alpha-re 0.5 --grid 0:1:0.5").exit_code == 2);
  CHECK(run_cli("lame --k2 0.36 --t0-im 0 --grid 0:1:0.5").exit_code == 2);
}

TEST_CASE("reruns are byte-identical") {
  const std::string cmd =
      "lame --k2 0.5 --grid 0:1:0.5 --out cli_rerun.csv";
  REQUIRE(run_cli(cmd).exit_code == 0);
  const std::string first = slurp("cli_rerun.csv");
  REQUIRE(run_cli(cmd).exit_code == 0);
  CHECK(first == slurp("cli_rerun.csv"));
  CHECK(!first.empty());
}

TEST_CASE("lame manifest records invariants and the chosen truncation") {
  const auto r = run_cli(
      "lame --k2 0.5 --grid 0:1:0.5 --truncation 8 --out cli_lame.csv");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(slurp("cli_lame.csv"));
  CHECK(csv.columns == std::vector<std::string>{"t", "tau_re", "tau_im",
                                                "sigma_re", "sigma_im"});
  const json m = json::parse(slurp("cli_lame.json"));
  CHECK(m.at("e1").get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.at("e2").get<double>() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m.at("e3").get<double>() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(m.at("beta_re").get<double>() > 0.0);
  CHECK(m.at("truncation_requested").get<int>() == 8);
  CHECK(m.at("truncation_used").get<int>() >= 8);
  CHECK(m.at("columns").size() == 5);
  CHECK(m.at("rows").get<int>() == static_cast<int>(csv.rows.size()));
  CHECK(m.at("version").get<std::string>().rfind("taulab", 0) == 0);
}

TEST_CASE("cauchy growth table approaches the sinh limit") {
  const auto r = run_cli("cauchy --beta-re 1 --K 1 --N 4,8,16,32 --out cli_cauchy.csv");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(slurp("cli_cauchy.csv"));
  REQUIRE(csv.rows.size() == 4);
  const json m = json::parse(slurp("cli_cauchy.json"));
  const double limit = m.at("limit").get<double>();
  CHECK(limit == doctest::Approx(1.0 / std::sinh(1.0)).epsilon(1e-12));
  CHECK(m.at("monotone").get<bool>());
  for (std::size_t i = 1; i < csv.rows.size(); ++i)
    CHECK(csv.rows[i][2] < csv.rows[i - 1][2]);  // gaps shrink
  CHECK(csv.rows.back()[1] == doctest::Approx(limit).epsilon(0.02));
}

TEST_CASE("config file feeds defaults and explicit flags win") {
  {
    std::ofstream cfg("cli_cfg.json");
    cfg << R"({"lambda": "2", "xi": "0.5", "grid": "0:1:0.5"})";
  }
  const auto from_cfg = run_cli("exp --config cli_cfg.json");
  REQUIRE(from_cfg.exit_code == 0);
  const auto direct = run_cli("exp --lambda 2 --xi 0.5 --grid 0:1:0.5");
  REQUIRE(direct.exit_code == 0);
  CHECK(from_cfg.out == direct.out);

  const auto overridden = run_cli("exp --config cli_cfg.json --xi 1");
  const auto direct2 = run_cli("exp --lambda 2 --xi 1 --grid 0:1:0.5");
  REQUIRE(overridden.exit_code == 0);
  CHECK(overridden.out == direct2.out);
  CHECK(overridden.out != from_cfg.out);
}

TEST_CASE("check subcommand emits a machine-readable verdict") {
  const auto r = run_cli("check --suite cauchy --seed 7");
  REQUIRE(r.exit_code == 0);
  const json v = json::parse(r.out);
  CHECK(v.at("suite").get<std::string>() == "cauchy");
  CHECK(v.at("seed").get<int>() == 7);
  CHECK(v.at("passed").get<bool>());
  REQUIRE(!v.at("checks").empty());
  for (const auto& c : v.at("checks")) {
    CHECK(c.at("passed").get<bool>());
    CHECK(c.at("worst").get<double>() <= c.at("tolerance").get<double>());
  }

  // deterministic across reruns with the same seed (timings excluded)
  const auto r2 = run_cli("check --suite cauchy --seed 7");
  const json v2 = json::parse(r2.out);
  REQUIRE(v.at("checks").size() == v2.at("checks").size());
  for (std::size_t i = 0; i < v.at("checks").size(); ++i) {
    const auto &a = v.at("checks")[i], &b = v2.at("checks")[i];
    CHECK(a.at("name") == b.at("name"));
    CHECK(a.at("worst").get<double>() == b.at("worst").get<double>());
    CHECK(a.at("detail") == b.at("detail"));
  }

  // --tol floors every gate, and is recorded
  const auto loose = run_cli("check --suite cauchy --seed 7 --tol 0.5");
  const json vl = json::parse(loose.out);
  CHECK(vl.at("tol_floor").get<double>() == 0.5);
  for (const auto& c : vl.at("checks"))
    CHECK(c.at("tolerance").get<double>() >= 0.5);
}

TEST_CASE("module --check gates the exit code") {
  const auto r = run_cli("exp --lambda 1 --xi 1 --grid 0:1:0.5 --check");
  CHECK(r.exit_code == 0);
}

TEST_CASE("help and version exit cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("exp --help").exit_code == 0);
  const auto v = run_cli("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.out.rfind("taulab", 0) == 0);
}
