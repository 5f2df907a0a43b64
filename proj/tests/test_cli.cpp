#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PROSPECT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  REQUIRE(f.good());
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("prox-eval: huber gate case returns the apex") {
  RunResult r = run_cli("prox-eval --kind huber --rho 1 --gamma 1 --eta -1 --y 0.5");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.output);
  CHECK(out["eta"] == 0.0);
  CHECK(out["y"][0] == 0.0);
  CHECK(out["input"]["kind"] == "huber");
}

TEST_CASE("prox-eval: quadratic two-dimensional instance") {
  RunResult r =
      run_cli("prox-eval --kind quadratic --alpha 2 --gamma 1 --eta 0 --y 2,0");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.output);
  CHECK(double(out["eta"]) == doctest::Approx(0.69572).epsilon(5e-4));
  CHECK(double(out["y"][0]) > 0.0);
  CHECK(double(out["y"][1]) == 0.0);
}

TEST_CASE("prox-eval: vapnik identity region") {
  RunResult r =
      run_cli("prox-eval --kind vapnik --epsilon 0.5 --gamma 1 --eta 1 --y 0.3");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.output);
  CHECK(out["eta"] == 1.0);
  CHECK(out["y"][0] == 0.3);
}

TEST_CASE("prox-eval: unknown kind exits 2") {
  RunResult r = run_cli("prox-eval --kind nosuch --eta 1 --y 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("unknown kind") != std::string::npos);
}

TEST_CASE("trex: q = 1 is rejected with the Sqrt-Lasso message") {
  RunResult r = run_cli("trex --n 10 --p 3 --q 1 --out /tmp/cli_q1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("Sqrt-Lasso") != std::string::npos);
}

TEST_CASE("trex: malformed CSV reports the line number") {
  write_file("/tmp/cli_bad_x.csv", "1,2\n3,oops\n");
  write_file("/tmp/cli_z.csv", "1\n2\n");
  RunResult r =
      run_cli("trex --x-csv /tmp/cli_bad_x.csv --z-csv /tmp/cli_z.csv --out /tmp/cli_bad");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("malformed CSV at line 2") != std::string::npos);
}

TEST_CASE("trex: noiseless identity design recovers the support") {
  std::ostringstream X, z;
  const int n = 8;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) X << (i == j ? "1" : "0") << (j + 1 < n ? "," : "\n");
    z << (i == 0 ? "2\n" : i == 1 ? "-3\n" : "0\n");
  }
  write_file("/tmp/cli_ident_x.csv", X.str());
  write_file("/tmp/cli_ident_z.csv", z.str());
  RunResult r = run_cli(
      "trex --x-csv /tmp/cli_ident_x.csv --z-csv /tmp/cli_ident_z.csv --out /tmp/cli_ident");
  REQUIRE(r.exit_code == 0);

  std::istringstream b(read_file("/tmp/cli_ident_b.csv"));
  std::string line;
  int idx = 0;
  while (std::getline(b, line)) {
    const double v = std::stod(line);
    if (idx <= 1)
      CHECK(std::abs(v) > 0.05);
    else
      CHECK(std::abs(v) <= 0.05);
    ++idx;
  }
  CHECK(idx == n);
}

TEST_CASE("trex: output bytes do not depend on the worker count") {
  RunResult r1 = run_cli("trex --n 12 --p 4 --seed 5 --parallel 1 --out /tmp/cli_w1");
  RunResult r4 = run_cli("trex --n 12 --p 4 --seed 5 --parallel 4 --out /tmp/cli_w4");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r4.exit_code == 0);
  CHECK(read_file("/tmp/cli_w1.json") == read_file("/tmp/cli_w4.json"));
  CHECK(read_file("/tmp/cli_w1_b.csv") == read_file("/tmp/cli_w4_b.csv"));
}

TEST_CASE("trex: config file fills in, flags override, unknown keys reject") {
  write_file("/tmp/cli_cfg.json", R"({"n": 12, "p": 4, "alpha": 0.7, "seed": 5})");
  RunResult r = run_cli("trex --config /tmp/cli_cfg.json --alpha 0.5 --out /tmp/cli_cfg_out");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(read_file("/tmp/cli_cfg_out.json"));
  CHECK(out["config"]["alpha"] == 0.5);  // flag wins
  CHECK(out["config"]["model"]["n"] == 12);

  write_file("/tmp/cli_cfg_bad.json", R"({"n": 12, "p": 4, "bogus": 1})");
  RunResult bad = run_cli("trex --config /tmp/cli_cfg_bad.json --out /tmp/cli_cfg_out2");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("unknown config key: bogus") != std::string::npos);
}

TEST_CASE("phase-transition: writes the CSV schema") {
  RunResult r = run_cli(
      "phase-transition --p 16 --theta-grid 0.4 --q-list 2 --alpha-grid 0.5,1 "
      "--reps 1 --max-iter 2000 --out /tmp/cli_pt.csv --json /tmp/cli_pt.json");
  REQUIRE(r.exit_code == 0);
  std::string csv = read_file("/tmp/cli_pt.csv");
  CHECK(csv.rfind("config_id,seed,metric,value\n", 0) == 0);
  CHECK(csv.find("pt:p=16:theta=0.4:q=2") != std::string::npos);
  CHECK(csv.find("exact_recovery") != std::string::npos);
  json j = json::parse(read_file("/tmp/cli_pt.json"));
  CHECK(j.contains("pt:p=16:theta=0.4:q=2"));
}

TEST_CASE("scaling: writes the CSV schema") {
  RunResult r = run_cli(
      "scaling --dims 6 --n 30 --m 3 --reps 1 --tol 1e-6 --max-iter 2000 "
      "--out /tmp/cli_sc.csv");
  REQUIRE(r.exit_code == 0);
  std::string csv = read_file("/tmp/cli_sc.csv");
  CHECK(csv.find("scaling:p=6") != std::string::npos);
  CHECK(csv.find("time_drsel_s") != std::string::npos);
}

TEST_CASE("prox-selftest: all suites pass at a small draw count") {
  RunResult r = run_cli("prox-selftest --draws 300 --seed 1");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.output);
  CHECK(out.is_array());
  CHECK(out.size() > 0);
  for (const auto& suite : out) CHECK(suite["pass"] == true);
}
