#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef PWAFIT_BIN
#error "PWAFIT_BIN must point at the pwafit executable"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string cmd =
      std::string(PWAFIT_BIN) + " " + args + " > " + out_path + " 2> cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

json report_of(const RunResult& r) { return json::parse(r.out); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen then fit recovers the planted model at zero cost") {
  auto gen = run("gen --num 24 --dim 2 --modes 2 --seed 5 --out cli_data.csv "
                 "--model-out cli_planted.json");
  REQUIRE(gen.exit_code == 0);
  CHECK(report_of(gen)["outputs"]["data"] == "cli_data.csv");

  auto fit = run("fit --data cli_data.csv --modes 2 --out cli_model.json");
  REQUIRE(fit.exit_code == 0);
  const json rep = report_of(fit);
  CHECK(rep["best_cost"].get<double>() <= 1e-9);
  CHECK(rep["certified"].get<bool>());
  CHECK(slurp("cli_model.json").find("\"classifier\"") != std::string::npos);
  CHECK(slurp("cli_model.labeled.csv").find("label") != std::string::npos);
}

TEST_CASE("gen is reproducible byte for byte") {
  REQUIRE(run("gen --num 15 --dim 1 --seed 42 --out cli_a.csv").exit_code == 0);
  REQUIRE(run("gen --num 15 --dim 1 --seed 42 --out cli_b.csv").exit_code == 0);
  CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
  REQUIRE(run("gen --num 15 --dim 1 --seed 43 --out cli_c.csv").exit_code == 0);
  CHECK(slurp("cli_a.csv") != slurp("cli_c.csv"));
}

TEST_CASE("parallel width does not change the fitted model") {
  REQUIRE(run("gen --num 20 --dim 2 --seed 11 --out cli_par.csv").exit_code == 0);
  REQUIRE(run("fit --data cli_par.csv --parallel 1 --out cli_m1.json").exit_code == 0);
  REQUIRE(run("fit --data cli_par.csv --parallel 8 --out cli_m8.json").exit_code == 0);
  CHECK(slurp("cli_m1.json") == slurp("cli_m8.json"));
}

TEST_CASE("mode count outside the solvable range exits with 3") {
  REQUIRE(run("gen --num 8 --dim 2 --seed 3 --out cli_small.csv").exit_code == 0);
  CHECK(run("fit --data cli_small.csv --modes 5 --out cli_x.json").exit_code == 3);
  CHECK(run("fit --data cli_small.csv --modes 1 --out cli_x.json").exit_code == 3);
}

TEST_CASE("malformed input exits with 2") {
  {
    std::ofstream bad("cli_bad.csv");
    bad << "x1,y\n1,huh\n";
  }
  CHECK(run("fit --data cli_bad.csv --out cli_x.json").exit_code == 2);
  CHECK(run("fit --data cli_missing.csv --out cli_x.json").exit_code == 2);
  CHECK(run("fit").exit_code == 2);  // missing required option
}

TEST_CASE("enumerate reports counts against the growth bound") {
  REQUIRE(run("gen --num 10 --dim 2 --seed 9 --out cli_enum.csv").exit_code == 0);
  auto r = run("enumerate --data cli_enum.csv --modes 2 --out cli_labelings.txt");
  REQUIRE(r.exit_code == 0);
  const json rep = report_of(r);
  CHECK(rep["candidates"].get<std::uint64_t>() == 360);
  CHECK(rep["distinct"].get<std::uint64_t>() <= 360);
  CHECK(rep["growth_bound"].get<double>() == 360.0);
  CHECK(rep["within_bound"].get<bool>());

  // Labelings dump uses the {-1, +1} convention for two modes.
  std::ifstream in("cli_labelings.txt");
  std::string first;
  std::getline(in, first);
  CHECK(first.find("-1") != std::string::npos);

  auto raw = run("enumerate --data cli_enum.csv --no-dedup --out cli_raw.txt");
  REQUIRE(raw.exit_code == 0);
  CHECK(report_of(raw)["distinct"].get<std::uint64_t>() == 360);
}

TEST_CASE("enumerate rejects undersized point sets with exit 2") {
  {
    std::ofstream tiny("cli_tiny.csv");
    tiny << "x1,x2,y\n1,2,3\n2,3,4\n";
  }
  CHECK(run("enumerate --data cli_tiny.csv --out cli_x.txt").exit_code == 2);
}

TEST_CASE("reduce answers the worked instances") {
  auto yes = run("reduce --partition 1,2,3 --out cli_gadget.csv");
  REQUIRE(yes.exit_code == 0);
  const json yrep = report_of(yes);
  CHECK(yrep["verdict"] == "yes");
  CHECK(!yrep["witness_values"].empty());
  CHECK(slurp("cli_gadget.csv").rfind("x1,x2,x3,y", 0) == 0);

  auto no = run("reduce --partition 1,1,1 --out cli_gadget2.csv");
  REQUIRE(no.exit_code == 0);
  CHECK(report_of(no)["verdict"] == "no");

  CHECK(run("reduce --partition 1,-2,3").exit_code == 2);
  CHECK(run("reduce --partition foo").exit_code == 2);
  CHECK(run("reduce --partition 1,1,1,1,1,1,1,1,1,1,1").exit_code == 3);
}

TEST_CASE("oracle honors its guard and agrees with fit") {
  REQUIRE(run("gen --num 10 --dim 1 --seed 21 --out cli_oracle.csv").exit_code == 0);
  auto fit = run("fit --data cli_oracle.csv --out cli_om.json");
  auto ora = run("oracle --data cli_oracle.csv --modes 2");
  REQUIRE(fit.exit_code == 0);
  REQUIRE(ora.exit_code == 0);
  const double a = report_of(fit)["best_cost"].get<double>();
  const double b = report_of(ora)["best_cost"].get<double>();
  CHECK(std::abs(a - b) <= 1e-9);
  CHECK(report_of(ora)["labelings_enumerated"].get<std::uint64_t>() == 1024);

  REQUIRE(run("gen --num 30 --dim 1 --seed 22 --out cli_big.csv").exit_code == 0);
  CHECK(run("oracle --data cli_big.csv --modes 2").exit_code == 3);
}

TEST_CASE("quiet suppresses the stdout report") {
  REQUIRE(run("gen --num 12 --dim 1 --seed 2 --out cli_q.csv --quiet").out.empty());
}

TEST_CASE("bench reports a scaling exponent") {
  auto r = run("bench --dim 1 --sizes 20,40 --reps 2 --seed 1");
  REQUIRE(r.exit_code == 0);
  const json rep = report_of(r);
  CHECK(rep["timings"].size() == 2);
  CHECK(std::isfinite(rep["slope"].get<double>()));
}
