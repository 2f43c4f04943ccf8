#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

const std::string kBin = HBL_CLI_BIN;
const std::string kCfg = HBL_CONFIG_DIR;

int run(const std::string& args) {
  const int rc = std::system((kBin + " " + args + " > cli_stdout.txt 2> cli_stderr.txt").c_str());
  if (rc == -1) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("polytope command emits vertices and the exact optimum") {
  REQUIRE(run("polytope -c " + kCfg + "/young.json -o cli_poly.json") == 0);
  const json r = json::parse(slurp("cli_poly.json"));
  CHECK(r["vertices"].size() == 3);
  CHECK(r["primal"]["value"] == "1");
  CHECK(r["dual"]["value"] == "1");
  CHECK(r["subspaces"].size() == 5);
  CHECK(r.contains("config_hash"));
  std::remove("cli_poly.json");
}

TEST_CASE("malformed configs exit with the input-error code") {
  spit("cli_bad.json", "{\"d\": 2, \"maps\": \"nope\"}");
  CHECK(run("polytope -c cli_bad.json -o cli_out.json") == 1);
  CHECK(run("polytope -c cli_missing_file.json -o cli_out.json") == 1);
  // surjectivity failure is still an input error
  spit("cli_rank.json", "{\"d\": 2, \"maps\": [[[0, 0]]], \"m\": [1]}");
  CHECK(run("polytope -c cli_rank.json -o cli_out.json") == 1);
  std::remove("cli_bad.json");
  std::remove("cli_rank.json");
}

TEST_CASE("empty polytopes exit with the infeasible code") {
  spit("cli_empty.json", "{\"d\": 2, \"maps\": [[[1, 0]]], \"m\": [1]}");
  CHECK(run("polytope -c cli_empty.json -o cli_out.json") == 2);
  std::remove("cli_empty.json");
}

TEST_CASE("certify emits the box data and normalization") {
  REQUIRE(run("certify -c " + kCfg + "/young.json -o cli_cert.json") == 0);
  const json r = json::parse(slurp("cli_cert.json"));
  CHECK(r["primal_value"] == "1");
  CHECK(r["dual_value"] == "1");
  CHECK(r["trace_length"] == 1);
  CHECK(r["box"]["edges"].size() == 2);
  CHECK(r["log_volume_minus_primal"].get<double>() == doctest::Approx(0.0));
  const double e = std::exp(1.0);
  CHECK(r["normalization"].get<double>() == doctest::Approx(e / (1 + e)));
  CHECK(r["images"].size() == 3);
  for (const auto& im : r["images"]) CHECK(im["margin"].get<double>() >= -1e-9);
  std::remove("cli_cert.json");
}

TEST_CASE("certify sweeps write one csv row per scale step") {
  REQUIRE(run("certify -c " + kCfg + "/young.json --sweep k=0..12 -o cli_sweep.csv") == 0);
  const std::string csv = slurp("cli_sweep.csv");
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 14);  // header + 13 rows
  CHECK(csv.find("log_volume_minus_primal") != std::string::npos);
  // the exponent identity holds on every row: column 6 is all zeros
  std::istringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  while (std::getline(ss, line)) {
    std::istringstream ls(line);
    std::string field;
    for (int i = 0; i < 7; ++i) std::getline(ls, field, ',');
    CHECK(std::abs(std::stod(field)) <= 1e-9);
  }
  std::remove("cli_sweep.csv");
}

TEST_CASE("check-b separates conforming and violating size functions") {
  CHECK(run("check-b -c " + kCfg + "/young.json -b " + kCfg +
            "/b_young_monomial.json --samples 2000 -o cli_chk.json") == 0);
  const json ok = json::parse(slurp("cli_chk.json"));
  CHECK(ok["all_pass"] == true);
  for (const auto& c : ok["checks"]) CHECK(c["pass"] == true);

  CHECK(run("check-b -c " + kCfg + "/young.json -b " + kCfg +
            "/b_out_of_polytope.json --samples 2000 -o cli_chk2.json") == 4);
  const json bad = json::parse(slurp("cli_chk2.json"));
  CHECK(bad["all_pass"] == false);
  std::remove("cli_chk.json");
  std::remove("cli_chk2.json");
}

TEST_CASE("check-b validates the requested check names") {
  CHECK(run("check-b -c " + kCfg + "/young.json -b " + kCfg +
            "/b_young_monomial.json --checks bogus -o cli_chk3.json") == 1);
  // rho checks demand an outer combination node
  CHECK(run("check-b -c " + kCfg + "/young.json -b " + kCfg +
            "/b_young_monomial.json --checks rho -o cli_chk3.json") == 1);
  std::remove("cli_chk3.json");
}

TEST_CASE("extremize reports a baseline, an ascent and written profiles") {
  REQUIRE(run("extremize -b " + kCfg + "/b_young_monomial.json --masses 1,1,1 "
              "--grid L=12,N=256 --sigma-grid 0.8:1.2:3 --iters 3 "
              "--functions cli_ext -o cli_ext.json") == 0);
  const json r = json::parse(slurp("cli_ext.json"));
  CHECK(r["baseline"]["value"].get<double>() > 0.0);
  CHECK(r["baseline"]["sigma"].size() == 3);
  CHECK(r["ascent"]["final_value"].get<double>() >=
        r["baseline"]["value"].get<double>() * (1 - 1e-12));
  CHECK(r["ascent"]["values"].size() >= 1);
  CHECK(r.contains("flatness"));
  CHECK(r.contains("config_hash"));
  CHECK(r.contains("seed"));
  for (const char* suffix : {"_f.csv", "_g.csv", "_h.csv"}) {
    const std::string p = std::string("cli_ext") + suffix;
    CHECK(!slurp(p).empty());
    std::remove(p.c_str());
  }
  std::remove("cli_ext.json");
}

TEST_CASE("extremize rejects malformed grids and masses") {
  CHECK(run("extremize -b " + kCfg + "/b_young_monomial.json --masses 1,1 "
            "--grid L=12,N=256 -o cli_ext2.json") == 1);
  CHECK(run("extremize -b " + kCfg + "/b_young_monomial.json --masses 1,1,1 "
            "--grid Q=12,N=256 -o cli_ext2.json") == 1);
  CHECK(run("extremize -b " + kCfg + "/b_young_monomial.json --masses 1,1,1 "
            "--grid L=12,N=256 --sigma-grid 9:12:2 -o cli_ext2.json") == 5);
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(run("bogus-subcommand") != 0);
  CHECK(run("polytope") != 0);  // missing -c
}
