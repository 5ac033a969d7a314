#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef ORLAT_CLI_PATH
#error "ORLAT_CLI_PATH must point at the CLI binary"
#endif

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(ORLAT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv out;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      out.comments.push_back(line);
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      out.header = cells;
      header_seen = true;
    } else {
      out.rows.push_back(cells);
    }
  }
  return out;
}

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/orlat_test_") + name;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("green --x 0,0") == 2);                      // no target given
  CHECK(run("--variant bogus phi") == 2);                // rejected flag value
  CHECK(run("nonsense") == 2);                           // unknown subcommand
  CHECK(run("green --x 0,0 --y nonsense") == 2);         // malformed vertex
}

TEST_CASE("phi table: header echo, frozen variant columns, enclosure brackets one form") {
  const std::string out = tmp_path("phi.csv");
  REQUIRE(run("--horizon 1024 --out " + out + " phi") == 0);
  const Csv csv = parse_csv(slurp(out));

  REQUIRE(!csv.comments.empty());
  CHECK(csv.comments[0].find("orlat") != std::string::npos);
  bool has_cmd = false, has_seed = false;
  for (const auto& c : csv.comments) {
    if (c.find("command = phi") != std::string::npos) has_cmd = true;
    if (c.find("seed = ") != std::string::npos) has_seed = true;
  }
  CHECK(has_cmd);
  CHECK(has_seed);

  REQUIRE(csv.header == std::vector<std::string>{"t", "phi_paper", "phi_excursion", "oracle_low",
                                                 "oracle_high"});
  REQUIRE(csv.rows.size() == 17);  // t = 0 and k pi/16, k = 1..16

  const auto& first = csv.rows.front();
  CHECK(std::stod(first[1]) == doctest::Approx(1.0));
  CHECK(std::stod(first[2]) == doctest::Approx(1.0));

  const auto& last = csv.rows.back();  // t = pi
  CHECK(std::stod(last[1]) == doctest::Approx(0.5051025722).epsilon(1e-6));
  CHECK(std::stod(last[2]) == doctest::Approx(0.2679491924).epsilon(1e-6));

  int bracketed = 0;
  for (std::size_t i = 1; i < csv.rows.size(); ++i) {
    const double lo = std::stod(csv.rows[i][3]), hi = std::stod(csv.rows[i][4]);
    const double pp = std::stod(csv.rows[i][1]), pe = std::stod(csv.rows[i][2]);
    const bool in_p = pp >= lo && pp <= hi, in_e = pe >= lo && pe <= hi;
    CHECK((in_p || in_e));
    if (in_p != in_e) ++bracketed;
  }
  CHECK(bracketed == 16);  // decisive at every nonzero grid point
}

TEST_CASE("green rectangle: row count equals the area; reload round-trips") {
  const std::string out = tmp_path("green.csv");
  REQUIRE(run("green --x 0,0 --y-rect -1:2,0:1 --route spectral --out " + out) == 0);
  const Csv csv = parse_csv(slurp(out));
  CHECK(csv.rows.size() == 4 * 2);
  for (const auto& row : csv.rows) CHECK(std::stod(row[2]) > 0.0);

  const std::string out2 = tmp_path("green2.csv");
  REQUIRE(run("green --x 0,0 --y-rect -1:2,0:1 --route spectral --out " + out2) == 0);
  CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("green routes agree on a near pair") {
  const std::string so = tmp_path("gs.csv"), oo = tmp_path("go.csv"), mo = tmp_path("gm.csv");
  REQUIRE(run("green --x 0,0 --y 1,0 --route spectral --variant excursion --out " + so) == 0);
  REQUIRE(run("--horizon 1500 green --x 0,0 --y 1,0 --route oracle --out " + oo) == 0);
  REQUIRE(run("--horizon 1500 --paths 60000 --seed 5 green --x 0,0 --y 1,0 --route mc --out " +
              mo) == 0);
  const double gs = std::stod(parse_csv(slurp(so)).rows[0][2]);
  const double go = std::stod(parse_csv(slurp(oo)).rows[0][2]);
  const auto mrow = parse_csv(slurp(mo)).rows[0];
  const double gm = std::stod(mrow[2]), gm_err = std::stod(mrow[3]);
  CHECK(gs >= go - 1e-9);          // oracle value is a lower bound
  CHECK(gs - go < 0.05);           // within the truncation tail at this horizon
  CHECK(std::abs(gm - go) <= 4.0 * gm_err);
}

TEST_CASE("json format mirrors the table") {
  const std::string out = tmp_path("green.json");
  REQUIRE(run("green --x 0,0 --y 2,1 --route spectral --format json --out " + out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["artifact"].get<std::string>().find("orlat") == 0);
  CHECK(j["config"]["command"] == "green");
  REQUIRE(j["columns"].size() == 5);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0][0] == 2);
  CHECK(j["rows"][0][1] == 1);
  CHECK(j["rows"][0][2].get<double>() > 0.0);
}

TEST_CASE("martin table: base-point rows are exactly one") {
  const std::string out = tmp_path("martin.csv");
  REQUIRE(run("martin --x-box 0:1,0:0 --seq lambda=0,k=16..32 --out " + out) == 0);
  const Csv csv = parse_csv(slurp(out));
  REQUIRE(csv.rows.size() == 4);  // two starts, two targets
  for (const auto& row : csv.rows) {
    if (row[0] == "0" && row[1] == "0") CHECK(std::stod(row[5]) == doctest::Approx(1.0));
  }
}

TEST_CASE("verify: kernel suite passes and reports deterministically") {
  const std::string a = tmp_path("verify_a.json"), b = tmp_path("verify_b.json");
  REQUIRE(run("--seed 9 verify --suite kernel --out " + a) == 0);
  REQUIRE(run("--seed 9 verify --suite kernel --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));

  const auto j = nlohmann::json::parse(slurp(a));
  CHECK(j["summary"]["failures"] == 0);
  CHECK(j["checks"].size() >= 5);
}

TEST_CASE("unreachable tolerance exits with the convergence code") {
  CHECK(run("--tol 1e-30 green --x 0,0 --y 1,0 --route spectral --variant excursion") == 3);
}
