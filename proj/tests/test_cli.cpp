#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "besselsum/cli.hpp"

using namespace besselsum;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "besselsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "besselsum_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("expression parser") {
  CHECK(cli::parse_expression("pi/16") == std::numbers::pi / 16);
  CHECK(cli::parse_expression("3*pi/16") == 3 * std::numbers::pi / 16);
  CHECK(cli::parse_expression("-(1+2)*2") == -6.0);
  CHECK(cli::parse_expression(" 2 - -1 ") == 3.0);
  CHECK(cli::parse_expression("1e-3") == 1e-3);
  CHECK(cli::parse_expression("0.19634954") == 0.19634954);
  CHECK(cli::parse_list("0.5, 3/2,pi") == std::vector<double>{0.5, 1.5, std::numbers::pi});
  for (const char* bad : {"", "1+", "(1", "pie", "1 2", "*3", "1/0x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(cli::parse_expression(bad), ParseError);
  }
  CHECK_THROWS_AS(cli::parse_list("1,,2"), ParseError);

  const auto r = cli::parse_range("0.1:2*pi:5");
  CHECK(r.start == 0.1);
  CHECK(r.stop == 2 * std::numbers::pi);
  CHECK(r.count == 5);
  CHECK_THROWS_AS(cli::parse_range("0:1:1"), ParseError);
  CHECK_THROWS_AS(cli::parse_range("1:0:3"), ParseError);
  CHECK_THROWS_AS(cli::parse_range("0:1"), ParseError);
}

TEST_CASE("compute") {
  auto r = run({"compute", "--nu", "0.5,1.5", "--a", "0.19634954,1.0", "--k", "0", "--terms", "1000", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["class"] == "absolute");
  CHECK(j["terms_used"] == 1000);

  r = run({"compute", "--nu", "0.5", "--a", "1.0", "--k", "0", "--tol", "1e-6", "--format", "json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(std::fabs(j["value"].get<double>() - std::sqrt(2 / std::numbers::pi) * std::numbers::pi / 2) <= 1e-6);
  CHECK(j["class"] == "conditional");

  r = run({"compute", "--nu", "0.5,1.5", "--a", "7.0,7.0", "--k", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["rescaled"] == true);
  CHECK(j["A"].get<double>() == doctest::Approx(14 / (2 * std::numbers::pi)));

  r = run({"compute", "--nu", "0.5,1.5", "--a", "pi/16,1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("class = absolute") != std::string::npos);
}

TEST_CASE("compute from a spec file") {
  const auto path = scratch("quad_spec.json");
  {
    std::ofstream f(path);
    f << R"({"k": -1, "factors": [{"nu": -1.5, "a": 0.19634954084936207}, {"nu": -1, "a": 0.19634954084936207},
            {"nu": 0.5, "a": 0.19634954084936207}, {"nu": 0, "a": 0.5}]})";
  }
  auto r = run({"compute", "--spec", path.string(), "--terms", "100", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["class"] == "absolute");
  CHECK(run({"compute", "--spec", path.string(), "--nu", "1"}).code == 1);
  CHECK(run({"compute", "--spec", scratch("missing.json").string()}).code == 3);

  const auto broken = scratch("broken.json");
  std::ofstream(broken) << "{\"k\": 0, \"factors\": [";
  CHECK(run({"compute", "--spec", broken.string()}).code == 1);
}

TEST_CASE("validate") {
  auto r = run({"validate", "--nu", "-3/2,-1,1/2,0", "--a", "pi/16,pi/16,pi/16,0.5", "--k", "-1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["valid"] == true);
  bool ext = false;
  for (const auto& rule : j["triggered_rules"]) ext = ext || rule["id"] == "R1-ext";
  CHECK(ext);

  r = run({"validate", "--nu", "0.5,0.5,0.5", "--a", "1,1,2", "--format", "json"});
  j = json::parse(r.out);
  REQUIRE(j["beat_witness"].is_array());
  CHECK(j["beat_witness"] == json::array({1, 1, -1}));

  r = run({"validate", "--nu", "0.5", "--a", "1,1,2"});
  CHECK(r.code == 1);

  // On the boundary with the strict rule met with equality.
  r = run({"validate", "--nu", "0.5", "--a", "2*pi", "--k", "0"});
  CHECK(r.code == 2);
  CHECK(r.out.find("valid: false") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"compute", "--nu", "0.5+", "--a", "1"}).code == 1);
  CHECK(run({"compute", "--nu", "0.5", "--a", "1", "--k", "0.5"}).code == 1);
  CHECK(run({"compute", "--nu", "0.5", "--a", "-1"}).code == 1);
  CHECK(run({"compute", "--nu", "0.5", "--a", "1", "--terms", "5", "--tol", "1e-3"}).code == 1);
  CHECK(run({"compute", "--nu", "0.5", "--a", "1", "--format", "xml"}).code == 1);

  auto r = run({"compute", "--nu", "0.5", "--a", "1", "--k", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("\"valid\":false") != std::string::npos);
  CHECK(run({"compute", "--nu", "1.5,1.5", "--a", "1,0.7", "--tol", "1e-300", "--max-terms", "100"}).code == 2);

  CHECK(run({"sweep", "--nu", "0.5,1.5", "--a", "1,1", "--range", "0.1:1:3", "--out",
             "/nonexistent-dir/x.csv"}).code == 3);
  CHECK(run({"sweep", "--nu", "0.5,1.5", "--a", "1,1", "--range", "0.1:1:1"}).code == 1);
  CHECK(run({"sweep", "--nu", "0.5,1.5", "--a", "1,1", "--range", "0.1:1:3", "--vary", "5"}).code == 1);
  CHECK(run({"compare", "--nu", "0.5", "--a", "1", "--t-max", "-1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep output is deterministic and round-trips") {
  const std::vector<std::string> args{"sweep", "--nu", "0.5,1.5", "--a", "pi/16,1", "--range", "0.05:6.2:25"};
  const auto csv = scratch("a.csv"), csv2 = scratch("b.csv");
  auto a1 = args, a2 = args;
  a1.insert(a1.end(), {"--out", csv.string()});
  a2.insert(a2.end(), {"--out", csv2.string()});
  REQUIRE(run(a1).code == 0);
  REQUIRE(run(a2).code == 0);
  const auto text = slurp(csv);
  CHECK(text == slurp(csv2));
  CHECK(text.rfind("# meta: ", 0) == 0);
  CHECK(text.find("\nb,sum_value,quad_value,abs_diff,valid,class\n") != std::string::npos);

  const auto table = cli::parse_csv(text);
  REQUIRE(table.rows.size() == 25);
  CHECK(table.vary == 1);
  REQUIRE(table.b_star);
  CHECK(*table.b_star == 2 * std::numbers::pi - std::numbers::pi / 16);
  CHECK(cli::render_csv(table) == text);
  for (std::size_t i = 1; i < table.rows.size(); ++i) CHECK(table.rows[i].b > table.rows[i - 1].b);
  CHECK(table.rows.back().b == 6.2);
  for (const auto& row : table.rows) CHECK(row.abs_diff == std::fabs(row.sum_value - row.quad_value));
  // Past b* every row is invalid for direct summation.
  for (const auto& row : table.rows) CHECK(row.valid == (row.b <= *table.b_star));

  const auto stdout_run = run(args);
  CHECK(stdout_run.out == text);
}

TEST_CASE("sweep formats and edge cases") {
  auto r = run({"sweep", "--nu", "0,1,2", "--a", "3*pi/16,3*pi/16,0.1", "--k", "2", "--range", "0.1:0.4:4",
                "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 4);
  for (const auto& row : j["rows"]) CHECK(row["class"] == "conditional");
  CHECK(j["meta"]["vary"] == 2);

  r = run({"sweep", "--nu", "0.5,1.5", "--a", "1,1", "--range", "0.5:0.5:2"});
  REQUIRE(r.code == 0);
  const auto table = cli::parse_csv(r.out);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].b == 0.5);
  CHECK(table.rows[1].b == 0.5);
}

TEST_CASE("compare") {
  auto r = run({"compare", "--nu", "0.5,1.5", "--a", "pi/16,1", "--terms", "1000", "--t-max", "2000", "--format", "json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["identity_check"] == "PASS");
  CHECK(j["direct_validity"] == "valid");
  CHECK(std::fabs(j["correction_term"].get<double>()) <= 1e-10);
  CHECK(j["leakage"].get<double>() <= 1e-6);

  r = run({"compare", "--nu", "0.5,1.5", "--a", "pi,pi+1e-9", "--terms", "1000", "--t-max", "2000", "--format", "json"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["direct_validity"] == "invalid");
  CHECK(j["rescaled"] == true);
  CHECK(j["identity_check"] == "PASS");
  CHECK(j["correction_term"].is_null());

  r = run({"compare", "--nu", "1,1", "--a", "1,0.5", "--k", "1/2", "--terms", "100000", "--t-max", "20000",
           "--format", "json"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["identity_check"] == "not-applicable");
  CHECK(j["correction_term"].get<double>() != 0.0);

  r = run({"compare", "--nu", "0.5,1.5", "--a", "pi/16,1"});
  CHECK(r.out.find("identity check  = ") != std::string::npos);
}
