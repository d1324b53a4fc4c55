#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cs2d/cli.hpp"
#include "cs2d/errors.hpp"
#include "doctest.h"

using namespace cs2d;
using namespace cs2d::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cs2d");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json report_of(const Run& r) {
  auto j = nlohmann::json::parse(r.out);
  j.erase("timings");
  return j;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "cs2d_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("parse_complex") {
  CHECK(parse_complex("0,0.8660254038") == Complex{0.0, 0.8660254038});
  CHECK(parse_complex("-1.5e-3,2") == Complex{-1.5e-3, 2.0});
  CHECK_THROWS_AS(parse_complex("1.0"), ValidationError);
  CHECK_THROWS_AS(parse_complex("1,2,3"), ValidationError);
  CHECK_THROWS_AS(parse_complex("nan,0"), ValidationError);
  CHECK_THROWS_AS(parse_complex("1,inf"), ValidationError);
  CHECK_THROWS_AS(parse_complex("1x,0"), ValidationError);
}

TEST_CASE("parse_grid") {
  const auto g = parse_grid("-3:3:7,-1:2:4");
  CHECK(g.x_min == -3.0);
  CHECK(g.nx == 7);
  CHECK(g.y_max == 2.0);
  CHECK(g.ny == 4);
  CHECK_THROWS_AS(parse_grid("3:-3:7,-1:2:4"), ValidationError);
  CHECK_THROWS_AS(parse_grid("-3:3:1,-1:2:4"), ValidationError);
  CHECK_THROWS_AS(parse_grid("-3:3,-1:2:4"), ValidationError);
}

TEST_CASE("usage errors exit 1") {
  CHECK(invoke({"variances", "--bogus", "1"}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"variances", "--alpha", "1;0"}).code == 1);
  CHECK(invoke({"variances", "--p", "2", "--q", "4", "--nu", "3"}).code == 1);
  CHECK(invoke({"su2-density", "--grid", "1:-1:5,0:1:5"}).code == 1);
  CHECK(invoke({"figure", "--name", "fig9-left"}).code == 1);
  CHECK(invoke({"verify-identity", "--kind", "nonsense"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("verify-identity su2 nu=0") {
  const auto r = invoke({"verify-identity", "--kind", "su2", "--nu", "0"});
  REQUIRE(r.code == 0);
  const auto j = report_of(r);
  CHECK(j.at("status") == "ok");
  CHECK(j.at("result").at("max_abs_deviation").get<double>() <= 1e-14);
  CHECK(j.at("result").at("passed").get<bool>());
}

TEST_CASE("contract failure exits 2") {
  const auto r = invoke({"verify-identity", "--kind", "unweighted", "--n-max", "2", "--m-max", "2",
                         "--tolerance", "1e-30"});
  CHECK(r.code == 2);
  CHECK(report_of(r).at("status") == "contract-failure");
}

TEST_CASE("property commands agree with their oracles") {
  const auto v = invoke({"variances", "--nu", "40", "--alpha", "0.8660254037844386,0", "--beta", "0.5,0"});
  REQUIRE(v.code == 0);
  const auto vj = report_of(v).at("result");
  CHECK(std::abs(vj.at("closed_form").at("var_x").get<double>() - 30.5) <= 1e-10);

  const auto e = invoke({"energy", "--nu", "40", "--p", "2", "--alpha", "0.8660254037844386,0",
                         "--beta", "0.5,0"});
  REQUIRE(e.code == 0);
  CHECK(std::abs(report_of(e).at("result").at("closed_form").get<double>() - 71.0) <= 1e-10);

  const auto o = invoke({"overlap", "--state", "schrodinger", "--psi", "1,0.5", "--bra-psi", "0.8,0.2",
                         "--alpha", "0,0.8660254037844386", "--beta", "0.5,0"});
  CHECK(o.code == 0);
  const auto c = invoke({"coefficients", "--nu", "2", "--alpha", "0.6,0", "--beta", "0,0.8"});
  REQUIRE(c.code == 0);
  CHECK(std::abs(report_of(c).at("result").at("captured_norm").get<double>() - 1.0) <= 1e-14);
}

TEST_CASE("config file and flags give the same report") {
  const auto path = scratch("config.json");
  {
    std::ofstream os(path);
    os << R"({"command": "variances", "nu": 12, "p": 3, "q": 2,
             "alpha": "0.6,0.1", "beta": "0.2,-0.7681145747868608"})";
  }
  const auto from_file = invoke({"--config", path.string()});
  const auto from_flags = invoke({"variances", "--nu", "12", "--p", "3", "--q", "2", "--alpha", "0.6,0.1",
                                  "--beta", "0.2,-0.7681145747868608"});
  REQUIRE(from_file.code == 0);
  REQUIRE(from_flags.code == 0);
  CHECK(report_of(from_file) == report_of(from_flags));

  // Flags override file values.
  const auto overridden = invoke({"--config", path.string(), "--nu", "3"});
  CHECK(report_of(overridden).at("parameters").at("nu").get<int>() == 3);

  std::ofstream(scratch("bad.json")) << R"({"command": "variances", "colour": 3})";
  CHECK(invoke({"--config", scratch("bad.json").string()}).code == 1);
}

TEST_CASE("figure presets are byte-reproducible") {
  const auto a = scratch("fig5a.csv");
  const auto b = scratch("fig5b.csv");
  const auto ra = invoke({"figure", "--name", "fig5-left", "--out", a.string()});
  const auto rb = invoke({"figure", "--name", "fig5-left", "--out", b.string(), "--threads", "4"});
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  const auto j = report_of(ra).at("result");
  CHECK(std::abs(j.at("captured_norm").get<double>() - j.at("poisson_partial_sum").get<double>()) <= 1e-12);
  CHECK(std::abs(j.at("captured_norm").get<double>() - 7.774404047872000993574e-7) <= 1e-12);
  CHECK(fs::exists(a.string() + ".json"));

  const auto p1 = scratch("fig1.pgm");
  const auto p2 = scratch("fig1b.pgm");
  REQUIRE(invoke({"figure", "--name", "fig1-left", "--format", "pgm", "--out", p1.string()}).code == 0);
  REQUIRE(invoke({"figure", "--name", "fig1-left", "--format", "pgm", "--out", p2.string()}).code == 0);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1).rfind("P5\n201 201\n65535\n", 0) == 0);
}

TEST_CASE("json density output") {
  const auto p = scratch("vac.json");
  const auto r = invoke({"su2-density", "--nu", "0", "--grid", "-4:4:9,-4:4:9", "--format", "json",
                         "--out", p.string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(p));
  CHECK(j.at("values").size() == 9);
}
