#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "springer");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = springer::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(SPRINGER_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("enumerate") {
    Result r = run({"enumerate", "--type", "D", "--n", "6", "--k", "3"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j.size() == 6);
    Result a = run({"enumerate", "--type", "A", "--n", "4", "--k", "2"});
    REQUIRE(a.code == 0);
    CHECK(json::parse(a.out).size() == 2);
  }

  TEST_CASE("maffei flag of a fixture") {
    Result r = run({"maffei", "--fixture", fixture("ex-fi.json")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"flag\"") != std::string::npos);
    Result t = run({"maffei", "--fixture", fixture("three-one.json")});
    CHECK(t.code == 0);
  }

  TEST_CASE("decompose") {
    Result r = run({"decompose", "--type", "D", "--n", "4", "--k", "2", "--q", "5"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["total_flags"] == 12);
    CHECK(j["uncovered"] == 0);

    Result c = run({"decompose", "--type", "D", "--n", "4", "--k", "2", "--q", "3", "--csv"});
    REQUIRE(c.code == 0);
    CHECK(c.out == "diagram,count\n\"D m=2 cups=1: 1-2\",4\n\"D m=2 cups=1: 1-2*\",4\n");
  }

  TEST_CASE("output is deterministic") {
    std::vector<std::string> args = {"decompose", "--type", "A", "--n", "5", "--k", "2", "--q", "2", "--threads", "4"};
    CHECK(run(args).out == run(args).out);
    std::vector<std::string> cq = {"check-quiver", "--fixture", fixture("ex-fi.json"), "--seed", "7"};
    CHECK(run(cq).out == run(cq).out);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"enumerate", "--type", "D", "--n", "6"}).code == 2);
    CHECK(run({"enumerate", "--type", "B", "--n", "6", "--k", "3"}).code == 2);
    CHECK(run({"stats", "--diagram", "A n=3 k=1: 1-x"}).code == 2);
    CHECK(run({"maffei", "--fixture", "/nonexistent.json"}).code == 2);
    Result r = run({"fold", "--diagram", "A n=3 k=1: 1-3"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
  }

  TEST_CASE("failing checks exit with 1") {
    Result built = run({"build-flag", "--diagram", "D m=2 cups=1: 1-2", "--params", "1:0", "--field", "Fp:5"});
    REQUIRE(built.code == 0);
    std::string path = "springer_cli_test_flag.json";
    {
      std::ofstream(path) << built.out;
    }
    CHECK(run({"check-flag", "--flag", path, "--n", "4", "--k", "2", "--diagram", "D m=2 cups=1: 1-2"}).code == 0);
    Result bad = run({"check-flag", "--flag", path, "--n", "4", "--k", "2", "--diagram", "D m=2 cups=1: 1-2*"});
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.out)["ok"] == false);
    std::remove(path.c_str());
  }

  TEST_CASE("count") {
    Result r = run({"count", "--diagram", "D m=3 cups=1: 1, 2-3", "--q", "3"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == j["expected"]);
    CHECK(j["count"] == 4);

    // (5,1) has no F_3-points
    Result e = run({"count", "--diagram", "D m=3 cups=0: 1, 2, 3", "--q", "3"});
    CHECK(e.code == 0);
    CHECK(json::parse(e.out)["expected"] == 0);
  }
}
