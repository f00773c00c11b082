#include <doctest.h>
#include <json.hpp>

#include "gkz/cli.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

namespace {

using nlohmann::json;

const char* kPlanar = R"({"matrix": [[1,0,0],[1,3,0],[1,0,3],[1,1,0],[1,0,2]]})";
const char* kCubic = R"({"matrix": [[1,0],[1,1],[1,3]]})";
const char* kFullCubic = R"({"matrix": [[1,0],[1,1],[1,2],[1,3]], "beta": ["0", "1/2"]})";

gkz::cli::RunResult call(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  return gkz::cli::run(args, in);
}

json report(const gkz::cli::RunResult& r) { return json::parse(r.output); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("saturation report") {
    auto r = call({"saturate", "--mode", "s"}, kPlanar);
    REQUIRE(r.exit_code == 0);
    auto j = report(r);
    std::set<std::vector<long>> added;
    for (const auto& p : j["result"]["added"]) added.insert(p.get<std::vector<long>>());
    CHECK(added == std::set<std::vector<long>>{{1, 2, 0}, {1, 0, 1}, {1, 1, 1}});
    CHECK(j["version"] == gkz::cli::kVersion);
    CHECK(j["input"] == json::parse(kPlanar));
    CHECK(j["command"] == "saturate");
    CHECK(report(call({"saturate", "--mode", "full"}, kPlanar))["result"]["size"] == 10);
  }

  TEST_CASE("multiplicity table") {
    auto j = report(call({"mults"}, kCubic));
    std::vector<std::string> vertex;
    for (const auto& f : j["result"]["faces"])
      if (f["dim"] == 0) vertex.push_back(f["multiplicity"]);
    CHECK(vertex == std::vector<std::string>{"1", "2"});
  }

  TEST_CASE("exit codes") {
    CHECK(call({"faces"}, "{\"matrix\": [[1,0],").exit_code == 2);
    CHECK(call({"faces"}, "[1,2]").exit_code == 2);
    CHECK(call({"faces"}, R"({"matrix": [[1,0],[1]]})").exit_code == 2);
    CHECK(call({"faces"}, R"({"matrix": [[1,0],[0,1],[1,1]]})").exit_code == 2);
    CHECK(call({"frobnicate"}, kCubic).exit_code == 2);
    CHECK(call({"redundant"}, kCubic).exit_code == 2);
    CHECK(call({"redundant", "--col", "9"}, kCubic).exit_code == 2);
    CHECK(call({"saturate", "--mode", "q"}, kCubic).exit_code == 2);
    CHECK(call({"faces"}, kCubic).exit_code == 0);
    CHECK(call({"nonresonant", "--beta", "0,0"}, kCubic).exit_code == 1);
    CHECK(call({"nonresonant", "--beta", "1/3,1/5"}, kCubic).exit_code == 0);
    CHECK(call({"nonresonant", "--beta", "1/x,1/5"}, kCubic).exit_code == 2);
    CHECK(call({"curve", "edet", "--delta", "7", "--exponents", "0,1,7"}).exit_code == 3);
    auto err = call({"faces"}, "nope");
    CHECK(report(err)["status"] == "input_error");
    CHECK_FALSE(err.diagnostics.empty());
  }

  TEST_CASE("budget from the environment") {
    ::setenv("GKZKIT_BUDGET", "7", 1);
    CHECK(call({"curve", "edet", "--delta", "7", "--exponents", "0,1,7"}).exit_code == 0);
    ::setenv("GKZKIT_BUDGET", "2", 1);
    CHECK(call({"curve", "edet", "--delta", "3"}).exit_code == 3);
    ::setenv("GKZKIT_BUDGET", "many", 1);
    CHECK(call({"curve", "edet", "--delta", "3"}).exit_code == 2);
    ::unsetenv("GKZKIT_BUDGET");
  }

  TEST_CASE("determinism") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"faces"}, {"secondary", "--enumerate"}, {"mults"}, {"saturate", "--mode", "p"}}) {
      auto a = call(args, kPlanar), b = call(args, kPlanar);
      CHECK(a.output == b.output);
    }
    auto m1 = call({"curve", "monodromy", "--delta", "2", "--beta", "1/3,1/4"});
    auto m2 = call({"curve", "monodromy", "--delta", "2", "--beta", "1/3,1/4"});
    CHECK(m1.output == m2.output);
  }

  TEST_CASE("certificates and obstructions") {
    auto red = report(call({"redundant", "--col", "3"}, kPlanar));
    CHECK(red["result"]["column"] == 3);
    auto aux = call({"aux-check", "--k", "0", "--a", "3"}, kPlanar);
    CHECK(aux.exit_code == 1);
    CHECK(report(aux)["result"]["accepted"] == false);
    auto chain = call({"reduce", "--mode", "p"}, kPlanar);
    CHECK(chain.exit_code == 0);
    CHECK(report(chain)["result"]["complete"] == true);
    auto sec = report(call({"secondary"}, kPlanar));
    CHECK(sec["result"]["count"] == 5);
    CHECK(sec["result"]["dim"] == 2);
  }

  TEST_CASE("series and curves") {
    auto ext = call({"series", "--extend", "--col", "2", "--order", "6"}, kFullCubic);
    CHECK(ext.exit_code == 0);
    auto j = report(ext);
    CHECK(j["result"]["annihilation"]["passed"] == true);
    CHECK(j["result"]["restriction_matches"] == true);
    CHECK(call({"series", "--order", "4", "--beta", "1/3,1/7"}, kCubic).exit_code == 0);
    CHECK(call({"series", "--extend", "--order", "4"}, kFullCubic).exit_code == 2);

    auto d = report(call({"curve", "disc", "--delta", "3", "--exponents", "0,1,3"}));
    CHECK(d["result"]["discriminant"]["text"] == "27*y0^2*y2 + 4*y1^3");
    auto v = call({"curve", "verify", "--delta", "3", "--exponents", "0,1,3"});
    CHECK(v.exit_code == 0);
    CHECK(report(v)["result"]["coordinate_exponents"] == json::array({1, 0, 2}));
    CHECK(call({"curve", "ode", "--delta", "2", "--beta", "0,1/2", "--order", "10"}).exit_code == 0);
    auto m = report(call({"curve", "monodromy", "--delta", "3", "--beta", "1/5,1/3"}));
    CHECK(m["result"]["matches"] == true);
    CHECK(call({"curve", "monodromy", "--delta", "3"}).exit_code == 2);
    CHECK(call({"curve", "edet", "--delta", "4", "--exponents", "0,2,4"}).exit_code == 2);
  }
}
