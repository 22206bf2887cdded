#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "residua/cli.hpp"

using namespace residua;

namespace {

struct Ran {
  int code;
  std::string out;
  std::string err;
};

Ran cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("eval emits a passing report") {
  Ran r = cli({"eval", "int 0 inf (x^2+1)/(x^4+1) dx", "--json"});
  CHECK(r.code == kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["schema"] == "residua/1");
  CHECK(j["verdict"] == "PASS");
  CHECK(j["family"] == "RationalLine");
  CHECK(j["closed_value"]["dec"].get<std::string>().rfind("2.2214414690", 0) == 0);
  CHECK(j["closed_value"]["bits"] == 128);
  CHECK(j["timings"].is_null());
  CHECK(j["residues"].size() == 2);
}

TEST_CASE("exit codes") {
  CHECK(cli({"eval", "int -inf inf 1/(x^2-1) dx"}).code == kExitRefused);
  CHECK(cli({"eval", "int -inf inf 1/(x^2-1) dx"}).err.find("PoleOnContour") != std::string::npos);
  CHECK(cli({"eval", "int 0 inf x^ dx"}).code == kExitUsage);
  CHECK(cli({"eval", "int 0 inf 1/(x^2+a^2) dx"}).code == kExitUsage);
  CHECK(cli({"eval", "int 0 inf 1/(x^2+1) dx", "--param", "a"}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"eval", "int 0 1 x dx"}).code == kExitRefused);
  CHECK(cli({"eval", "int 0 inf 1/(x^2+1) dx", "--precision", "8"}).code == kExitUsage);
  CHECK(cli({"selftest", "--only", "a,z"}).code == kExitUsage);
}

TEST_CASE("parameters accept decimals and rationals") {
  CHECK(parse_param("a=1/3").second == mpq_class(1, 3));
  CHECK(parse_param("a=-1/3").second == mpq_class(-1, 3));
  CHECK(parse_param("b=0.25").second == mpq_class(1, 4));
  CHECK_THROWS_AS(parse_param("b="), UsageError);
  CHECK_THROWS_AS(parse_param("b=1/0"), UsageError);
  CHECK_THROWS_AS(parse_param("b=x"), UsageError);
  Ran r = cli({"eval", "int -inf inf exp(a*x)/(1+exp(x)) dx", "--param", "a=1/3", "--json"});
  CHECK(r.code == kExitOk);
  CHECK(Json::parse(r.out)["params"]["a"]["dec"].get<std::string>().rfind("3.333333", 0) == 0);
}

TEST_CASE("no-oracle marks the verdict unverified") {
  Ran r = cli({"eval", "int 0 inf 1/(x^2+1) dx", "--no-oracle", "--json"});
  CHECK(r.code == kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["verdict"] == "unverified");
  CHECK(j["oracle"].is_null());
}

TEST_CASE("report round trip") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"eval", "int 0 inf sin(a*x)/sinh(x) dx", "--param", "a=1", "--json"},
           {"eval", "int -inf inf cos(x)/(x^2+4) dx", "--json", "--timings"},
           {"eval", "int 0 2pi cos(3*x)^2/(5-4*cos(2*x)) dx", "--json", "--no-oracle"}}) {
    Ran r = cli(args);
    REQUIRE(r.code == kExitOk);
    Json j = Json::parse(r.out);
    EvaluationReport rep = report_from_json(j);
    CHECK(to_json(rep).dump(2) + "\n" == r.out);
    CHECK(report_from_json(to_json(rep)) == rep);
  }
  Json bad = Json::parse(cli({"eval", "int 0 inf 1/(x^2+1) dx", "--json"}).out);
  bad["schema"] = "other/2";
  CHECK_THROWS_AS(report_from_json(bad), Error);
  bad.erase("schema");
  CHECK_THROWS_AS(report_from_json(bad), Error);
}

TEST_CASE("timings only on request") {
  Json j = Json::parse(cli({"eval", "int 0 inf 1/(x^2+1) dx", "--json", "--timings"}).out);
  REQUIRE(j["timings"].is_object());
  CHECK(j["timings"]["oracle_ms"].is_string());
}

TEST_CASE("precision from the environment") {
  ::setenv("RESIDUA_PRECISION", "256", 1);
  Json j = Json::parse(cli({"eval", "int 0 inf 1/(x^2+1) dx", "--json", "--no-oracle"}).out);
  CHECK(j["precision_bits"] == 256);
  CHECK(j["closed_value"]["bits"] == 256);
  Json k = Json::parse(cli({"eval", "int 0 inf 1/(x^2+1) dx", "--json", "--no-oracle", "--precision", "64"}).out);
  CHECK(k["precision_bits"] == 64);
  ::setenv("RESIDUA_PRECISION", "lots", 1);
  CHECK(cli({"eval", "int 0 inf 1/(x^2+1) dx"}).code == kExitUsage);
  ::unsetenv("RESIDUA_PRECISION");
}

TEST_CASE("poles, residues, arc-check and oracle subcommands") {
  Ran p = cli({"poles", "int 0 inf 1/(x^2+1)^n dx", "--param", "n=3", "--json"});
  CHECK(p.code == kExitOk);
  Json pj = Json::parse(p.out);
  CHECK(pj["poles"].size() == 1);
  CHECK(pj["poles"][0]["order"] == 3);
  CHECK(pj["params"]["n"]["dec"].get<std::string>().rfind("3.0000", 0) == 0);

  Ran r = cli({"residues", "int 0 2pi cos(3*x)^2/(5-4*cos(2*x)) dx"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("order-m-derivative") != std::string::npos);

  Ran a = cli({"arc-check", "int 0 inf (x^2+1)/(x^4+1) dx", "--radii", "10,100,1000"});
  CHECK(a.code == kExitOk);
  CHECK(a.out.find("R,bound\n") != std::string::npos);
  Json aj = Json::parse(cli({"arc-check", "int 0 inf (x^2+1)/(x^4+1) dx", "--radii", "10,100,1000", "--json"}).out);
  CHECK(aj["rows"].size() == 3);
  CHECK(cli({"arc-check", "int 0 inf (x^2+1)/(x^4+1) dx"}).code == kExitUsage);

  Ran o = cli({"oracle", "int 0 1 x^2 dx", "--json"});
  CHECK(o.code == kExitOk);
  CHECK(Json::parse(o.out)["value"]["dec"].get<std::string>().rfind("3.33333333333333", 0) == 0);
}

TEST_CASE("selftest rows and negative control") {
  Ran s = cli({"selftest"});
  CHECK(s.code == kExitOk);
  CHECK(s.out.find("11/11 rows PASS") != std::string::npos);
  Ran f = cli({"selftest", "--perturb", "1e-4", "--only", "a,i"});
  CHECK(f.code == kExitVerifyFail);
  CHECK(f.out.find("0/2 rows PASS") != std::string::npos);
  Ran j1 = cli({"selftest", "--json", "--only", "c,l"});
  Ran j2 = cli({"selftest", "--json", "--only", "c,l"});
  CHECK(j1.out == j2.out);
  CHECK(Json::parse(j1.out)["total"] == 2);
}
