#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "milnorflow/cli.hpp"
#include "milnorflow/report_json.hpp"

using namespace milnorflow;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "milnorflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze table") {
  const Run r = run({"analyze", "z0^3+z1^3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("mu              4") != std::string::npos);
  CHECK(r.out.find("m(f)            -1") != std::string::npos);
  for (const char* row : {"2/3     -1/3         2    -1", "4/3     1/3         -2     1"})
    CHECK(r.out.find(row) != std::string::npos);
}

TEST_CASE("analyze json") {
  const Run r = run({"analyze", "z0^2+z1^2", "--weights", "1,1,2", "--json"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["mu"] == 1);
  CHECK(j["spectrum"] == Json::array({"0/1"}));
  CHECK(j["weights"]["beta"] == 2);
  CHECK(j["basis"][0]["l"] == "1/1");
  CHECK(j["verification"].empty());
  CHECK_FALSE(j.contains("timing_ms"));

  const Run e7 = run({"analyze", "z0^3+z0*z1^3", "--json"});
  const auto k = Json::parse(e7.out);
  CHECK(k["mu"] == 7);
  CHECK(k["seidel_number"] == -4);
  CHECK(k["eta_fractional_full"] == "0/1");
  CHECK(k["groebner_basis"] == Json::array({"z0^2 + 1/3*z1^3", "z0*z1^2", "z1^5"}));
  CHECK(k["variation_structure"][0] == Json({{"rotation", "5/9"}, {"sign", -1}}));
}

TEST_CASE("json is deterministic and round-trips") {
  for (const char* text : {"z0^3+z1^3", "z0^3+z0*z1^3", "z0^2+z1^2+z2^2"}) {
    const Run a = run({"analyze", text, "--json"});
    const Run b = run({"analyze", text, "--json"});
    CHECK(a.out == b.out);
    const auto env = envelope_from_json(Json::parse(a.out));
    CHECK(to_json(env).dump(2) + "\n" == a.out);
  }
  const Run v = run({"verify", "z0^3+z1^3", "--json"});
  const auto env = envelope_from_json(Json::parse(v.out));
  REQUIRE(env.verification);
  CHECK(env.verification->size() == 6);
  CHECK(to_json(env).dump(2) + "\n" == v.out);
}

TEST_CASE("timing is opt-in") {
  const Run r = run({"analyze", "z0^3+z1^3", "--json", "--timing"});
  CHECK(Json::parse(r.out).contains("timing_ms"));
}

TEST_CASE("term order flag") {
  const Run a = run({"basis", "z0^3+z0*z1^3", "--order", "degrevlex", "--json"});
  const auto j = Json::parse(a.out);
  CHECK(j["order"] == "degrevlex");
  CHECK(j["groebner_basis"] == Json::array({"3*z0^2 + z1^3", "z0*z1^2", "z0^3"}));
  CHECK(run({"basis", "z0^3+z1^3", "--order", "grlex"}).code == cli::kUsage);
}

TEST_CASE("basis and spectrum commands") {
  const Run b = run({"basis", "z0^3+z1^3"});
  CHECK(b.code == 0);
  CHECK(b.out.rfind("mu = 4\n", 0) == 0);
  const Run s = run({"spectrum", "z0^3+z0*z1^3"});
  CHECK(s.out == "-4/9 -2/9 -1/9 0 1/9 2/9 4/9\n");
  const auto j = Json::parse(run({"spectrum", "z0^2+z1^2+z2^2", "--json"}).out);
  CHECK(j["spectrum"] == Json::array({"1/2"}));
  CHECK(j["symmetric"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run({"analyze", "z0^^2"}).code == cli::kUsage);
  CHECK(run({"analyze", "x^2+y^2"}).code == cli::kUsage);
  CHECK(run({"analyze", "z0^2+z1^2", "--weights", "1,1"}).code == cli::kUsage);
  CHECK(run({"analyze"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);

  const Run amb = run({"analyze", "z0^3"});
  CHECK(amb.code == cli::kWeights);
  CHECK(amb.err.find("--weights") != std::string::npos);
  CHECK(run({"analyze", "z0^2+z0^3"}).code == cli::kWeights);
  CHECK(run({"analyze", "z0^3+z1^3", "--weights", "1,2,3"}).code == cli::kWeights);

  CHECK(run({"analyze", "z0^2*z1^2", "--weights", "1,1,4"}).code == cli::kSingularity);
  CHECK(run({"analyze", "z0+z1"}).code == cli::kSingularity);

  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).out.find("0.3.0") != std::string::npos);
}

TEST_CASE("regular point") {
  const Run t = run({"analyze", "z0+z1"});
  CHECK(t.code == cli::kSingularity);
  CHECK(t.out.find("regular point") != std::string::npos);
  const Run j = run({"analyze", "z0+z1", "--json"});
  CHECK(j.code == 0);
  const auto doc = Json::parse(j.out);
  CHECK(doc["regular_point"] == true);
  CHECK(doc["mu"] == 0);
  CHECK(doc["basis"].empty());
}

TEST_CASE("verify command") {
  const Run e6 = run({"verify", "z0^3+z1^3", "--json"});
  CHECK(e6.code == 0);
  const auto j = Json::parse(e6.out);
  REQUIRE(j["verification"].size() == 6);
  CHECK(j["verification"][0]["kind"] == "sf_theorem");
  CHECK(j["verification"][5]["kind"] == "eta_fractional");
  for (const auto& rec : j["verification"]) CHECK(rec["pass"] == true);

  const Run a1 = run({"verify", "z0^2+z1^2+z2^2"});
  CHECK(a1.code == 0);
  CHECK(a1.out.find("-2.000000") != std::string::npos);

  const Run coarse = run({"verify", "--grid", "3", "z0^3+z1^3", "--json"});
  CHECK(coarse.code == 0);
  const auto c = Json::parse(coarse.out);
  CHECK(c["verification"][0]["grid_refined"] == true);
  CHECK(c["verification"][0]["requested_grid"] == 3);

  const Run refused = run({"verify", "--grid", "3", "--no-refine", "z0^3+z1^3"});
  CHECK(refused.code == cli::kVerification);
  CHECK(refused.err.find("--grid") != std::string::npos);

  CHECK(run({"verify", "z0+z1"}).code == cli::kUsage);
}

TEST_CASE("engine-selftest") {
  const Run a = run({"engine-selftest", "--seed", "42"});
  const Run b = run({"engine-selftest", "--seed", "42"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("all property checks passed") != std::string::npos);

  const Run broken = run({"engine-selftest", "--break-branch", "--json"});
  CHECK(broken.code == cli::kVerification);
  const auto j = Json::parse(broken.out);
  CHECK(j["pass"] == false);
  bool cocycle_failed = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "triple_index_cocycle") cocycle_failed = c["passed"] != c["trials"] && !c["counterexample"].is_null();
  CHECK(cocycle_failed);
  // hidden from the help text
  CHECK(run({"engine-selftest", "--help"}).out.find("break-branch") == std::string::npos);
}
