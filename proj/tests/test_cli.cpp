#include <json.hpp>

#include <sstream>

#include "doctest.h"
#include "qpa/cli.hpp"

using namespace qpa;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  const Run r = run(args);
  REQUIRE_MESSAGE(r.code == kExitOk, r.err);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("operator verbs") {
  CHECK(run({"bracket", "d1^2", "x1"}).out == "2*d1\n");
  CHECK(run({"compose", "d1", "x1"}).out == "x1*d1 + 1\n");
  CHECK(run({"apply", "d1^2", "x1^3"}).out == "6*x1\n");
  CHECK(run({"apply", "d", "cos(3t)"}).out == "-3*sin(3t)\n");
  CHECK(run({"symbol", "x1^2*d1^2 + d1"}).out == "x1^2*xi1^2\n");
  CHECK(run({"symbol", "x1*d1", "--order", "2"}).out == "0\n");
  CHECK(run({"symbol", "x1^2*d1^2 + d1", "--order", "1"}).code == kExitPrecondition);
  CHECK(run({"quantize", "x1*xi1^2"}).out == "x1*d1^2\n");
  CHECK(run({"poisson", "xi1", "x1^2"}).out == "2*x1\n");
}

TEST_CASE("json schema") {
  const auto d = run_json({"compose", "d1", "x1"});
  CHECK(d["type"] == "diffop");
  CHECK(d["n"] == 1);
  CHECK(d["order"] == 1);
  CHECK(d["terms"].size() == 2);

  const auto s = run_json({"symbol", "x2*d1*d2"});
  CHECK(s["type"] == "symbol");
  CHECK(s["n"] == 2);
  CHECK(s["terms"][0]["x"] == nlohmann::json({0, 1}));
  CHECK(s["terms"][0]["xi"] == nlohmann::json({1, 1}));

  const auto h = run_json({"star", "xi1", "x1", "--order", "2"});
  CHECK(h["type"] == "hseries");
  CHECK(h["coeffs"].size() == 3);
  CHECK(h["coeffs"][1] == "1");

  const auto e = run_json({"equivariant", "--k", "2", "--lambda", "1/2"});
  CHECK(e["status"] == "UNIQUE");
  CHECK(e["coefficients"][0]["value"] == "1/2");
  CHECK(e["coefficients"][2]["value"] == "1/12");

  const auto o = run_json({"one-param", "--Y", "x1*d2", "--apply", "x2*d1", "--t", "1/2"});
  CHECK(o["mode"] == "exact");
  CHECK(o["residual"] == 0.0);
  CHECK(o["lhs"] == o["rhs"]);
}

TEST_CASE("derivation and flow verbs") {
  CHECK(run({"derive", "d1^2", "--algebra", "d", "--Y", "x1^2"}).out == "-4*x1*d1 - 2\n");
  CHECK(run({"flow", "--Y", "x1*d2"}).out == "[x1, x1 + x2]\n");
  CHECK(run({"automorph", "d1", "--phi", "[2*x1+1]", "--K", "3", "--lambda", "1"}).code == kExitOk);
  CHECK(run({"div-check", "--Y", "x1*d2", "--t", "2"}).code == kExitOk);
  CHECK(run({"div-check", "--Y", "x1*d1", "--Z", "x2*d1", "--s", "1/2"}).code == kExitOk);
  const Run b = run({"bundle", "--model", "rn", "--op", "d1*x1", "--apply", "x1^2"});
  CHECK(b.code == kExitOk);
  CHECK(b.out.find("3*x1^2") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"compose", "x1 +", "x1"}).code == kExitParse);
  CHECK(run({"compose", "cos(3t) + sin(1/2t)", "d"}).code == kExitParse);
  CHECK(run({"bracket", "xi1", "x1"}).code == kExitPrecondition);
  CHECK(run({"equivariant", "--n", "3"}).code == kExitPrecondition);
  CHECK(run({"verify", "nope"}).code == kExitPrecondition);
  CHECK(run({"frob"}).code == kExitParse);
  CHECK(run({}).code == kExitParse);
  CHECK(run({"--help"}).code == kExitOk);
  const Run r = run({"compose", "x1 +", "x1"});
  CHECK(r.err.find("1:5") != std::string::npos);
}

TEST_CASE("verify suites") {
  const Run r = run({"verify", "theorem3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("PASS theorem3", 0) == 0);
  const auto j = run_json({"verify", "parse", "--seed", "7"});
  CHECK(j["passed"] == true);
  CHECK(j["suites"][0]["suite"] == "parse");
}
