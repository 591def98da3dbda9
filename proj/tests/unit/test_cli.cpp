#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "fcmono/cli.hpp"
#include "fcmono/report.hpp"

using namespace fcmono;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli classify examples") {
  Run r = run({"classify", "n=3", "a=1/4", "b=3/4", "c=1/2,1/2,1/2"});
  CHECK(r.code == exit_ok);
  Json j = Json::parse(r.out);
  CHECK(j["finite"] == "Finite");
  CHECK(j["irreducible"] == true);
  CHECK(j["case"]["tag"] == "B-a");
  CHECK(j["structure_type"] == 1);

  // alpha = 1 violates irreducibility.
  r = run({"classify", "n=1", "a=0", "b=1/2", "c=1/2"});
  j = Json::parse(r.out);
  CHECK(j["irreducible"] == false);
  CHECK(r.code == exit_undecided);

  r = run({"classify", "n=1", "a=1/3", "b=2/3", "c=1/2"});
  j = Json::parse(r.out);
  CHECK(j["finite"] == "Finite");
  CHECK(j["schwarz_row"].is_number());
  CHECK(r.code == exit_ok);

  r = run({"classify", "n=2", "a=1/3", "b=2/3", "c=1,1/2"});
  CHECK(Json::parse(r.out)["finite"] == "Infinite");
  CHECK(r.code == exit_ok);
}

TEST_CASE("cli enumeration mode exceeding the cap is undecided") {
  Run r = run({"--cap", "1000", "classify", "--mode", "enumeration", "n=1", "a=1/5", "b=1/3", "c=1/7"});
  CHECK(r.code == exit_undecided);
  CHECK(Json::parse(r.out)["finite"] == "Undecided");
}

TEST_CASE("cli parameter input") {
  Run text = run({"enumerate", "n=1", "a=1/3", "b=2/3", "c=1/2"});
  Run json = run({"enumerate", R"({"n": 1, "a": "1/3", "b": "2/3", "c": ["1/2"]})"});
  CHECK(text.code == exit_ok);
  CHECK(text.out == json.out);
  CHECK(Json::parse(text.out)["cardinalities"]["mon"] == 6);
  // Parameters are taken modulo Z.
  Run shifted = run({"enumerate", "n=1", "a=4/3", "b=-1/3", "c=3/2"});
  CHECK(shifted.out == text.out);
}

TEST_CASE("cli input errors exit 1 and name the token") {
  Run r = run({"classify", "n=2", "a=1/x", "b=1/2", "c=1/3,1/2"});
  CHECK(r.code == exit_input);
  CHECK(r.err.find("1/x") != std::string::npos);
  r = run({"classify", "n=2", "q=1", "a=1/2", "b=1/2", "c=1/3,1/2"});
  CHECK(r.code == exit_input);
  CHECK(r.err.find("q") != std::string::npos);
  CHECK(run({"frobnicate"}).code == exit_input);
  CHECK(run({"--cap", "0", "classify", "n=1", "a=1/3", "b=2/3", "c=1/2"}).code == exit_input);
  CHECK(run({"--format", "xml", "classify", "n=1", "a=1/3", "b=2/3", "c=1/2"}).code == exit_input);
  CHECK(run({"table", "f4-check-9"}).code == exit_input);
  r = run({"verify-decomposition", "lemma=red2", "n=3", "a=1/3", "b=2/3", "c=1/3,1/2,1/3"});
  CHECK(r.code == exit_input);
  CHECK(r.err.find("gamma_n = -1") != std::string::npos);
  r = run({"structure", "n=3", "a=1/5", "b=1/7", "c=1/3,1/3,1/3"});
  CHECK(r.code == exit_input);
}

TEST_CASE("cli verify-decomposition and structure") {
  Run r = run({"verify-decomposition", "lemma=red1", "n=3", "a=1/3", "b=2/3", "c=1/2,1/2,1/2"});
  CHECK(r.code == exit_ok);
  Json j = Json::parse(r.out);
  CHECK(j["report"]["lemma"] == "red1");
  CHECK(j["report"]["all_pass"] == true);
  CHECK(j["report"]["cardinalities"]["Ref(n)"] == "1296");

  r = run({"structure", "n=3", "a=3/4", "b=1/4", "c=1/3,2/3,1/2"});
  CHECK(r.code == exit_ok);
  j = Json::parse(r.out)["structure"];
  CHECK(j["clause"] == "B-d-1");
  CHECK(j["type"] == 4);
  CHECK(j["intersection"]["word"] == "M1*M2");
  CHECK(j["verification"]["matches"] == true);
}

TEST_CASE("cli table output is identical across thread counts") {
  Run one = run({"--threads", "1", "table", "f4-check-2"});
  Run three = run({"--threads", "3", "table", "f4-check-2"});
  CHECK(one.code == exit_ok);
  CHECK(one.out == three.out);
  Json j = Json::parse(one.out);
  CHECK(j["all_match"] == true);
  CHECK(j["rows"].size() == 6);
  Run single = run({"--one-sign", "table", "f4-check-2"});
  CHECK(Json::parse(single.out)["rows"].size() == 3);
  CHECK(run({"--threads", "none", "table", "f4-check-2"}).code == exit_input);
}

TEST_CASE("cli JSON output is deterministic") {
  std::vector<std::string> args{"classify", "--cardinalities", "n=3", "a=1/4", "b=7/12", "c=1/3,1/2,1/2"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("MONODROMY_CAP overrides the default cap") {
  setenv("MONODROMY_CAP", "50", 1);
  CHECK(default_cap_from_env() == 50);
  Run r = run({"enumerate", "n=2", "a=1/4", "b=7/12", "c=1/3,1/2"});
  CHECK(r.code == exit_undecided);
  CHECK(Json::parse(r.out)["cardinalities"]["complete"] == false);
  // An explicit flag wins.
  r = run({"--cap", "100000", "enumerate", "n=2", "a=1/4", "b=7/12", "c=1/3,1/2"});
  CHECK(r.code == exit_ok);
  setenv("MONODROMY_CAP", "junk", 1);
  CHECK(default_cap_from_env() == kDefaultCap);
  unsetenv("MONODROMY_CAP");
}

TEST_CASE("matrix JSON form") {
  ParamSet p = params_create(1, Rational(1, 3), Rational(2, 3), {Rational(1, 2)});
  Json m = matrix_json(build_rep(p).gens[0]);
  CHECK(m["rows"] == 2);
  CHECK(m["cols"] == 2);
  CHECK(m["field_order"] == 6);
  CHECK(m["entries"].size() == 4);
  Run r = run({"enumerate", "--dump", "n=1", "a=1/3", "b=2/3", "c=1/2"});
  Json j = Json::parse(r.out);
  CHECK(j["elements"].size() == 6);
}

TEST_CASE("parameter JSON errors") {
  CHECK_THROWS(parse_params_json(Json::parse(R"({"a": "1/2", "c": ["1/3"]})")));
  CHECK_THROWS(parse_params_json(Json::parse(R"({"a": "1/2", "b": 0.5, "c": ["1/3"]})")));
  CHECK_THROWS(parse_params_json(Json::parse(R"([1, 2])")));
  ParamSet p = parse_params_json(Json::parse(R"({"a": 0, "b": "1/2", "c": ["1/3", 1]})"));
  CHECK(p.n == 2);
  CHECK(p.c[1] == 0);
}
