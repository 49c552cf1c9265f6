#include "dtl/json_io.hpp"
#include "dtl/parse.hpp"
#include "dtl/satisfy.hpp"
#include "test_util.hpp"

using namespace dtl;

namespace {

json model_json() {
  return json::parse(R"({"worlds":["a","b"],"order":[["b","a"]],"f":{"a":"a","b":"b"},"val":{"p":["b"]}})");
}

}  // namespace

TEST_CASE("models round-trip") {
  const DynModel m = model_from_json(model_json());
  CHECK(m.size() == 2);
  CHECK(m.space().le(1, 0));
  CHECK(m.val("p") == WorldSet::single(1));
  CHECK(model_to_json(model_from_json(model_to_json(m))) == model_to_json(m));
}

TEST_CASE("malformed models") {
  json j = model_json();
  j["f"].erase("b");
  CHECK_THROWS_AS(model_from_json(j), ModelError);
  j = model_json();
  j["f"]["a"] = "b";
  j["f"]["b"] = "a";
  CHECK_THROWS_AS(model_from_json(j), ModelError);
  j = model_json();
  j["worlds"] = json::array({"a", "a"});
  CHECK_THROWS_AS(model_from_json(j), FormatError);
  j = model_json();
  j["order"] = json::array({json::array({"a", "zz"})});
  CHECK_THROWS(model_from_json(j));
  j = model_json();
  j.erase("worlds");
  CHECK_THROWS_AS(model_from_json(j), FormatError);
}

TEST_CASE("states round-trip") {
  const json j = json::parse(
      R"({"worlds":["r","d"],"order":[["d","r"]],"types":{"r":["<>p","~p"],"d":["<>p","p"]},"root":"r"})");
  const State s = state_from_json(j);
  CHECK(s.size() == 2);
  CHECK(s.root() == 0);
  CHECK(s.type(1).contains(parse("p")));
  CHECK(state_to_json(state_from_json(state_to_json(s))) == state_to_json(s));
  json bad = j;
  bad["types"].erase("d");
  CHECK_THROWS_AS(state_from_json(bad), FormatError);
  bad = j;
  bad["root"] = "d";
  CHECK_THROWS_AS(state_from_json(bad), StateError);
}

TEST_CASE("quasimodels round-trip") {
  const json j = json::parse(
      R"({"worlds":["u","v"],"order":[],"types":{"u":["F p","~p"],"v":["F p","p"]},"step":[["u","v"],["v","u"]]})");
  const Quasimodel q = quasimodel_from_json(j);
  CHECK(q.step[0] == WorldSet::single(1));
  CHECK(validate_quasimodel(q));
  CHECK(quasimodel_to_json(quasimodel_from_json(quasimodel_to_json(q))) == quasimodel_to_json(q));
}

TEST_CASE("proofs round-trip") {
  const json j = json::parse(R"j({"steps":[
    {"formula":"p -> <>p","rule":"Axiom","name":"T","inst":{"Gamma":["p"]}},
    {"formula":"~p -> <>~p","rule":"Subs","refs":[1],"subst":{"p":"~p"}},
    {"formula":"[](~p -> <>~p)","rule":"NecBox","refs":[2]}]})j");
  const ProofObject p = proof_from_json(j);
  CHECK(p.steps.size() == 3);
  CHECK(check_proof(p));
  CHECK(proof_to_json(proof_from_json(proof_to_json(p))) == proof_to_json(p));
  json bad = j;
  bad["steps"][0].erase("formula");
  CHECK_THROWS_AS(proof_from_json(bad), FormatError);
  bad = j;
  bad["steps"][1]["rule"] = "Cut";
  CHECK_THROWS(proof_from_json(bad));
}

TEST_CASE("paths and reports serialize") {
  const Preorder p(3, {}, {"x", "y", "z"});
  const json l = path_to_json(Path{{0, 2}, 1}, p);
  CHECK(l["worlds"] == json::array({"x", "z"}));
  CHECK(l["loop"] == 1);
  const SatReport r = satisfy(parse("F p & ~p"));
  const json s = sat_report_to_json(r);
  CHECK(s["verdict"] == "Satisfiable");
  CHECK(s.contains("lasso"));
  CHECK(sat_report_to_json(r).dump() == s.dump());
}

TEST_CASE("missing files") { CHECK_THROWS(load_json_file("/nonexistent/file.json")); }
