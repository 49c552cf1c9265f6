#include "dtl/eval.hpp"
#include "dtl/parse.hpp"
#include "dtl/satisfy.hpp"
#include "test_util.hpp"

using namespace dtl;

TEST_CASE("a variable is satisfiable in one world") {
  const SatReport r = satisfy(parse("p"));
  REQUIRE(r.verdict == SatVerdict::Satisfiable);
  REQUIRE(r.model);
  CHECK(r.model->size() == 1);
  REQUIRE(r.witness_state);
  CHECK(r.witness_state->size() == 1);
  CHECK(verify_report(r));
}

TEST_CASE("contradictions find no witness") {
  for (const char* s : {"p & ~p", "X p & ~X p", "G p & F ~p"}) {
    const SatReport r = satisfy(parse(s));
    CHECK(r.verdict == SatVerdict::NoWitnessFound);
    CHECK_FALSE(r.reason.empty());
    CHECK_FALSE(r.witness_state);
  }
}

TEST_CASE("an eventuality is realized along the lasso") {
  const Formula phi = parse("F p & ~p");
  const SatReport r = satisfy(phi);
  REQUIRE(r.verdict == SatVerdict::Satisfiable);
  const SatChecks& c = r.checks;
  CHECK(c.model_eval);
  CHECK(c.state_contains_phi);
  CHECK(c.state_consistent);
  CHECK(c.open);
  CHECK(c.serial);
  CHECK(c.tempinc);
  CHECK(c.quasimodel_valid);
  CHECK(c.lasso_realizing);
  REQUIRE(r.model);
  CHECK(Evaluator(*r.model).holds(phi, r.point));
  REQUIRE(r.lasso);
  REQUIRE(r.structure);
  bool later = false;
  for (std::size_t i = 1; i < r.lasso->worlds.size() + 2; ++i)
    later = later || r.structure->base.type(r.lasso->at(i)).contains(var("p"));
  CHECK(later);
  CHECK(verify_report(r));
}

TEST_CASE("tampered reports fail verification") {
  SatReport r = satisfy(parse("F p & ~p"));
  REQUIRE(verify_report(r));
  SatReport no_lasso = r;
  no_lasso.lasso.reset();
  CHECK_FALSE(verify_report(no_lasso));
  SatReport wrong = r;
  wrong.formula = parse("G ~p");
  CHECK_FALSE(verify_report(wrong));
  SatReport none;
  CHECK_FALSE(verify_report(none));
}

TEST_CASE("the trusting route") {
  SatOptions opt;
  opt.oracle = OracleKind::Trusting;
  const SatReport r = satisfy(parse("<>p & ~p"), opt);
  REQUIRE(r.verdict == SatVerdict::Satisfiable);
  CHECK_FALSE(r.model);
  CHECK(verify_report(r));
  CHECK(satisfy(parse("p & ~p"), opt).verdict == SatVerdict::NoWitnessFound);
}

TEST_CASE("runs are deterministic") {
  const SatReport a = satisfy(parse("<>{p, ~p} & X G p"));
  const SatReport b = satisfy(parse("<>{p, ~p} & X G p"));
  REQUIRE(a.verdict == SatVerdict::Satisfiable);
  CHECK(a.models_examined == b.models_examined);
  CHECK(a.point == b.point);
  CHECK(a.lasso == b.lasso);
  CHECK(verify_report(a));
}

TEST_CASE("a tiny budget is reported") {
  SatOptions opt;
  opt.max_models = 1;
  const SatReport r = satisfy(parse("X X ~p & p & X p"), opt);
  CHECK(r.verdict == SatVerdict::NoWitnessFound);
  CHECK(r.budget_exhausted);
}
