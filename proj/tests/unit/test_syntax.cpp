#include <random>

#include "test_util.hpp"
#include "dtl/eval.hpp"
#include "dtl/enumerate.hpp"
#include "dtl/parse.hpp"
#include "dtl/random_formula.hpp"

using namespace dtl;

TEST_CASE("parse builds primitive trees and expands abbreviations") {
  CHECK(parse("~(p & q)") == neg(conj(var("p"), var("q"))));
  CHECK(parse("<>{p}") == tangle({var("p")}));
  CHECK(parse("<>{p}") == parse("<>p"));
  CHECK(parse("[]p") == neg(tangle({neg(var("p"))})));
  CHECK(parse("F p") == neg(always(neg(var("p")))));
  CHECK(parse("p | q") == neg(conj(neg(var("p")), neg(var("q")))));
  CHECK(parse("<>{}") == top());
  CHECK(parse("<>{}").op() == Op::Tangle);
  CHECK(parse("<>{}").args().empty());
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("p & q | r") == disj(conj(var("p"), var("q")), var("r")));
  CHECK(parse("p -> q -> r") == implies(var("p"), implies(var("q"), var("r"))));
  CHECK(parse("p -> q <-> r") == iff(implies(var("p"), var("q")), var("r")));
  CHECK(parse("~X G p") == neg(next(always(var("p")))));
  CHECK(parse("X_1 & Gp") == conj(var("X_1"), var("Gp")));
}

TEST_CASE("tangle members form a set") {
  CHECK(parse("<>{p, q}") == parse("<>{q, p, q}"));
  CHECK(parse("<>{p, q}").args().size() == 2);
}

TEST_CASE("syntax errors carry positions") {
  for (const char* bad : {"", "p &", "(p", "<>{p,", "p q", "~", "<>{p}}", "p -> -> q", "X"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse(bad), ParseError);
  }
  try {
    parse("p & & q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("printing round-trips on random trees") {
  std::mt19937_64 rng(42);
  FormulaGen g;
  g.vars = {"p", "q", "r"};
  g.max_depth = 6;
  for (int i = 0; i < 2000; ++i) {
    const Formula f = random_formula(rng, g);
    CAPTURE(to_string(f));
    CHECK(parse(to_string(f)) == f);
  }
}

TEST_CASE("subformulas") {
  CHECK(subformulas({parse("X p")}) == FormulaSet{parse("X p"), parse("p")});
  CHECK(subformulas({parse("<>{p, ~q}")}) ==
        FormulaSet{parse("<>{p, ~q}"), parse("p"), parse("~q"), parse("q")});
  CHECK(subformulas({parse("G p")}) == FormulaSet{parse("G p"), parse("p")});
  CHECK(length({parse("<>{p, p & p}")}) == 3);

  std::mt19937_64 rng(5);
  FormulaGen g;
  for (int i = 0; i < 200; ++i) {
    const FormulaSet s = subformulas({random_formula(rng, g)});
    CHECK(subformulas(s) == s);
  }
}

TEST_CASE("signed subformulas identify double negations") {
  CHECK(sub_pm({parse("p")}) == FormulaSet{parse("p"), parse("~p")});
  CHECK(sub_pm({parse("p")}).contains_mod_dneg(parse("~~p")));
  CHECK(sub_pm({parse("X p")}) == FormulaSet{parse("X p"), parse("~X p"), parse("p"), parse("~p")});
  CHECK(strip(parse("~~~~p")) == parse("p"));
  CHECK(strip(parse("~~~p")) == parse("~p"));
  CHECK(complement(parse("~p")) == parse("p"));
  CHECK(complement(parse("p")) == parse("~p"));
}

TEST_CASE("eventualities") {
  CHECK(is_eventuality(parse("F p")));
  CHECK(eventuality_target(parse("F p")) == parse("p"));
  CHECK(eventuality_target(parse("F ~p")) == parse("~p"));
  CHECK_FALSE(is_eventuality(parse("G p")));
  CHECK_FALSE(is_eventuality(parse("~p")));
}

TEST_CASE("substitution") {
  const Formula four = parse("<><>p -> <>p");
  CHECK(substitute(four, {{"p", parse("q & r")}}) == parse("<><>(q & r) -> <>(q & r)"));
  CHECK(substitute(parse("p"), {}) == parse("p"));
  CHECK(substitute(parse("<>{p, q}"), {{"p", parse("q")}}) == parse("<>q"));
  CHECK(substitute(parse("p & q"), {{"p", parse("q")}, {"q", parse("p")}}) == parse("q & p"));
}

TEST_CASE("collapsed tangle has the same extension as the substituted original") {
  const Formula a = substitute(parse("<>{p, q}"), {{"p", parse("q")}});
  const Formula b = tangle({var("q"), var("q")});
  const ModelSpace ms(3, {"q"}, true);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const DynModel m = ms[i];
    CHECK(eval(m, a) == eval(m, b));
  }
}

TEST_CASE("the G-abstraction") {
  QTransform q({parse("G p"), parse("<>{G p, X G p}"), parse("G G p")});
  const Formula a = q.apply(parse("G p"));
  CHECK(a.op() == Op::Var);
  CHECK(q.apply(parse("<>{G p, X G p}")) == tangle({a, next(a)}));
  const Formula gg = q.apply(parse("G G p"));
  CHECK(gg.op() == Op::Var);
  CHECK(gg != a);
  const Substitution back = q.inverse();
  CHECK(substitute(gg, back) == parse("G G p"));
  CHECK(q.table().size() == 2);

  std::mt19937_64 rng(77);
  FormulaGen g;
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_formula(rng, g);
    QTransform t({f});
    const Formula abstracted = t.apply(f);
    CHECK(substitute(abstracted, t.inverse()) == f);
  }
}

TEST_CASE("fresh variables avoid the context") {
  QTransform q({parse("_q0 & G p")});
  const Formula a = q.apply(parse("G p"));
  CHECK(a.name() != "_q0");
  CHECK(fresh_prefix({"_p0", "_p1"}, "_p") != "_p");
}
