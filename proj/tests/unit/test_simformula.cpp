#include <random>

#include "dtl/enumerate.hpp"
#include "dtl/eval.hpp"
#include "dtl/harness.hpp"
#include "dtl/parse.hpp"
#include "dtl/simformula.hpp"
#include "dtl/simulation.hpp"
#include "test_util.hpp"

using namespace dtl;

namespace {

TypeSet T(std::initializer_list<const char*> fs) {
  std::vector<Formula> out;
  for (const char* f : fs) out.push_back(parse(f));
  return make_type(out);
}

// Extension of Sim equals the simulated points on every model of the pool.
// Simulation formulas are temporal-free, so identity maps suffice.
void check_biconditional(const State& s, std::size_t n_max, const std::vector<std::string>& vars) {
  const Formula f = sim_formula(s);
  const ModelSpace pool(n_max, vars, true);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const DynModel m = pool[i];
    Evaluator ev(m);
    REQUIRE(ev(f) == simulated_points(s, ev));
  }
}

}  // namespace

TEST_CASE("simulation formula of a single world") {
  const State s(TypedPreorder(Preorder(1, {}), {T({"p"})}), 0);
  CHECK(sim_formula(s) == conj(var("p"), tangle({var("p")})));
  CHECK_FALSE(find_countermodel(iff(sim_formula(s), var("p")), 3, {"p"}));
  check_biconditional(s, 3, {"p"});
}

TEST_CASE("simulation formula of a chain") {
  const std::pair<World, World> below[] = {{1, 0}};
  const State s(TypedPreorder(Preorder(2, below), {T({"~p"}), T({"p"})}), 0);
  const Formula f = sim_formula(s);
  CHECK_FALSE(find_countermodel(implies(f, diamond(var("p"))), 3, {"p"}));
  CHECK_FALSE(find_countermodel(implies(f, neg(var("p"))), 3, {"p"}));
  check_biconditional(s, 3, {"p"});
}

TEST_CASE("simulation formula of a two-element cluster") {
  const std::pair<World, World> cl[] = {{0, 1}, {1, 0}};
  const State s(TypedPreorder(Preorder(2, cl), {T({"p", "~q"}), T({"q", "~p"})}), 0);
  const Formula f = sim_formula(s);
  CHECK_FALSE(find_countermodel(implies(f, tangle({conj(var("p"), neg(var("q"))), conj(var("q"), neg(var("p")))})), 3,
                                {"p", "q"}));
  check_biconditional(s, 3, {"p", "q"});
}

TEST_CASE("states that are not distinctly typed have no simulation formula") {
  const std::pair<World, World> cl[] = {{0, 1}, {1, 0}};
  const State s(TypedPreorder(Preorder(2, cl), {T({"p"}), T({"q"})}), 0);
  CHECK_THROWS_AS(sim_formula(s), StateError);
}

TEST_CASE("simulation formulas factor through indicator states") {
  for (const State& s : literal_states({"p", "q"}, 3)) {
    const IndicatorState ip = state_p(s);
    const Formula back = substitute(sim_formula(ip.state), ip.back);
    // Literal types already serve as indicators, so only equivalence holds there.
    if (indicator_typed(s)) CHECK_FALSE(find_countermodel(iff(sim_formula(s), back), 3, {"p", "q"}));
    else CHECK(sim_formula(s) == back);
    CHECK(indicator_typed(ip.state));
  }
}

TEST_CASE("simulation formulas only use the state's variables") {
  for (const State& s : literal_states({"p"}, 3))
    for (const std::string& v : variables(sim_formula(s))) CHECK(v == "p");
}

TEST_CASE("biconditional on small pools, serial and parallel") {
  const SweepReport a = sim_biconditional({"p"}, 3, 3, Execution::Serial);
  const SweepReport b = sim_biconditional({"p"}, 3, 3, Execution::Parallel);
  CHECK(a.ok());
  CHECK(a.checked == b.checked);
  CHECK(a.violations == b.violations);
}

TEST_CASE("simulation formulas are antitone in simulation") {
  const auto states = literal_states({"p"}, 3);
  const ModelSpace pool(3, {"p"}, true);
  std::vector<DynModel> models;
  for (std::size_t i = 0; i < pool.size(); ++i) models.push_back(pool[i]);
  std::size_t pairs = 0;
  for (const State& v : states)
    for (const State& w : states) {
      if (!simulates(v, w)) continue;
      ++pairs;
      for (const DynModel& m : models) {
        Evaluator ev(m);
        REQUIRE(ev(sim_formula(w)).subset_of(ev(sim_formula(v))));
      }
    }
  CHECK(pairs > states.size());
}

TEST_CASE("property items on small states") {
  const State s(TypedPreorder(Preorder(1, {}), {T({"p"})}), 0);
  for (const Formula& f : propsub_item1(s)) CHECK_FALSE(find_countermodel(f, 3, {"p"}));
  const auto item3 = propsub_item3(s);
  REQUIRE(item3.size() == 1);
  CHECK_FALSE(find_countermodel(item3[0], 3, {"p"}));
  const std::pair<World, World> below[] = {{1, 0}};
  const State c(TypedPreorder(Preorder(2, below), {T({"~p"}), T({"p"})}), 0);
  for (const Formula& f : propsub_item3(c)) CHECK_FALSE(find_countermodel(f, 3, {"p"}));
  const State top(TypedPreorder(Preorder(1, {}), {T({"~p"})}), 0);
  REQUIRE(simulates(top, c));
  CHECK_FALSE(find_countermodel(propsub_item2(c, top), 3, {"p"}));
}

TEST_CASE("temporal-free detection") {
  CHECK(temporal_free(parse("<>{p, ~q} & []p")));
  CHECK_FALSE(temporal_free(parse("<>X p")));
  CHECK_FALSE(temporal_free(parse("F p")));
}

TEST_CASE("countermodel search") {
  const auto c = find_countermodel(parse("p -> X p"), 2, {"p"});
  REQUIRE(c);
  Evaluator ev(c->model);
  CHECK_FALSE(ev.holds(parse("p -> X p"), c->point));
  CHECK_FALSE(find_countermodel(parse("[]p -> p"), 3, {"p"}));
}
