#include <random>

#include "dtl/enumerate.hpp"
#include "dtl/eval.hpp"
#include "dtl/harness.hpp"
#include "dtl/parse.hpp"
#include "dtl/simulation.hpp"
#include "test_util.hpp"

using namespace dtl;

namespace {

const TypeSet kP = make_type({var("p")});
const TypeSet kNotP = make_type({neg(var("p"))});

std::vector<TypedPreorder> typed_structures(std::size_t n_max) {
  std::vector<TypedPreorder> out;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (const Preorder& p : preorders_up_to_iso(n))
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        std::vector<TypeSet> types;
        for (World w = 0; w < n; ++w) types.push_back((bits >> w) & 1U ? kP : kNotP);
        out.emplace_back(p, types);
      }
  return out;
}

bool is_simulation(const TypedPreorder& a, const TypedPreorder& b, const Relation& r) {
  for (World w = 0; w < a.size(); ++w)
    for (World v : r[w]) {
      if (a.type(w) != b.type(v)) return false;
      for (World w2 : a.space().downset(w)) {
        bool found = false;
        for (World v2 : b.space().downset(v)) found = found || r[w2].contains(v2);
        if (!found) return false;
      }
    }
  return true;
}

// Union of every simulation, by enumerating all relations.
Relation brute_greatest(const TypedPreorder& a, const TypedPreorder& b) {
  const std::size_t pairs = a.size() * b.size();
  Relation best(a.size());
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
    Relation r(a.size());
    for (std::size_t k = 0; k < pairs; ++k)
      if ((bits >> k) & 1U) r[k / b.size()].insert(static_cast<World>(k % b.size()));
    if (!is_simulation(a, b, r)) continue;
    for (World w = 0; w < a.size(); ++w) best[w] |= r[w];
  }
  return best;
}

State chain(const TypeSet& top, const TypeSet& bottom) {
  const std::pair<World, World> below[] = {{1, 0}};
  return State(TypedPreorder(Preorder(2, below), {top, bottom}), 0);
}

}  // namespace

TEST_CASE("greatest simulation examples") {
  const TypedPreorder one(Preorder(1, {}), {kP});
  CHECK(greatest_simulation(one, one) == Relation{WorldSet::single(0)});
  const TypeSet q = make_type({var("q")});
  const State c = chain(make_type({var("p")}), q);
  const TypedPreorder single_q(Preorder(1, {}), {q});
  const Relation r = greatest_simulation(c.base(), single_q);
  CHECK(r[0].empty());
  CHECK(r[1] == WorldSet::single(0));
}

TEST_CASE("greatest simulation agrees with enumeration of all relations") {
  const auto structures = typed_structures(3);
  std::size_t checked = 0;
  for (const TypedPreorder& a : structures)
    for (const TypedPreorder& b : structures) {
      const Relation g = greatest_simulation(a, b);
      REQUIRE(g == brute_greatest(a, b));
      CHECK(is_simulation(a, b, g));
      ++checked;
    }
  CHECK(checked == structures.size() * structures.size());
}

TEST_CASE("identity is contained in the greatest self-simulation") {
  for (const TypedPreorder& a : typed_structures(4)) {
    const Relation g = greatest_simulation(a, a);
    for (World w = 0; w < a.size(); ++w) CHECK(g[w].contains(w));
  }
}

TEST_CASE("state simulation is a preorder") {
  std::vector<State> states;
  for (const TypedPreorder& a : typed_structures(3))
    for (World w = 0; w < a.size(); ++w) {
      if (a.space().downset(w) != a.space().all()) continue;
      try {
        states.emplace_back(a, w);
      } catch (const StateError&) {
      }
    }
  REQUIRE(states.size() > 20);
  for (const State& s : states) CHECK(simulates(s, s));
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
  std::size_t chains = 0;
  for (int i = 0; i < 20000; ++i) {
    const State& a = states[pick(rng)];
    const State& b = states[pick(rng)];
    const State& c = states[pick(rng)];
    if (simulates(a, b) && simulates(b, c)) {
      ++chains;
      CHECK(simulates(a, c));
    }
  }
  CHECK(chains > 100);
}

TEST_CASE("a chain does not simulate its root cluster when the daughter type is unmatched") {
  const State c = chain(kP, kNotP);
  const State root_only(TypedPreorder(Preorder(1, {}), {kP}), 0);
  CHECK_FALSE(simulates(c, root_only));
  CHECK(simulates(root_only, c));
}

TEST_CASE("simulation into models") {
  const DynModel yes(Preorder(1, {}), {0}, {{"p", WorldSet::single(0)}});
  const DynModel no(Preorder(1, {}), {0}, {{"p", WorldSet{}}});
  const State s(TypedPreorder(Preorder(1, {}), {kP}), 0);
  CHECK(simulates_in_model(s, yes, 0));
  CHECK_FALSE(simulates_in_model(s, no, 0));
}

TEST_CASE("the state of a point simulates into that point") {
  std::mt19937_64 rng(5);
  const FormulaSet phi{parse("<>{p, q}"), parse("X p"), parse("G ~q")};
  for (int i = 0; i < 300; ++i) {
    const DynModel m = random_model(4, {"p", "q"}, rng);
    for (World x = 0; x < m.size(); ++x) CHECK(simulates_in_model(state_of_point(m, phi, x), m, x));
  }
}

TEST_CASE("simulated points match the per-point verdict") {
  std::mt19937_64 rng(6);
  const State c = chain(make_type({var("p"), parse("<>~p")}), make_type({neg(var("p")), parse("<>~p")}));
  for (int i = 0; i < 300; ++i) {
    const DynModel m = random_model(4, {"p"}, rng);
    Evaluator ev(m);
    const WorldSet pts = simulated_points(c, ev);
    for (World x = 0; x < m.size(); ++x) CHECK(pts.contains(x) == static_cast<bool>(simulates_in_model(c, m, x)));
  }
}
