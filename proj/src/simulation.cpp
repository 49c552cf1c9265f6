#include "dtl/simulation.hpp"

namespace dtl {

Relation refine_continuous(const Preorder& a, const Preorder& b, Relation r) {
  const std::size_t n = a.size();
  std::vector<WorldSet> closed(n);
  for (bool changed = true; changed;) {
    changed = false;
    for (World w = 0; w < n; ++w) closed[w] = b.closure(r[w]);
    for (World w = 0; w < n; ++w) {
      WorldSet keep = r[w];
      for (World wb : a.downset(w)) keep &= closed[wb];
      if (keep != r[w]) {
        r[w] = keep;
        closed[w] = b.closure(keep);
        changed = true;
      }
    }
  }
  return r;
}

Relation greatest_simulation(const TypedPreorder& a, const TypedPreorder& b) {
  Relation r(a.size());
  for (World w = 0; w < a.size(); ++w)
    for (World v = 0; v < b.size(); ++v)
      if (a.type(w) == b.type(v)) r[w].insert(v);
  return refine_continuous(a.space(), b.space(), std::move(r));
}

SimVerdict simulates(const State& w, const State& v) {
  SimVerdict out;
  out.relation = greatest_simulation(w.base(), v.base());
  out.holds = out.relation[w.root()].contains(v.root());
  return out;
}

Relation greatest_model_simulation(const State& s, Evaluator& ev) {
  Relation r(s.size());
  for (World w = 0; w < s.size(); ++w) r[w] = ev(conj_all(s.type(w).items()));
  return refine_continuous(s.space(), ev.model().space(), std::move(r));
}

SimVerdict simulates_in_model(const State& s, const DynModel& m, World x) {
  Evaluator ev(m);
  SimVerdict out;
  out.relation = greatest_model_simulation(s, ev);
  out.holds = out.relation[s.root()].contains(x);
  return out;
}

WorldSet simulated_points(const State& s, Evaluator& ev) {
  return greatest_model_simulation(s, ev)[s.root()];
}

}  // namespace dtl
