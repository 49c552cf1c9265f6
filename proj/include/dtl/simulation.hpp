#pragma once

#include "dtl/eval.hpp"
#include "dtl/typing.hpp"

namespace dtl {

/// Largest R contained in `init` such that w R v and w' <= w imply w' R v'
/// for some v' <= v.  Worst case O(|A|^2 |B|) set operations per round.
Relation refine_continuous(const Preorder& a, const Preorder& b, Relation init);

/// Union of all type-preserving continuous relations from a to b.
Relation greatest_simulation(const TypedPreorder& a, const TypedPreorder& b);

struct SimVerdict {
  bool holds = false;
  Relation relation;  // the greatest simulation, even when the roots are unrelated
  explicit operator bool() const { return holds; }
};

/// w simulates v: the roots are related by some simulation.
SimVerdict simulates(const State& w, const State& v);

/// Greatest simulation from a state into a model, where w may be related to y
/// whenever y satisfies every formula of t(w).
Relation greatest_model_simulation(const State& s, Evaluator& ev);
SimVerdict simulates_in_model(const State& s, const DynModel& m, World x);
/// All points x of the model with s simulating x.
WorldSet simulated_points(const State& s, Evaluator& ev);

}  // namespace dtl
