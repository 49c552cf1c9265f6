#pragma once

// Formulas defining "being simulated by a state".
//
// For a state with root cluster C and daughter substates v_1..v_m (one per
// immediate strict predecessor cluster of the root),
//
//   Sim(w) = /\t(root) & /\_j <>Sim(v_j) & <>{ /\t(c) & /\_j <>Sim(v_j) : c in C }
//
// built on the indicator state w^p and then instantiated with p_T := /\T.

#include <optional>
#include <string>
#include <vector>

#include "dtl/enumerate.hpp"
#include "dtl/simulation.hpp"

namespace dtl {

/// The recursive construction applied to the types as they stand.
Formula sim_core(const State& s);

/// True if every type is {v} together with the negations of all other
/// variables in use, with distinct v per type.
bool indicator_typed(const State& s);

/// Throws StateError when s is not distinctly typed.  Cached per isomorphism class.
Formula sim_formula(const State& s);

/// No Next or Always anywhere; such formulas ignore the map.
bool temporal_free(const Formula& f);

struct Counterexample {
  std::size_t model_index = 0;
  DynModel model;
  World point = 0;
  Formula formula;
};

/// Searches an exhaustive model space for a point refuting f.  Temporal-free
/// formulas are checked on the identity-map slice only.
std::optional<Counterexample> find_countermodel(const Formula& f, std::size_t n_max,
                                                const std::vector<std::string>& vars);

// Formulas whose validity the five simulation-formula properties assert.
std::vector<Formula> propsub_item1(const State& w);
/// Requires v to simulate w.
Formula propsub_item2(const State& w, const State& v);
std::vector<Formula> propsub_item3(const State& w);
/// `i0` are the states of I_0(phi); those with psi in the root type are used.
Formula propsub_item4(const Formula& psi, const std::vector<State>& i0);
/// `successors` are the small temporal successors of w.
Formula propsub_item5(const State& w, const std::vector<State>& successors);

}  // namespace dtl
