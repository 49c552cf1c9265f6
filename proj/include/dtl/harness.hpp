#pragma once

// Property sweeps over enumerated and sampled models.  Every sweep has a
// serial reference path and an OpenMP path; both report the violation with
// the smallest index, so their reports are identical.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtl/enumerate.hpp"
#include "dtl/formula.hpp"
#include "dtl/typing.hpp"

namespace dtl {

enum class Execution { Serial, Parallel };

struct Violation {
  std::uint64_t index = 0;
  std::string what;
  std::optional<DynModel> model;
  World point = 0;
  Formula formula;
};

struct SweepReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<Violation> first;
  bool ok() const { return violations == 0; }
};

/// Sets the OpenMP thread count used by Parallel sweeps (0 keeps the default).
void set_jobs(int jobs);

/// tangled_gfp against tangled_cluster on every preorder with at most n_max
/// worlds (up to isomorphism) and every family of at most family_max distinct
/// subsets.
SweepReport tangle_sweep(std::size_t n_max, std::size_t family_max, Execution ex);

/// <>{g} against the closure of g on random (model, g) pairs.
SweepReport closure_degeneration(std::size_t pairs, std::size_t depth, std::uint64_t seed, Execution ex);

struct SoundnessOptions {
  std::size_t trials = 10000;
  std::size_t n_max = kRandomCap;
  std::size_t depth = 2;      // depth of the formulas plugged into letters
  std::size_t max_gamma = 3;
  std::uint64_t seed = 7;
};

/// Random axiom instances on random models, with necessitation applied to
/// each instance as a rule-level check.
SweepReport soundness_random(const SoundnessOptions& opt, Execution ex);

/// The most general instance of every schema (fresh variables, Gamma of every
/// size up to max_gamma, each tautology template) on every model with at
/// most n_max worlds.
SweepReport soundness_exhaustive(std::size_t n_max, std::size_t max_gamma, Execution ex);
std::vector<std::pair<std::string, Formula>> schematic_instances(std::size_t max_gamma);

/// Canonical states with at most n_max worlds whose types are complete
/// literal assignments over vars, deduplicated up to isomorphism.
std::vector<State> literal_states(const std::vector<std::string>& vars, std::size_t n_max);

/// eval(sim_formula(s)) against the simulated points, for every state in
/// literal_states(vars, state_worlds) and every model with at most
/// model_worlds worlds over vars.
SweepReport sim_biconditional(const std::vector<std::string>& vars, std::size_t state_worlds,
                              std::size_t model_worlds, Execution ex);

/// Every formula valid on every model with at most n_max worlds over its
/// variables; temporal-free formulas are checked on the identity slice.
SweepReport validity_sweep(const std::vector<Formula>& fs, std::size_t n_max, Execution ex);

/// For each phi in the pool and each model with at most n_max worlds:
/// types agree with evaluation, the induced structure is a quasimodel, and
/// every orbit is a realizing path.
SweepReport quasimodel_bridge(const std::vector<Formula>& pool, std::size_t n_max, Execution ex);

}  // namespace dtl
