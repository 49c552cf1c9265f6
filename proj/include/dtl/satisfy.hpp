#pragma once

// Bounded, witness-producing satisfiability search.
//
// With the model-search oracle: find a small model point satisfying phi,
// reduce the state of that point into I_0({phi}), close it under substates
// and small temporal successors read off the model, check that the resulting
// fragment of the canonical structure is a quasimodel, and extract a
// realizing lasso from the witness state.
//
// With the trusting oracle: enumerate I_0({phi}) and close each candidate
// inside the materialized space instead.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtl/statespace.hpp"

namespace dtl {

enum class OracleKind { ModelSearch, Trusting };
enum class SatVerdict { Satisfiable, NoWitnessFound };
std::string to_string(SatVerdict v);

struct SatOptions {
  std::size_t cap_worlds = 4;       // exhaustive model search size (at most 5)
  std::size_t random_worlds = 6;    // size of random models tried afterwards
  std::size_t max_models = 200000;  // deterministic budget
  std::uint64_t budget_ms = 60000;  // wall-clock cutoff
  std::uint64_t seed = 1;
  OracleKind oracle = OracleKind::ModelSearch;
  SpaceCaps space_caps{4, 20000};  // trusting route only
};

struct SatChecks {
  bool model_eval = false;
  bool state_contains_phi = false;
  bool state_consistent = false;
  bool open = false;
  bool serial = false;
  bool tempinc = false;
  bool quasimodel_valid = false;
  bool lasso_realizing = false;
};

struct SatReport {
  SatVerdict verdict = SatVerdict::NoWitnessFound;
  std::string reason;
  Formula formula;
  std::optional<DynModel> model;
  World point = 0;
  std::optional<State> witness_state;
  std::vector<State> fragment;
  std::optional<Quasimodel> structure;
  std::size_t witness_index = 0;  // position of witness_state in fragment
  std::optional<Path> lasso;
  SatChecks checks;
  std::size_t models_examined = 0;
  bool budget_exhausted = false;
};

SatReport satisfy(const Formula& phi, const SatOptions& opt = {});

/// Independent re-verification of a Satisfiable report.
bool verify_report(const SatReport& r);

}  // namespace dtl
