#pragma once

// Consistency of states.  Derivability of ~Sim(w) is undecidable, so the
// verdict comes from a pluggable oracle.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dtl/enumerate.hpp"
#include "dtl/eval.hpp"
#include "dtl/proof.hpp"
#include "dtl/typing.hpp"

namespace dtl {

enum class Consistency { Consistent, Inconsistent, Unknown };
std::string to_string(Consistency c);

struct ConsistencyVerdict {
  Consistency kind = Consistency::Unknown;
  std::optional<DynModel> model;  // Consistent: a point of it is simulated by the state
  World point = 0;
  std::optional<ProofObject> proof;  // Inconsistent: derivation of ~Sim(w)
};

class ConsistencyOracle {
public:
  virtual ~ConsistencyOracle() = default;
  virtual ConsistencyVerdict judge(const State& s) = 0;
};

/// Everything is consistent.
class TrustingOracle final : public ConsistencyOracle {
public:
  ConsistencyVerdict judge(const State&) override { return {Consistency::Consistent, std::nullopt, 0, std::nullopt}; }
};

/// Looks for a model point simulated by the state.  The pool holds every
/// model with up to `exhaustive_worlds` worlds over the state's variables
/// (built per variable set) followed by seeded random models and any models
/// added explicitly.  Misses are Unknown, never Inconsistent.
class ModelSearchOracle final : public ConsistencyOracle {
public:
  struct Options {
    std::size_t exhaustive_worlds = 2;
    std::size_t random_models = 200;
    std::size_t random_worlds = 4;
    std::uint64_t seed = 1;
  };
  ModelSearchOracle() : ModelSearchOracle(Options{}) {}
  explicit ModelSearchOracle(Options opt) : opt_(opt) {}

  /// Models tried before the generated pool.
  void add_model(DynModel m);
  ConsistencyVerdict judge(const State& s) override;
  std::size_t models_examined() const { return examined_; }

private:
  struct Entry {
    std::unique_ptr<DynModel> model;
    std::unique_ptr<Evaluator> ev;
  };
  std::vector<Entry>& pool_for(const std::vector<std::string>& vars);
  std::optional<ConsistencyVerdict> try_entry(Entry& e, const State& s);

  Options opt_;
  std::vector<Entry> hints_;
  std::map<std::vector<std::string>, std::vector<Entry>> pools_;
  std::size_t examined_ = 0;
};

/// Accepts user-supplied derivations of ~Sim(w).  Proofs are checked on
/// insertion; a state without a matching proof is Unknown.
class ProofWitnessOracle final : public ConsistencyOracle {
public:
  /// Returns false (and stores nothing) if the proof fails to check or does
  /// not conclude ~Sim(s).
  bool add(const State& s, ProofObject proof);
  ConsistencyVerdict judge(const State& s) override;

private:
  std::unordered_map<StateKey, ProofObject, StateKeyHash> proofs_;
};

/// Re-checks a verdict's witness independently.
bool verify_verdict(const State& s, const ConsistencyVerdict& v);

}  // namespace dtl
