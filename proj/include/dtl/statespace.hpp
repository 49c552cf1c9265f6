#pragma once

// The universal space of phi-states up to a norm bound, temporal successors,
// efficient paths, reachability and canonical structures.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtl/oracle.hpp"
#include "dtl/quasimodel.hpp"
#include "dtl/simulation.hpp"

namespace dtl {

struct SuccessorVerdict {
  bool holds = false;
  Relation relation;  // greatest sensible relation found (may be partial)
  explicit operator bool() const { return holds; }
};

/// Some serial, continuous, pairwise sensible relation from w to v relates the roots.
SuccessorVerdict temporal_successor(const State& w, const State& v);
/// Number of distinct tangle subformulas of the types of w.
std::size_t diamond_count(const State& w);
/// Temporal successor with nrm(v) <= nrm(w) + diamond_count(w).
SuccessorVerdict small_temporal_successor(const State& w, const State& v);

/// A state is a phi-state when all types are phi-types and the typing is valid.
bool is_phi_state(const State& s, const FormulaSet& phi);

struct SpaceCaps {
  std::size_t max_worlds = 6;
  std::size_t max_states = 100000;
};

class StateSpace {
public:
  /// Every phi-state with nrm <= (K+1) len(phi) and at most caps.max_worlds
  /// worlds, up to isomorphism.  Stops early (truncated() == true) when
  /// caps.max_states is reached.
  StateSpace(FormulaSet phi, std::size_t k, SpaceCaps caps = {});
  /// A space over explicitly given phi-states (deduplicated).
  StateSpace(FormulaSet phi, std::vector<State> states);

  const FormulaSet& phi() const { return phi_; }
  std::size_t k() const { return k_; }
  std::size_t norm_bound() const { return norm_bound_; }
  const SpaceCaps& caps() const { return caps_; }
  bool truncated() const { return truncated_; }

  std::size_t size() const { return states_.size(); }
  const State& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<State>& states() const { return states_; }
  std::optional<std::size_t> index_of(const State& s) const;

  /// Indices of the substates of state i (those present in the space).
  const std::vector<std::size_t>& substates_of(std::size_t i) const;
  bool is_substate(std::size_t i, std::size_t j) const;
  /// Temporal successors and small temporal successors within the space.
  const std::vector<std::size_t>& successors(std::size_t i) const;
  const std::vector<std::size_t>& small_successors(std::size_t i) const;
  /// i simulates j, cached.
  bool simulates(std::size_t i, std::size_t j) const;

private:
  void add(State s);
  void compute_successors(std::size_t i) const;

  FormulaSet phi_;
  std::size_t k_ = 0;
  std::size_t norm_bound_ = 0;
  SpaceCaps caps_;
  bool truncated_ = false;
  std::vector<State> states_;
  std::vector<Norm> norms_;
  std::unordered_map<StateKey, std::size_t, StateKeyHash> index_;
  mutable std::vector<std::optional<std::vector<std::size_t>>> subs_;
  mutable std::vector<std::optional<std::vector<std::size_t>>> succ_, small_;
  mutable std::unordered_map<std::uint64_t, bool> sim_cache_;
};

/// Some v in I_0(phi) with v simulating w: w itself when its norm allows,
/// otherwise the smallest root-containing subset that qualifies, otherwise a
/// state of `space` (if given).  nullopt if none is found.
std::optional<State> reduce_state(const State& w, const FormulaSet& phi, const StateSpace* space = nullptr);

struct PruneWitness {
  std::vector<std::size_t> path;  // the pruned extension, last element included
  std::size_t m1 = 0, m2 = 0;     // path[m1] simulates path[m2], m1 < m2
};

struct EfficientPaths {
  std::vector<std::vector<std::size_t>> paths;  // maximal efficient paths
  std::vector<PruneWitness> pruned;
  bool truncated = false;
};

/// All maximal small-successor paths from `start` without an earlier state
/// simulating a later one.  `max_nodes` bounds the search tree.
EfficientPaths efficient_paths(std::size_t start, const StateSpace& space, std::size_t max_nodes = 1000000);

/// Path counts saturate at the largest value.
using PathCount = unsigned __int128;
std::string to_string_count(PathCount c);

struct PathDagNode {
  std::size_t state = 0;
  std::size_t parent = 0;                 // node of the first prefix found; the root is its own parent
  std::vector<std::uint64_t> forbidden;   // states simulated by some member of the prefix
  std::vector<std::size_t> children;      // node ids
  PathCount paths = 0;                    // maximal efficient paths through here to a leaf
};

/// The efficient paths from `start`, with prefixes merged when they end in
/// the same state and forbid the same states.  Every prefix reaching a node
/// has the same extensions, so the DAG is exact and its size is the number
/// of distinct (last state, forbidden set) pairs rather than of paths.
struct EfficientPathDag {
  std::vector<PathDagNode> nodes;  // nodes[0] holds `start`
  bool truncated = false;

  PathCount maximal_paths() const { return nodes.empty() ? 0 : nodes[0].paths; }
  bool forbids(std::size_t node, std::size_t state) const;
  /// The states of one concrete path from the start to `node`.
  std::vector<std::size_t> prefix(std::size_t node) const;
  /// Small successors of the node's state whose extension is inefficient.
  std::vector<std::size_t> pruned(std::size_t node, const StateSpace& space) const;
  /// The maximal paths, stopping after `limit`.
  std::vector<std::vector<std::size_t>> expand(std::size_t limit) const;
};

/// `max_nodes` bounds the number of DAG nodes.
EfficientPathDag efficient_path_dag(std::size_t start, const StateSpace& space, std::size_t max_nodes = 5000000);

enum class UnknownPolicy { Exclude, Include };

/// Oracle verdicts per state index, computed on demand.
class ConsistencyCache {
public:
  ConsistencyCache(const StateSpace& space, ConsistencyOracle& oracle, UnknownPolicy policy = UnknownPolicy::Exclude)
      : space_(space), oracle_(oracle), policy_(policy) {}
  const ConsistencyVerdict& verdict(std::size_t i);
  bool consistent(std::size_t i);
  std::size_t unknown_count() const { return unknown_; }

private:
  const StateSpace& space_;
  ConsistencyOracle& oracle_;
  UnknownPolicy policy_;
  std::unordered_map<std::size_t, ConsistencyVerdict> verdicts_;
  std::size_t unknown_ = 0;
};

/// Endpoints of efficient small-successor paths from `start` through consistent states.
std::vector<std::size_t> reachable(std::size_t start, const StateSpace& space, ConsistencyCache& cons,
                                   std::size_t max_nodes = 1000000);

struct CanonicalReport {
  std::vector<std::size_t> states;  // consistent states, in space order
  Quasimodel structure;             // worlds are positions in `states`
  bool open = true;                 // substates of consistent states are consistent
  std::optional<std::pair<std::size_t, std::size_t>> open_violation;
  bool serial = true;
  std::optional<std::size_t> serial_violation;
  bool tempinc = true;  // every eventuality realized within rho
  std::optional<std::pair<std::size_t, Formula>> tempinc_violation;
  QuasimodelVerdict quasimodel;
  bool regular() const { return open && serial && tempinc && quasimodel.holds; }
};

/// The space restricted to consistent states, with substate order and
/// temporal successor steps, and the checks that make it a quasimodel.
CanonicalReport canonical_structure(const StateSpace& space, ConsistencyCache& cons);

/// The quasimodel on a subset of the space: substate order, full temporal
/// successors as steps.
Quasimodel structure_over(const StateSpace& space, const std::vector<std::size_t>& members);

}  // namespace dtl
