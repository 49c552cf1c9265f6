#include "dtl/statespace.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace dtl {
namespace {

bool in_type(const TypeSet& t, const Formula& f) { return t.contains_mod_dneg(f); }

State induced_state(const State& s, WorldSet keep) {
  std::vector<TypeSet> types;
  World root = 0, i = 0;
  for (World w : keep) {
    if (w == s.root()) root = i;
    types.push_back(s.type(w));
    ++i;
  }
  return State(TypedPreorder(s.space().induced(keep), std::move(types)), root);
}

}  // namespace

SuccessorVerdict temporal_successor(const State& w, const State& v) {
  Relation r(w.size());
  for (World a = 0; a < w.size(); ++a)
    for (World b = 0; b < v.size(); ++b)
      if (is_sensible_pair(w.type(a), v.type(b))) r[a].insert(b);
  SuccessorVerdict out;
  out.relation = refine_continuous(w.space(), v.space(), std::move(r));
  bool serial = true;
  for (const WorldSet& img : out.relation) serial = serial && !img.empty();
  out.holds = serial && out.relation[w.root()].contains(v.root());
  return out;
}

std::size_t diamond_count(const State& w) {
  FormulaSet all;
  for (const TypeSet& t : w.base().types()) all.insert_all(t);
  std::size_t n = 0;
  for (const Formula& f : subformulas(all)) n += f.is(Op::Tangle);
  return n;
}

SuccessorVerdict small_temporal_successor(const State& w, const State& v) {
  SuccessorVerdict out = temporal_successor(w, v);
  if (out.holds && norm(v).nrm > norm(w).nrm + diamond_count(w)) out.holds = false;
  return out;
}

bool is_phi_state(const State& s, const FormulaSet& phi) {
  const FormulaSet sub = subformulas(phi), pm = sub_pm(phi);
  for (const TypeSet& t : s.base().types())
    if (!check_phi_type(t, sub, pm)) return false;
  return static_cast<bool>(validate_typing(s.base()));
}

StateSpace::StateSpace(FormulaSet phi, std::size_t k, SpaceCaps caps)
    : phi_(std::move(phi)), k_(k), caps_(caps) {
  norm_bound_ = (k_ + 1) * length(phi_);
  const TypeSpace ts(phi_);
  const auto& types = ts.types();
  const std::size_t nt = types.size();
  if (nt == 0) return;
  for (std::size_t n = 1; n <= caps_.max_worlds && !truncated_; ++n) {
    for (const Preorder& p : rooted_preorders_up_to_iso(n)) {
      if (truncated_) break;
      std::vector<std::size_t> pick(n, 0);
      // Norm depends only on the preorder; compute it once via a probe state.
      Norm probe;
      {
        std::vector<TypeSet> dummy(n);
        for (World w = 0; w < n; ++w) dummy[w] = TypeSet{var("_" + std::to_string(w))};
        probe = norm(State(TypedPreorder(p, std::move(dummy)), 0));
      }
      if (probe.nrm > norm_bound_) continue;
      for (;;) {
        bool dup = false;
        for (World a = 0; a < n && !dup; ++a)
          for (World b = a + 1; b < n && !dup; ++b)
            if (pick[a] == pick[b] && p.equivalent(a, b)) dup = true;
        if (!dup) {
          std::vector<TypeSet> ty(n);
          for (World w = 0; w < n; ++w) ty[w] = types[pick[w]];
          TypedPreorder tp(p, std::move(ty));
          if (validate_typing(tp)) {
            add(State(std::move(tp), 0));
            if (states_.size() >= caps_.max_states) {
              truncated_ = true;
              break;
            }
          }
        }
        std::size_t i = 0;
        while (i < n && ++pick[i] == nt) pick[i++] = 0;
        if (i == n) break;
      }
    }
  }
}

StateSpace::StateSpace(FormulaSet phi, std::vector<State> states) : phi_(std::move(phi)) {
  norm_bound_ = length(phi_);
  for (State& s : states) add(std::move(s));
}

void StateSpace::add(State s) {
  StateKey key = state_key(s);
  if (index_.count(key)) return;
  index_.emplace(std::move(key), states_.size());
  norms_.push_back(norm(s));
  states_.push_back(canonicalize(s));
  subs_.emplace_back();
  succ_.emplace_back();
  small_.emplace_back();
}

std::optional<std::size_t> StateSpace::index_of(const State& s) const {
  auto it = index_.find(state_key(s));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& StateSpace::substates_of(std::size_t i) const {
  if (!subs_[i]) {
    std::vector<std::size_t> out;
    for (const State& v : substates(states_[i]))
      if (auto j = index_of(v)) out.push_back(*j);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    subs_[i] = std::move(out);
  }
  return *subs_[i];
}

bool StateSpace::is_substate(std::size_t i, std::size_t j) const {
  const auto& s = substates_of(j);
  return std::binary_search(s.begin(), s.end(), i);
}

void StateSpace::compute_successors(std::size_t i) const {
  std::vector<std::size_t> all, small;
  const std::size_t bound = norms_[i].nrm + diamond_count(states_[i]);
  for (std::size_t j = 0; j < states_.size(); ++j) {
    if (!temporal_successor(states_[i], states_[j])) continue;
    all.push_back(j);
    if (norms_[j].nrm <= bound) small.push_back(j);
  }
  succ_[i] = std::move(all);
  small_[i] = std::move(small);
}

const std::vector<std::size_t>& StateSpace::successors(std::size_t i) const {
  if (!succ_[i]) compute_successors(i);
  return *succ_[i];
}

const std::vector<std::size_t>& StateSpace::small_successors(std::size_t i) const {
  if (!small_[i]) compute_successors(i);
  return *small_[i];
}

bool StateSpace::simulates(std::size_t i, std::size_t j) const {
  const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
  auto it = sim_cache_.find(key);
  if (it != sim_cache_.end()) return it->second;
  const bool r = dtl::simulates(states_[i], states_[j]).holds;
  sim_cache_.emplace(key, r);
  return r;
}

std::optional<State> reduce_state(const State& w, const FormulaSet& phi, const StateSpace* space) {
  const std::size_t bound = length(phi);
  if (norm(w).nrm <= bound && is_phi_state(w, phi)) return canonicalize(w);
  const std::size_t n = w.size();
  if (n <= 16) {
    std::vector<World> others;
    for (World v = 0; v < n; ++v)
      if (v != w.root()) others.push_back(v);
    const std::size_t m = others.size();
    // Subsets by increasing size, each size in lexicographic order.
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<bool> sel(m, false);
      std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        WorldSet keep = WorldSet::single(w.root());
        for (std::size_t i = 0; i < m; ++i)
          if (sel[i]) keep.insert(others[i]);
        State cand = induced_state(w, keep);
        if (norm(cand).nrm <= bound && is_phi_state(cand, phi) && simulates(cand, w)) return canonicalize(cand);
      } while (std::prev_permutation(sel.begin(), sel.end()));
    }
  }
  if (space) {
    for (const State& s : space->states())
      if (norm(s).nrm <= bound && simulates(s, w)) return s;
  }
  return std::nullopt;
}

EfficientPaths efficient_paths(std::size_t start, const StateSpace& space, std::size_t max_nodes) {
  EfficientPaths out;
  std::vector<std::size_t> path{start};
  std::size_t nodes = 0;
  std::function<void()> dfs = [&] {
    if (++nodes > max_nodes) {
      out.truncated = true;
      return;
    }
    bool extended = false;
    for (std::size_t j : space.small_successors(path.back())) {
      if (out.truncated) return;
      std::optional<std::size_t> m1;
      for (std::size_t m = 0; m < path.size(); ++m)
        if (space.simulates(path[m], j)) {
          m1 = m;
          break;
        }
      if (m1) {
        PruneWitness pw;
        pw.path = path;
        pw.path.push_back(j);
        pw.m1 = *m1;
        pw.m2 = path.size();
        if (out.pruned.size() < max_nodes) out.pruned.push_back(std::move(pw));
        continue;
      }
      extended = true;
      path.push_back(j);
      dfs();
      path.pop_back();
    }
    if (!extended) out.paths.push_back(path);
  };
  dfs();
  return out;
}

std::string to_string_count(PathCount c) {
  if (c == 0) return "0";
  std::string out;
  while (c > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  return std::string(out.rbegin(), out.rend());
}

namespace {

PathCount add_saturating(PathCount a, PathCount b) {
  const PathCount s = a + b;
  return s < a ? ~PathCount{0} : s;
}

bool test_bit(const std::vector<std::uint64_t>& bits, std::size_t i) { return (bits[i / 64] >> (i % 64)) & 1U; }

// Memoizes prefixes on (last state, forbidden set).  Extending by j adds the
// states j simulates, j itself included, so the forbidden set grows strictly
// along every edge and the graph is acyclic.
template <class Allow>
EfficientPathDag build_path_dag(std::size_t start, const StateSpace& space, std::size_t max_nodes, Allow allow) {
  const std::size_t n = space.size(), words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> up(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (space.simulates(a, b)) up[a][b / 64] |= std::uint64_t{1} << (b % 64);

  EfficientPathDag dag;
  auto key_hash = [&](std::size_t id) {
    std::size_t h = dag.nodes[id].state;
    for (std::uint64_t w : dag.nodes[id].forbidden) h = h * 0x9e3779b97f4a7c15ULL ^ (w + (h >> 7));
    return h;
  };
  auto key_eq = [&](std::size_t x, std::size_t y) {
    return dag.nodes[x].state == dag.nodes[y].state && dag.nodes[x].forbidden == dag.nodes[y].forbidden;
  };
  std::unordered_set<std::size_t, decltype(key_hash), decltype(key_eq)> seen(1024, key_hash, key_eq);

  // Returns the node for (state, forbidden), building it on first sight.
  std::function<std::optional<std::size_t>(std::size_t, std::vector<std::uint64_t>, std::size_t)> visit =
      [&](std::size_t state, std::vector<std::uint64_t> forbidden, std::size_t parent) -> std::optional<std::size_t> {
    const std::size_t id = dag.nodes.size();
    dag.nodes.push_back(PathDagNode{state, parent, std::move(forbidden), {}, 0});
    if (auto it = seen.find(id); it != seen.end()) {
      dag.nodes.pop_back();
      return *it;
    }
    if (dag.nodes.size() > max_nodes) {
      dag.nodes.pop_back();
      dag.truncated = true;
      return std::nullopt;
    }
    seen.insert(id);
    PathCount paths = 0;
    for (std::size_t j : space.small_successors(state)) {
      if (test_bit(dag.nodes[id].forbidden, j) || !allow(j)) continue;
      std::vector<std::uint64_t> next = dag.nodes[id].forbidden;
      for (std::size_t w = 0; w < words; ++w) next[w] |= up[j][w];
      const auto child = visit(j, std::move(next), id);
      if (!child) return std::nullopt;
      dag.nodes[id].children.push_back(*child);
      paths = add_saturating(paths, dag.nodes[*child].paths);
    }
    dag.nodes[id].paths = dag.nodes[id].children.empty() ? 1 : paths;
    return id;
  };
  visit(start, up[start], 0);
  return dag;
}

}  // namespace

bool EfficientPathDag::forbids(std::size_t node, std::size_t state) const {
  return test_bit(nodes[node].forbidden, state);
}

std::vector<std::size_t> EfficientPathDag::prefix(std::size_t node) const {
  std::vector<std::size_t> out{nodes[node].state};
  for (; node != 0; node = nodes[node].parent) out.push_back(nodes[nodes[node].parent].state);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> EfficientPathDag::pruned(std::size_t node, const StateSpace& space) const {
  std::vector<std::size_t> out;
  for (std::size_t j : space.small_successors(nodes[node].state))
    if (forbids(node, j)) out.push_back(j);
  return out;
}

std::vector<std::vector<std::size_t>> EfficientPathDag::expand(std::size_t limit) const {
  std::vector<std::vector<std::size_t>> out;
  if (nodes.empty()) return out;
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> walk = [&](std::size_t id) {
    if (out.size() >= limit) return;
    path.push_back(nodes[id].state);
    if (nodes[id].children.empty()) out.push_back(path);
    for (std::size_t c : nodes[id].children) walk(c);
    path.pop_back();
  };
  walk(0);
  return out;
}

EfficientPathDag efficient_path_dag(std::size_t start, const StateSpace& space, std::size_t max_nodes) {
  return build_path_dag(start, space, max_nodes, [](std::size_t) { return true; });
}

const ConsistencyVerdict& ConsistencyCache::verdict(std::size_t i) {
  auto it = verdicts_.find(i);
  if (it != verdicts_.end()) return it->second;
  ConsistencyVerdict v = oracle_.judge(space_[i]);
  if (v.kind == Consistency::Unknown) ++unknown_;
  return verdicts_.emplace(i, std::move(v)).first->second;
}

bool ConsistencyCache::consistent(std::size_t i) {
  const auto& v = verdict(i);
  return v.kind == Consistency::Consistent || (v.kind == Consistency::Unknown && policy_ == UnknownPolicy::Include);
}

std::vector<std::size_t> reachable(std::size_t start, const StateSpace& space, ConsistencyCache& cons,
                                   std::size_t max_nodes) {
  if (!cons.consistent(start)) return {};
  const EfficientPathDag dag =
      build_path_dag(start, space, max_nodes, [&](std::size_t j) { return cons.consistent(j); });
  std::vector<bool> hit(space.size(), false);
  for (const PathDagNode& n : dag.nodes) hit[n.state] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i]) out.push_back(i);
  return out;
}

Quasimodel structure_over(const StateSpace& space, const std::vector<std::size_t>& members) {
  const std::size_t n = members.size();
  check_world_count(n);
  std::vector<int> pos(space.size(), -1);
  for (std::size_t a = 0; a < n; ++a) pos[members[a]] = static_cast<int>(a);
  std::vector<std::pair<World, World>> below;
  std::vector<std::string> names;
  std::vector<TypeSet> types;
  Relation step(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = members[a];
    names.push_back("s" + std::to_string(i));
    types.push_back(space[i].root_type());
    for (std::size_t j : space.substates_of(i))
      if (pos[j] >= 0) below.emplace_back(static_cast<World>(pos[j]), static_cast<World>(a));
    for (std::size_t j : space.successors(i))
      if (pos[j] >= 0) step[a].insert(static_cast<World>(pos[j]));
  }
  Preorder p(n, below, std::move(names));
  return Quasimodel{TypedPreorder(std::move(p), std::move(types)), std::move(step)};
}

CanonicalReport canonical_structure(const StateSpace& space, ConsistencyCache& cons) {
  CanonicalReport rep;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (cons.consistent(i)) rep.states.push_back(i);
  for (std::size_t i : rep.states) {
    for (std::size_t j : space.substates_of(i))
      if (!cons.consistent(j) && rep.open) {
        rep.open = false;
        rep.open_violation = std::pair{i, j};
      }
    bool has = false;
    for (std::size_t j : space.small_successors(i))
      if (cons.consistent(j)) { has = true; break; }
    if (!has && rep.serial) {
      rep.serial = false;
      rep.serial_violation = i;
    }
  }
  for (std::size_t i : rep.states) {
    if (!rep.tempinc) break;
    std::vector<Formula> targets;
    for (const Formula& m : space[i].root_type())
      if (is_eventuality(strip(m))) targets.push_back(eventuality_target(strip(m)));
    if (targets.empty()) continue;
    const auto rho = reachable(i, space, cons);
    for (const Formula& t : targets) {
      bool ok = false;
      for (std::size_t j : rho)
        if (in_type(space[j].root_type(), t)) { ok = true; break; }
      if (!ok) {
        rep.tempinc = false;
        rep.tempinc_violation = std::pair{i, t};
        break;
      }
    }
  }
  if (rep.states.empty()) {
    rep.quasimodel = {false, "no consistent states", 0, 0, {}};
  } else if (rep.states.size() > WorldSet::kMaxWorlds) {
    rep.quasimodel = {false, "more than 64 consistent states; structure not materialized", 0, 0, {}};
  } else {
    rep.structure = structure_over(space, rep.states);
    rep.quasimodel = validate_quasimodel(rep.structure, &space.phi());
  }
  return rep;
}

}  // namespace dtl
