#include "dtl/satisfy.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace dtl {
namespace {

using Clock = std::chrono::steady_clock;

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

// Fragment states carry their model witnesses; this oracle hands them out.
class FragmentOracle final : public ConsistencyOracle {
public:
  FragmentOracle(const DynModel& m, std::map<std::vector<std::uint64_t>, World> pts) : m_(m), pts_(std::move(pts)) {}
  ConsistencyVerdict judge(const State& s) override {
    auto it = pts_.find(flat(state_key(s)));
    if (it == pts_.end()) return {};
    return {Consistency::Consistent, m_, it->second, std::nullopt};
  }
  static std::vector<std::uint64_t> flat(const StateKey& k) {
    std::vector<std::uint64_t> out{k.hash};
    out.insert(out.end(), k.colours.begin(), k.colours.end());
    out.insert(out.end(), k.rows.begin(), k.rows.end());
    return out;
  }

private:
  const DynModel& m_;
  std::map<std::vector<std::uint64_t>, World> pts_;
};

// Smallest root-containing subset of s that is a phi-state and a small
// temporal successor of u.
std::optional<State> small_successor_inside(const State& u, const State& s, const FormulaSet& phi) {
  const std::size_t n = s.size();
  if (n > 16) return std::nullopt;
  std::vector<World> others;
  for (World v = 0; v < n; ++v)
    if (v != s.root()) others.push_back(v);
  const std::size_t m = others.size();
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<bool> sel(m, false);
    std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      WorldSet keep = WorldSet::single(s.root());
      for (std::size_t i = 0; i < m; ++i)
        if (sel[i]) keep.insert(others[i]);
      State cand = induced_state(s, keep);
      if (is_phi_state(cand, phi) && small_temporal_successor(u, cand)) return cand;
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  return std::nullopt;
}

void run_checks_on_space(SatReport& r, const StateSpace& space, ConsistencyCache& cons, std::size_t start) {
  CanonicalReport cr = canonical_structure(space, cons);
  r.checks.open = cr.open;
  r.checks.serial = cr.serial;
  r.checks.tempinc = cr.tempinc;
  r.checks.quasimodel_valid = cr.quasimodel.holds;
  if (!cr.quasimodel.holds) {
    r.reason = "fragment is not a quasimodel: " + cr.quasimodel.reason;
    return;
  }
  r.structure = cr.structure;
  for (std::size_t a = 0; a < cr.states.size(); ++a) {
    r.fragment.push_back(space[cr.states[a]]);
    if (cr.states[a] == start) r.witness_index = a;
  }
  try {
    r.lasso = realizing_lasso(*r.structure, static_cast<World>(r.witness_index));
    r.checks.lasso_realizing = is_path(*r.structure, *r.lasso) && is_realizing(*r.structure, *r.lasso);
  } catch (const QuasimodelError& e) {
    r.reason = e.what();
  }
}

bool all_checks(const SatChecks& c, bool need_model) {
  return (!need_model || c.model_eval) && c.state_contains_phi && c.state_consistent && c.open && c.serial &&
         c.tempinc && c.quasimodel_valid && c.lasso_realizing;
}

// Closes {i} under substates and small successors.  With `lean`, a member
// that already has a small successor inside gets no more, and otherwise gets
// the one whose substate closure adds the fewest new states.
std::vector<std::size_t> fragment_around(const StateSpace& space, std::size_t i, bool lean) {
  std::vector<bool> in(space.size(), false);
  std::vector<std::size_t> work, members;
  auto add_closed = [&](std::size_t a) {
    std::vector<std::size_t> stack{a};
    while (!stack.empty()) {
      const std::size_t b = stack.back();
      stack.pop_back();
      if (in[b]) continue;
      in[b] = true;
      members.push_back(b);
      work.push_back(b);
      for (std::size_t c : space.substates_of(b)) stack.push_back(c);
    }
  };
  add_closed(i);
  while (!work.empty()) {
    const std::size_t a = work.back();
    work.pop_back();
    const auto& succ = space.small_successors(a);
    if (!lean) {
      for (std::size_t b : succ) add_closed(b);
      continue;
    }
    if (std::any_of(succ.begin(), succ.end(), [&](std::size_t b) { return in[b]; })) continue;
    std::optional<std::size_t> best;
    std::size_t best_cost = 0;
    for (std::size_t b : succ) {
      std::size_t cost = 0;
      for (std::size_t c : space.substates_of(b)) cost += !in[c];
      if (!best || cost < best_cost) {
        best = b;
        best_cost = cost;
      }
    }
    if (best) add_closed(*best);
  }
  std::sort(members.begin(), members.end());
  return members;
}

SatReport trusting_route(const Formula& phi, const SatOptions& opt, SatReport r) {
  const FormulaSet phis{phi};
  StateSpace space(phis, 0, opt.space_caps);
  TrustingOracle oracle;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!in_type(space[i].root_type(), phi)) continue;
    // A lean fragment first: one successor per member.  Eventualities may
    // need more, so the full closure under small successors comes next.
    for (bool lean : {true, false}) {
      const std::vector<std::size_t> members = fragment_around(space, i, lean);
      std::vector<State> states;
      for (std::size_t a : members) states.push_back(space[a]);
      StateSpace sub(phis, std::move(states));
      ConsistencyCache cons(sub, oracle);
      SatReport attempt = r;
      attempt.witness_state = space[i];
      attempt.checks.state_contains_phi = true;
      attempt.checks.state_consistent = true;
      run_checks_on_space(attempt, sub, cons, *sub.index_of(space[i]));
      if (all_checks(attempt.checks, false)) {
        attempt.verdict = SatVerdict::Satisfiable;
        attempt.reason.clear();
        return attempt;
      }
    }
  }
  r.reason = space.truncated() ? "state space truncated; no closed fragment found" : "no closed fragment found";
  return r;
}

}  // namespace

std::string to_string(SatVerdict v) { return v == SatVerdict::Satisfiable ? "Satisfiable" : "NoWitnessFound"; }

SatReport satisfy(const Formula& phi, const SatOptions& opt) {
  SatReport r;
  r.formula = phi;
  const FormulaSet phis{phi};

  // An empty W needs no search.
  try {
    TypeSpace ts(phis);
    bool any = false;
    for (const TypeSet& t : ts.types())
      if (in_type(t, phi)) { any = true; break; }
    if (!any) {
      r.reason = "no type contains the formula";
      return r;
    }
  } catch (const std::length_error&) {
    // too many subformulas to enumerate types; go on searching
  }

  if (opt.oracle == OracleKind::Trusting) return trusting_route(phi, opt, std::move(r));

  const auto started = Clock::now();
  auto out_of_time = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count() >=
           static_cast<long long>(opt.budget_ms);
  };
  const std::vector<std::string> vars = variables(phi);
  std::optional<DynModel> found;
  auto consider = [&](DynModel m) {
    ++r.models_examined;
    const WorldSet ext = eval(m, phi);
    if (!ext.empty()) {
      r.point = ext.first();
      found = std::move(m);
      return true;
    }
    return false;
  };
  const std::size_t exhaustive = std::min(opt.cap_worlds, kExhaustiveCap);
  for (std::size_t n = 1; n <= exhaustive && !found; ++n) {
    // Models with exactly n worlds are the tail of the space for n.
    ModelSpace all(n, vars);
    const std::size_t start = n == 1 ? 0 : ModelSpace(n - 1, vars).size();
    for (std::size_t i = start; i < all.size() && !found; ++i) {
      if (r.models_examined >= opt.max_models || ((r.models_examined & 1023) == 0 && out_of_time())) {
        r.budget_exhausted = true;
        break;
      }
      consider(all[i]);
    }
    if (r.budget_exhausted) break;
  }
  if (!found && !r.budget_exhausted && opt.random_worlds > 0) {
    RandomModels rnd(std::min(opt.random_worlds, kRandomCap), vars, opt.seed);
    while (!found) {
      if (r.models_examined >= opt.max_models || ((r.models_examined & 1023) == 0 && out_of_time())) {
        r.budget_exhausted = true;
        break;
      }
      consider(rnd.next());
    }
  }
  if (!found) {
    r.reason = "no model found within budget";
    return r;
  }
  r.model = *found;
  const DynModel& m = *r.model;
  r.checks.model_eval = eval(m, phi).contains(r.point);

  const TypedPreorder typed = typed_model(m, phis);
  const State sy = state_of_point(typed, r.point);
  auto star = reduce_state(sy, phis);
  if (!star) {
    r.reason = "could not reduce the state of the satisfying point";
    return r;
  }
  r.witness_state = *star;
  r.checks.state_contains_phi = in_type(star->root_type(), phi);

  ModelSearchOracle oracle;
  oracle.add_model(m);
  const ConsistencyVerdict cv = oracle.judge(*star);
  r.checks.state_consistent = cv.kind == Consistency::Consistent && verify_verdict(*star, cv);
  if (!r.checks.state_consistent) {
    r.reason = "oracle did not confirm the witness state";
    return r;
  }

  // Close under substates and successors read off the model.
  Evaluator ev(m);
  std::vector<State> frag;
  std::vector<World> points;
  std::map<std::vector<std::uint64_t>, World> key_point;
  std::vector<std::size_t> work;
  auto add = [&](const State& s, World z) {
    const State c = canonicalize(s);
    auto flat = FragmentOracle::flat(state_key(c));
    if (key_point.count(flat)) return;
    key_point.emplace(std::move(flat), z);
    frag.push_back(c);
    points.push_back(z);
    work.push_back(frag.size() - 1);
  };
  add(*star, r.point);
  bool too_big = false;
  while (!work.empty()) {
    if (frag.size() > WorldSet::kMaxWorlds) {
      too_big = true;
      break;
    }
    const std::size_t a = work.back();
    work.pop_back();
    const State u = frag[a];
    const World z = points[a];
    const Relation rel = greatest_model_simulation(u, ev);
    for (World w = 0; w < u.size(); ++w) {
      const WorldSet cand = rel[w] & m.space().downset(z);
      if (cand.empty()) continue;  // impossible when u simulates z
      add(substate(u, w), cand.first());
    }
    const World fz = m.f(z);
    const State target = state_of_point(typed, fz);
    if (auto v = small_successor_inside(u, target, phis)) add(*v, fz);
    else add(target, fz);
  }
  if (too_big) {
    r.reason = "fragment exceeds 64 states";
    return r;
  }
  StateSpace space(phis, frag);
  FragmentOracle foracle(m, key_point);
  ConsistencyCache cons(space, foracle);
  run_checks_on_space(r, space, cons, *space.index_of(*star));
  // Re-point the witness state at its canonical copy inside the fragment.
  if (all_checks(r.checks, true)) {
    r.verdict = SatVerdict::Satisfiable;
    r.reason.clear();
  } else if (r.reason.empty()) {
    r.reason = "fragment checks failed";
  }
  return r;
}

bool verify_report(const SatReport& r) {
  if (r.verdict != SatVerdict::Satisfiable) return false;
  if (r.model && !eval(*r.model, r.formula).contains(r.point)) return false;
  if (!r.structure || !r.lasso || !r.witness_state) return false;
  if (!validate_quasimodel(*r.structure, nullptr)) return false;
  if (!in_type(r.structure->base.type(static_cast<World>(r.witness_index)), r.formula)) return false;
  if (r.lasso->worlds.empty() || r.lasso->worlds.front() != r.witness_index) return false;
  if (!is_path(*r.structure, *r.lasso) || !is_realizing(*r.structure, *r.lasso)) return false;
  if (r.model) {
    const State& s = r.fragment.at(r.witness_index);
    if (!simulates_in_model(s, *r.model, r.point)) return false;
  }
  return true;
}

}  // namespace dtl
