#include "dtl/simformula.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <unordered_map>

namespace dtl {
namespace {

// Representative of a cluster: the member with the least type, so that the
// construction does not depend on world numbering.
World representative(const State& s, WorldSet cluster) {
  World best = cluster.first();
  for (World w : cluster)
    if (s.type(w) < s.type(best)) best = w;
  return best;
}

class Memo {
public:
  std::optional<Formula> find(const StateKey& k) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void put(const StateKey& k, const Formula& f) {
    std::unique_lock lock(mu_);
    map_.emplace(k, f);
  }

private:
  mutable std::shared_mutex mu_;
  std::unordered_map<StateKey, Formula, StateKeyHash> map_;
};

Memo& core_memo() {
  static Memo m;
  return m;
}
Memo& sim_memo() {
  static Memo m;
  return m;
}

Formula core(const State& s) {
  const StateKey key = state_key(s);
  if (auto f = core_memo().find(key)) return *f;

  const Preorder& p = s.space();
  std::vector<Formula> below;
  for (WorldSet d : p.daughters(s.root()))
    below.push_back(diamond(core(substate(s, representative(s, d)))));
  std::sort(below.begin(), below.end(), [](const Formula& a, const Formula& b) { return compare(a, b) < 0; });
  below.erase(std::unique(below.begin(), below.end()), below.end());

  auto with_below = [&](const TypeSet& t) {
    std::vector<Formula> parts(t.begin(), t.end());
    parts.insert(parts.end(), below.begin(), below.end());
    return conj_all(parts);
  };
  std::vector<Formula> members;
  for (World c : p.cluster(s.root())) members.push_back(with_below(s.type(c)));
  Formula f = conj(with_below(s.root_type()), tangle(std::move(members)));
  core_memo().put(key, f);
  return f;
}

}  // namespace

Formula sim_core(const State& s) { return core(s); }

bool indicator_typed(const State& s) {
  const std::vector<TypeSet> range = s.type_range();
  std::set<std::string> vars;
  for (const TypeSet& t : range)
    for (auto& v : variables(t)) vars.insert(v);
  if (vars.size() != range.size()) return false;
  std::set<std::string> positives;
  for (const TypeSet& t : range) {
    if (t.size() != vars.size()) return false;
    std::string pos;
    std::size_t count = 0;
    for (const Formula& f : t) {
      if (f.is(Op::Var)) {
        pos = f.name();
        ++count;
      } else if (!(f.is(Op::Not) && f.arg().is(Op::Var))) {
        return false;
      }
    }
    if (count != 1 || !positives.insert(pos).second) return false;
  }
  return true;
}

Formula sim_formula(const State& s) {
  if (auto d = distinctly_typed(s); !d)
    throw StateError("state is not distinctly typed: " + s.space().name(d.w) + " and " + s.space().name(d.v));
  const StateKey key = state_key(s);
  if (auto f = sim_memo().find(key)) return *f;
  Formula f;
  if (indicator_typed(s)) {
    f = sim_core(s);
  } else {
    IndicatorState ip = state_p(s);
    f = substitute(sim_core(ip.state), ip.back);
  }
  sim_memo().put(key, f);
  return f;
}

bool temporal_free(const Formula& f) {
  if (f.is(Op::Next) || f.is(Op::Always)) return false;
  for (const Formula& a : f.args())
    if (!temporal_free(a)) return false;
  return true;
}

std::optional<Counterexample> find_countermodel(const Formula& f, std::size_t n_max,
                                                const std::vector<std::string>& vars) {
  ModelSpace pool(n_max, vars, temporal_free(f));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    DynModel m = pool[i];
    const WorldSet bad = m.space().all() - eval(m, f);
    if (!bad.empty()) return Counterexample{i, std::move(m), bad.first(), f};
  }
  return std::nullopt;
}

std::vector<Formula> propsub_item1(const State& w) {
  const Formula s = sim_formula(w);
  std::vector<Formula> out;
  for (const Formula& psi : w.root_type()) out.push_back(implies(s, psi));
  return out;
}

Formula propsub_item2(const State& w, const State& v) { return implies(sim_formula(w), sim_formula(v)); }

std::vector<Formula> propsub_item3(const State& w) {
  const Formula s = sim_formula(w);
  std::vector<Formula> out;
  for (const State& v : substates(w)) out.push_back(implies(s, diamond(sim_formula(v))));
  return out;
}

Formula propsub_item4(const Formula& psi, const std::vector<State>& i0) {
  std::vector<Formula> ds;
  for (const State& s : i0)
    if (s.root_type().contains(strip(psi))) ds.push_back(sim_formula(s));
  return implies(psi, disj_all(ds));
}

Formula propsub_item5(const State& w, const std::vector<State>& successors) {
  std::vector<Formula> ds;
  for (const State& v : successors) ds.push_back(sim_formula(v));
  return implies(sim_formula(w), next(disj_all(ds)));
}

}  // namespace dtl
