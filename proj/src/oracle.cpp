#include "dtl/oracle.hpp"

#include <set>

#include "dtl/simformula.hpp"

namespace dtl {

std::string to_string(Consistency c) {
  switch (c) {
    case Consistency::Consistent: return "Consistent";
    case Consistency::Inconsistent: return "Inconsistent";
    case Consistency::Unknown: return "Unknown";
  }
  return "?";
}

void ModelSearchOracle::add_model(DynModel m) {
  Entry e;
  e.model = std::make_unique<DynModel>(std::move(m));
  e.ev = std::make_unique<Evaluator>(*e.model);
  hints_.push_back(std::move(e));
}

std::vector<ModelSearchOracle::Entry>& ModelSearchOracle::pool_for(const std::vector<std::string>& vars) {
  auto it = pools_.find(vars);
  if (it != pools_.end()) return it->second;
  std::vector<Entry> pool;
  auto push = [&](DynModel m) {
    Entry e;
    e.model = std::make_unique<DynModel>(std::move(m));
    e.ev = std::make_unique<Evaluator>(*e.model);
    pool.push_back(std::move(e));
  };
  if (opt_.exhaustive_worlds > 0) {
    ModelSpace space(opt_.exhaustive_worlds, vars);
    for (std::size_t i = 0; i < space.size(); ++i) push(space[i]);
  }
  RandomModels rnd(opt_.random_worlds, vars, opt_.seed);
  for (std::size_t i = 0; i < opt_.random_models; ++i) push(rnd.next());
  return pools_.emplace(vars, std::move(pool)).first->second;
}

std::optional<ConsistencyVerdict> ModelSearchOracle::try_entry(Entry& e, const State& s) {
  ++examined_;
  const WorldSet hit = simulated_points(s, *e.ev);
  if (hit.empty()) return std::nullopt;
  return ConsistencyVerdict{Consistency::Consistent, *e.model, hit.first(), std::nullopt};
}

ConsistencyVerdict ModelSearchOracle::judge(const State& s) {
  for (Entry& e : hints_)
    if (auto v = try_entry(e, s)) return *v;
  std::set<std::string> vs;
  for (const TypeSet& t : s.base().types())
    for (auto& v : variables(t)) vs.insert(v);
  for (Entry& e : pool_for(std::vector<std::string>(vs.begin(), vs.end())))
    if (auto v = try_entry(e, s)) return *v;
  return {};
}

bool ProofWitnessOracle::add(const State& s, ProofObject proof) {
  if (!check_proof(proof)) return false;
  if (proof.conclusion() != neg(sim_formula(s))) return false;
  proofs_[state_key(s)] = std::move(proof);
  return true;
}

ConsistencyVerdict ProofWitnessOracle::judge(const State& s) {
  auto it = proofs_.find(state_key(s));
  if (it == proofs_.end()) return {};
  return {Consistency::Inconsistent, std::nullopt, 0, it->second};
}

bool verify_verdict(const State& s, const ConsistencyVerdict& v) {
  switch (v.kind) {
    case Consistency::Consistent:
      if (!v.model) return true;  // trusting verdicts carry no witness
      return simulates_in_model(s, *v.model, v.point).holds &&
             eval(*v.model, sim_formula(s)).contains(v.point);
    case Consistency::Inconsistent:
      return v.proof && check_proof(*v.proof) && v.proof->conclusion() == neg(sim_formula(s));
    case Consistency::Unknown:
      return true;
  }
  return false;
}

}  // namespace dtl
