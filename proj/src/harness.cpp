#include "dtl/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

#include "dtl/eval.hpp"
#include "dtl/proof.hpp"
#include "dtl/quasimodel.hpp"
#include "dtl/random_formula.hpp"
#include "dtl/simformula.hpp"
#include "dtl/simulation.hpp"

namespace dtl {
namespace {

struct Partial {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<Violation> first;

  void merge(Partial&& o) {
    checked += o.checked;
    violations += o.violations;
    if (o.first && (!first || o.first->index < first->index)) first = std::move(o.first);
  }
  void fail(Violation v) {
    ++violations;
    if (!first || v.index < first->index) first = std::move(v);
  }
};

// Runs body(i, acc) for i in [0, n).
SweepReport sweep(std::size_t n, Execution ex, const std::function<void(std::size_t, Partial&)>& body) {
  Partial total;
  if (ex == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i, total);
  } else {
#pragma omp parallel
    {
      Partial local;
#pragma omp for schedule(dynamic, 1) nowait
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) body(static_cast<std::size_t>(i), local);
#pragma omp critical(dtl_sweep_merge)
      total.merge(std::move(local));
    }
  }
  return {total.checked, total.violations, std::move(total.first)};
}

std::string show(WorldSet s) {
  std::string out = "{";
  for (World w : s) out += (out.size() > 1 ? "," : "") + std::to_string(w);
  return out + "}";
}

bool in_type(const TypeSet& t, const Formula& f) { return t.contains_mod_dneg(f); }

std::optional<Violation> bridge_violation(const DynModel& m, const FormulaSet& phis) {
  const Quasimodel q = quasimodel_of_model(m, phis);
  Evaluator ev(m);
  for (const Formula& psi : sub_pm(phis)) {
    const WorldSet ext = ev(psi);
    for (World x = 0; x < m.size(); ++x)
      if (in_type(q.base.type(x), psi) != ext.contains(x)) return Violation{0, "type disagrees with evaluation", m, x, psi};
  }
  if (auto v = validate_quasimodel(q, &phis); !v) return Violation{0, "not a quasimodel: " + v.reason, m, v.w, v.formula};
  for (World x = 0; x < m.size(); ++x)
    if (const Path o = orbit(m, x); !is_path(q, o) || !is_realizing(q, o))
      return Violation{0, "orbit is not realizing", m, x, phis[0]};
  return std::nullopt;
}

}  // namespace

void set_jobs(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

SweepReport tangle_sweep(std::size_t n_max, std::size_t family_max, Execution ex) {
  std::vector<const Preorder*> ps;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (const Preorder& p : preorders_up_to_iso(n)) ps.push_back(&p);
  return sweep(ps.size(), ex, [&](std::size_t i, Partial& acc) {
    const Preorder& p = *ps[i];
    const std::uint64_t subsets = std::uint64_t{1} << p.size();
    std::vector<WorldSet> fam;
    std::uint64_t local = 0;
    // Strictly increasing tuples of subsets.
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t from) {
      const WorldSet a = tangled_gfp(p, fam);
      const WorldSet b = tangled_cluster(p, fam);
      ++acc.checked;
      if (a != b) {
        std::string f;
        for (WorldSet s : fam) f += show(s);
        acc.fail({(static_cast<std::uint64_t>(i) << 32) | local, "gfp " + show(a) + " vs cluster " + show(b) + " on " + f,
                  std::nullopt, 0, {}});
      }
      ++local;
      if (fam.size() == family_max) return;
      for (std::uint64_t s = from; s < subsets; ++s) {
        fam.push_back(WorldSet(s));
        rec(s + 1);
        fam.pop_back();
      }
    };
    rec(0);
  });
}

SweepReport closure_degeneration(std::size_t pairs, std::size_t depth, std::uint64_t seed, Execution ex) {
  return sweep(pairs, ex, [&](std::size_t i, Partial& acc) {
    std::mt19937_64 rng(derive_seed(seed, i));
    FormulaGen g;
    g.max_depth = depth;
    const Formula gamma = random_formula(rng, g);
    DynModel m = random_model(kRandomCap, g.vars, rng);
    Evaluator ev(m);
    ++acc.checked;
    const WorldSet lhs = ev(diamond(gamma));
    const WorldSet rhs = m.space().closure(ev(gamma));
    if (lhs != rhs) acc.fail({i, "<>{g} = " + show(lhs) + ", closure = " + show(rhs), m, 0, gamma});
  });
}

SweepReport soundness_random(const SoundnessOptions& opt, Execution ex) {
  const auto& names = axiom_names();
  return sweep(opt.trials, ex, [&](std::size_t i, Partial& acc) {
    std::mt19937_64 rng(derive_seed(opt.seed, i));
    FormulaGen g;
    g.max_depth = opt.depth;
    const std::string& name = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
    const Formula inst = name == "Taut" ? random_tautology(rng, g)
                                        : axiom_instance(name, random_instantiation(rng, name, g, opt.max_gamma));
    DynModel m = random_model(opt.n_max, g.vars, rng);
    Evaluator ev(m);
    ++acc.checked;
    const WorldSet all = m.space().all();
    for (const Formula& f : {inst, box(inst), next(inst), always(inst)}) {
      const WorldSet ext = ev(f);
      if (ext != all) {
        acc.fail({i, name + " instance fails", m, (all - ext).first(), f});
        return;
      }
    }
  });
}

std::vector<std::pair<std::string, Formula>> schematic_instances(std::size_t max_gamma) {
  std::vector<std::pair<std::string, Formula>> out;
  for (const Formula& t : tautology_templates()) out.emplace_back("Taut", t);
  for (const std::string& name : axiom_names()) {
    if (name == "Taut") continue;
    const auto letters = axiom_letters(name);
    const bool has_gamma = std::find(letters.begin(), letters.end(), "Gamma") != letters.end();
    for (std::size_t k = 0; k <= (has_gamma ? max_gamma : 0); ++k) {
      Instantiation inst;
      for (const std::string& l : letters)
        if (l != "Gamma") inst.letters[l] = var(l);
      if (has_gamma) {
        std::vector<Formula> gamma;
        for (std::size_t j = 0; j < k; ++j) gamma.push_back(var("g" + std::to_string(j)));
        inst.gamma = std::move(gamma);
      }
      out.emplace_back(name, axiom_instance(name, inst));
    }
  }
  return out;
}

SweepReport soundness_exhaustive(std::size_t n_max, std::size_t max_gamma, Execution ex) {
  const auto insts = schematic_instances(max_gamma);
  std::vector<ModelSpace> spaces;
  std::vector<std::uint64_t> offset{0};
  for (const auto& [name, f] : insts) {
    spaces.emplace_back(n_max, variables(f));
    offset.push_back(offset.back() + spaces.back().size());
  }
  // One work item per (instance, model); indices are global.
  constexpr std::size_t kChunk = 256;
  const std::uint64_t total = offset.back();
  return sweep((total + kChunk - 1) / kChunk, ex, [&](std::size_t c, Partial& acc) {
    for (std::uint64_t g = c * kChunk; g < std::min<std::uint64_t>(total, (c + 1) * kChunk); ++g) {
      const std::size_t k = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), g) - offset.begin() - 1);
      DynModel m = spaces[k][g - offset[k]];
      const WorldSet ext = eval(m, insts[k].second);
      ++acc.checked;
      if (ext != m.space().all())
        acc.fail({g, insts[k].first + " schema fails", m, (m.space().all() - ext).first(), insts[k].second});
    }
  });
}

std::vector<State> literal_states(const std::vector<std::string>& vars, std::size_t n_max) {
  std::vector<TypeSet> types;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < vars.size(); ++i)
      lits.push_back((bits >> i) & 1U ? var(vars[i]) : neg(var(vars[i])));
    types.emplace_back(std::move(lits));
  }
  std::vector<State> out;
  std::unordered_set<StateKey, StateKeyHash> seen;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (const Preorder& p : rooted_preorders_up_to_iso(n)) {
      std::vector<std::size_t> odo(n, 0);
      while (true) {
        std::vector<TypeSet> ts;
        for (std::size_t j : odo) ts.push_back(types[j]);
        // Worlds of one cluster must carry pairwise distinct types.
        bool ok = true;
        for (World a = 0; a < n && ok; ++a)
          for (World b = a + 1; b < n && ok; ++b)
            if (p.equivalent(a, b) && odo[a] == odo[b]) ok = false;
        if (ok) {
          State s = canonicalize(State(TypedPreorder(p, std::move(ts)), 0));
          if (seen.insert(state_key(s)).second) out.push_back(std::move(s));
        }
        std::size_t j = 0;
        while (j < n && ++odo[j] == types.size()) odo[j++] = 0;
        if (j == n) break;
      }
    }
  return out;
}

SweepReport sim_biconditional(const std::vector<std::string>& vars, std::size_t state_worlds,
                              std::size_t model_worlds, Execution ex) {
  const std::vector<State> states = literal_states(vars, state_worlds);
  std::vector<Formula> sims;
  for (const State& s : states) sims.push_back(sim_formula(s));
  // Both sides ignore f for literal types, so the identity slice is exhaustive.
  const ModelSpace models(model_worlds, vars, true);
  const std::uint64_t ns = states.size();
  return sweep(models.size(), ex, [&](std::size_t mi, Partial& acc) {
    DynModel m = models[mi];
    Evaluator ev(m);
    for (std::size_t si = 0; si < states.size(); ++si) {
      ++acc.checked;
      const WorldSet lhs = ev(sims[si]);
      const WorldSet rhs = simulated_points(states[si], ev);
      if (lhs != rhs)
        acc.fail({mi * ns + si, "Sim extension " + show(lhs) + " vs simulated " + show(rhs) + " for state " +
                                    std::to_string(si),
                  m, 0, sims[si]});
    }
  });
}

SweepReport validity_sweep(const std::vector<Formula>& fs, std::size_t n_max, Execution ex) {
  // Group by (variables, temporal-free) so each model is built once per group.
  std::map<std::pair<std::vector<std::string>, bool>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < fs.size(); ++i) groups[{variables(fs[i]), temporal_free(fs[i])}].push_back(i);
  SweepReport total;
  for (const auto& [key, members] : groups) {
    const ModelSpace models(n_max, key.first, key.second);
    const std::uint64_t nm = models.size();
    SweepReport r = sweep(models.size(), ex, [&](std::size_t mi, Partial& acc) {
      DynModel m = models[mi];
      Evaluator ev(m);
      for (std::size_t i : members) {
        ++acc.checked;
        const WorldSet ext = ev(fs[i]);
        if (ext != m.space().all()) acc.fail({i * nm + mi, "formula " + std::to_string(i) + " not valid", m,
                                              (m.space().all() - ext).first(), fs[i]});
      }
    });
    total.checked += r.checked;
    total.violations += r.violations;
    // Order violations by formula first, then model.
    if (r.first && (!total.first || r.first->index / nm < total.first->index)) {
      r.first->index /= nm;
      total.first = std::move(r.first);
    }
  }
  return total;
}

SweepReport quasimodel_bridge(const std::vector<Formula>& pool, std::size_t n_max, Execution ex) {
  struct Item {
    std::size_t formula;
    const ModelSpace* models;
  };
  std::map<std::vector<std::string>, ModelSpace> spaces;
  std::vector<std::uint64_t> offset{0};
  std::vector<Item> items;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto vars = variables(pool[i]);
    auto it = spaces.find(vars);
    if (it == spaces.end()) it = spaces.emplace(vars, ModelSpace(n_max, vars)).first;
    items.push_back({i, &it->second});
    offset.push_back(offset.back() + it->second.size());
  }
  constexpr std::size_t kChunk = 512;
  const std::uint64_t total = offset.back();
  return sweep((total + kChunk - 1) / kChunk, ex, [&](std::size_t c, Partial& acc) {
    for (std::uint64_t g = c * kChunk; g < std::min<std::uint64_t>(total, (c + 1) * kChunk); ++g) {
      const std::size_t k = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), g) - offset.begin() - 1);
      const Formula& phi = pool[items[k].formula];
      const FormulaSet phis{phi};
      DynModel m = (*items[k].models)[g - offset[k]];
      ++acc.checked;
      if (auto v = bridge_violation(m, phis)) {
        v->index = g;
        acc.fail(std::move(*v));
      }
    }
  });
}

}  // namespace dtl
