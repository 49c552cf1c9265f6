// Acceptance suite: one PASS/FAIL line per criterion.  Each criterion is
// exact (zero violations) and has a pinned wall-clock limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "dtl/eval.hpp"
#include "dtl/harness.hpp"
#include "dtl/json_io.hpp"
#include "dtl/parse.hpp"
#include "dtl/random_formula.hpp"
#include "dtl/satisfy.hpp"
#include "dtl/simformula.hpp"
#include "dtl/simulation.hpp"
#include "mutations.hpp"

using namespace dtl;

namespace {

struct Outcome {
  bool exact = false;
  std::string detail;
};

int g_failed = 0;

std::set<int> g_only;  // criteria named on the command line; empty runs all

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  if (!g_only.empty() && !g_only.count(id)) return;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = o.exact && secs < limit_s;
  if (!pass) ++g_failed;
  std::printf("[%s] %2d %-28s %s time=%.1fs limit=%.0fs\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              limit_s);
  std::fflush(stdout);
}

Outcome from_sweep(const SweepReport& r) {
  std::string d = "checked=" + std::to_string(r.checked) + " violations=" + std::to_string(r.violations);
  if (r.first) {
    d += " first=\"" + r.first->what + (r.first->formula.valid() ? " :: " + to_string(r.first->formula) : "") + "\"";
    if (r.first->model)
      d += " model=" + model_to_json(*r.first->model).dump() + " point=" + r.first->model->space().name(r.first->point);
  }
  return {r.ok(), d};
}

Outcome merge(const std::vector<SweepReport>& rs) {
  SweepReport t;
  for (const SweepReport& r : rs) {
    t.checked += r.checked;
    t.violations += r.violations;
    if (!t.first && r.first) t.first = r.first;
  }
  return from_sweep(t);
}

// One-variable formulas keep the exhaustive model pools small enough for
// temporal formulas (37 094 models up to four worlds).
const std::vector<Formula>& propsub_phis() {
  static const std::vector<Formula> phis = [] {
    std::vector<Formula> out;
    for (const char* s : {"p", "<>p", "F p", "G p", "X p", "<>{p, X p}", "[]p", "<>~p & X p", "G <>p", "F []p",
                          "<>{p, ~p}", "X <>p"})
      out.push_back(parse(s));
    return out;
  }();
  return phis;
}

// States of the space whose norm fits I_0.
std::vector<std::size_t> level_zero(const StateSpace& space) {
  const std::size_t bound = length(space.phi());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (norm(space[i]).nrm <= bound) out.push_back(i);
  return out;
}

// Drops states that simulate another member: Sim of a simulated state is
// implied, so the reduced disjunction is the stronger claim.
std::vector<State> minimal_states(const std::vector<State>& ss) {
  std::vector<State> out;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < ss.size() && !redundant; ++j)
      if (j != i && simulates(ss[j], ss[i]) && (!simulates(ss[i], ss[j]) || j < i)) redundant = true;
    if (!redundant) out.push_back(ss[i]);
  }
  return out;
}

std::vector<std::pair<const StateSpace*, std::size_t>> sample_states(const std::vector<std::unique_ptr<StateSpace>>& spaces,
                                                                     std::size_t count, std::uint64_t seed) {
  std::vector<std::pair<const StateSpace*, std::size_t>> all;
  for (const auto& sp : spaces)
    for (std::size_t i : level_zero(*sp)) all.emplace_back(sp.get(), i);
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > count) all.resize(count);
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) g_only.insert(std::atoi(argv[i]));
  std::printf("dtl acceptance suite\n");

  criterion(1, "tangle-oracle-equivalence", 120, [] { return from_sweep(tangle_sweep(5, 3, Execution::Parallel)); });

  criterion(2, "closure-degeneration", 30,
            [] { return from_sweep(closure_degeneration(1000, 4, 2024, Execution::Parallel)); });

  criterion(3, "soundness", 300, [] {
    SoundnessOptions opt;
    opt.trials = 10000;
    opt.n_max = 6;
    opt.seed = 7;
    return merge({soundness_random(opt, Execution::Parallel), soundness_exhaustive(3, 2, Execution::Parallel)});
  });

  criterion(4, "sim-biconditional", 600, [] {
    return merge({sim_biconditional({}, 4, 4, Execution::Parallel), sim_biconditional({"p"}, 4, 4, Execution::Parallel),
                  sim_biconditional({"p", "q"}, 4, 4, Execution::Parallel)});
  });

  criterion(5, "propsub-items", 600, [] {
    const SpaceCaps caps{4, 200000};
    std::vector<std::unique_ptr<StateSpace>> level0, level1;
    for (const Formula& phi : propsub_phis()) {
      level0.push_back(std::make_unique<StateSpace>(FormulaSet{phi}, 0, caps));
      level1.push_back(std::make_unique<StateSpace>(FormulaSet{phi}, 1, caps));
    }
    std::vector<SweepReport> reports;
    std::vector<Formula> item1, item2, item3, item4, item5;
    for (auto [sp, i] : sample_states(level0, 50, 11)) {
      auto fs = propsub_item1((*sp)[i]);
      item1.insert(item1.end(), fs.begin(), fs.end());
    }
    for (auto [sp, i] : sample_states(level0, 50, 12)) {
      // Pair with every space member it simulates strictly below it.
      for (std::size_t j = 0; j < sp->size(); ++j)
        if (j != i && simulates((*sp)[j], (*sp)[i]) && item2.size() < 400) item2.push_back(propsub_item2((*sp)[i], (*sp)[j]));
    }
    for (auto [sp, i] : sample_states(level0, 50, 13)) {
      auto fs = propsub_item3((*sp)[i]);
      item3.insert(item3.end(), fs.begin(), fs.end());
    }
    std::size_t item4_instances = 0;
    for (const auto& sp : level0) {
      std::vector<State> i0;
      for (std::size_t i : level_zero(*sp)) i0.push_back((*sp)[i]);
      for (const Formula& psi : sub_pm(sp->phi())) {
        std::vector<State> with;
        for (const State& s : i0)
          if (s.root_type().contains(strip(psi))) with.push_back(s);
        item4.push_back(propsub_item4(psi, minimal_states(with)));
        ++item4_instances;
      }
    }
    for (auto [sp, i] : sample_states(level1, 50, 15)) {
      std::vector<State> succ;
      for (std::size_t j : sp->small_successors(i)) succ.push_back((*sp)[j]);
      item5.push_back(propsub_item5((*sp)[i], minimal_states(succ)));
    }
    std::string detail;
    bool exact = true;
    int k = 1;
    for (const auto* fs : {&item1, &item2, &item3, &item4, &item5}) {
      const SweepReport r = validity_sweep(*fs, 4, Execution::Parallel);
      const Outcome o = from_sweep(r);
      exact = exact && o.exact && !fs->empty();
      detail += "item" + std::to_string(k++) + "{formulas=" + std::to_string(fs->size()) + " " + o.detail + "} ";
    }
    detail += "item4_instances=" + std::to_string(item4_instances);
    return Outcome{exact, detail};
  });

  criterion(6, "quasimodel-bridge", 180, [] {
    std::mt19937_64 rng(606);
    FormulaGen g;
    g.vars = {"p"};
    g.max_depth = 3;
    std::set<Formula> seen;
    std::vector<Formula> pool;
    while (pool.size() < 200) {
      const Formula f = random_formula(rng, g);
      if (seen.insert(f).second) pool.push_back(f);
    }
    return from_sweep(quasimodel_bridge(pool, 4, Execution::Parallel));
  });

  criterion(7, "path-continuity", 60, [] {
    std::size_t checked = 0, bad = 0;
    std::mt19937_64 rng(707);
    FormulaGen g;
    g.max_depth = 3;
    while (checked < 1000) {
      const DynModel m = random_model(6, g.vars, rng);
      const Quasimodel q = quasimodel_of_model(m, FormulaSet{random_formula(rng, g)});
      if (!validate_quasimodel(q)) {
        ++bad;
        ++checked;
        continue;
      }
      // A random path, then a random start below its first world.
      Path w{{static_cast<World>(std::uniform_int_distribution<std::size_t>(0, m.size() - 1)(rng))}, std::nullopt};
      const std::size_t len = 1 + std::uniform_int_distribution<std::size_t>(0, 11)(rng);
      while (w.worlds.size() < len) {
        const WorldSet next = q.step[w.worlds.back()];
        std::vector<World> opts(next.begin(), next.end());
        w.worlds.push_back(opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)]);
      }
      const WorldSet below = m.space().downset(w.worlds[0]);
      std::vector<World> starts(below.begin(), below.end());
      const World v0 = starts[std::uniform_int_distribution<std::size_t>(0, starts.size() - 1)(rng)];
      const Path v = extend_path_below(q, w, v0, len);
      ++checked;
      bool ok = v.worlds.size() == len && v.worlds[0] == v0 && is_path(q, v);
      for (std::size_t i = 0; ok && i < len; ++i) ok = m.space().le(v.worlds[i], w.worlds[i]);
      if (!ok) ++bad;
    }
    return Outcome{bad == 0, "triples=" + std::to_string(checked) + " violations=" + std::to_string(bad)};
  });

  criterion(8, "efficient-paths-finite", 300, [] {
    std::mt19937_64 rng(808);
    FormulaGen g;
    g.vars = {"p"};
    g.max_depth = 2;
    std::size_t spaces = 0, nodes = 0, witnesses = 0, crosschecked = 0, bad = 0, attempts = 0;
    PathCount total_paths = 0;
    auto add_count = [](PathCount x, PathCount y) { return x + y < x ? ~PathCount{0} : x + y; };
    while (spaces < 100 && attempts < 100000) {
      ++attempts;
      const Formula phi = random_formula(rng, g);
      StateSpace space(FormulaSet{phi}, 0, SpaceCaps{4, 200});
      if (space.truncated() || space.size() == 0) continue;
      ++spaces;
      const std::size_t start = std::uniform_int_distribution<std::size_t>(0, space.size() - 1)(rng);
      const EfficientPathDag dag = efficient_path_dag(start, space);
      if (dag.truncated) ++bad;
      total_paths = add_count(total_paths, dag.maximal_paths());
      nodes += dag.nodes.size();
      // Simulation recomputed here, independent of the space's cache.
      std::vector<signed char> sim(space.size() * space.size(), -1);
      auto sims = [&](std::size_t a, std::size_t b) {
        signed char& c = sim[a * space.size() + b];
        if (c < 0) c = simulates(space[a], space[b]).holds ? 1 : 0;
        return c == 1;
      };
      for (std::size_t id = 0; id < dag.nodes.size(); ++id) {
        const std::vector<std::size_t> pre = dag.prefix(id);
        for (std::size_t c : dag.nodes[id].children)
          for (std::size_t m : pre)
            if (sims(m, dag.nodes[c].state)) ++bad;
        for (std::size_t j : dag.pruned(id, space)) {
          ++witnesses;
          if (std::none_of(pre.begin(), pre.end(), [&](std::size_t m) { return sims(m, j); })) ++bad;
        }
      }
      // Where the explicit enumeration finishes, it must list the same paths.
      const EfficientPaths ep = efficient_paths(start, space, 200000);
      if (!ep.truncated) {
        ++crosschecked;
        auto listed = ep.paths;
        auto expanded = dag.expand(ep.paths.size() + 1);
        std::sort(listed.begin(), listed.end());
        std::sort(expanded.begin(), expanded.end());
        if (listed != expanded) ++bad;
      }
    }
    return Outcome{bad == 0 && spaces == 100,
                   "spaces=" + std::to_string(spaces) + " dag_nodes=" + std::to_string(nodes) +
                       " paths=" + to_string_count(total_paths) + " witnesses=" + std::to_string(witnesses) +
                       " crosschecked=" + std::to_string(crosschecked) + " violations=" + std::to_string(bad)};
  });

  criterion(9, "satisfy-soundness", 600, [] {
    std::mt19937_64 rng(909);
    FormulaGen g;
    g.max_depth = 3;
    std::size_t sat = 0, verified = 0, total = 0;
    std::string first_bad;
    for (std::size_t i = 0; i < 100; ++i) {
      const DynModel m = random_model(4, g.vars, rng);
      const FormulaSet phis{random_formula(rng, g)};
      const World x = static_cast<World>(std::uniform_int_distribution<std::size_t>(0, m.size() - 1)(rng));
      const TypeSet t = type_of_world(m, phis, x);
      const Formula phi = conj_all(t.items());
      ++total;
      SatOptions opt;
      opt.seed = derive_seed(909, i);
      const SatReport r = satisfy(phi, opt);
      if (r.verdict == SatVerdict::Satisfiable) ++sat;
      if (r.verdict == SatVerdict::Satisfiable && verify_report(r)) ++verified;
      else if (first_bad.empty()) first_bad = to_string(phi) + " (" + r.reason + ")";
    }
    std::size_t refuted = 0, contradictions = 0;
    for (const char* s : {"p & ~p", "<>p & []~p", "X p & X ~p", "G p & F ~p", "<>{p, q} & ~<>p", "X (p & ~p)",
                          "[]p & <>~p", "G (p & q) & ~q"}) {
      ++contradictions;
      if (satisfy(parse(s)).verdict == SatVerdict::NoWitnessFound) ++refuted;
      else if (first_bad.empty()) first_bad = s;
    }
    std::string d = "satisfiable=" + std::to_string(sat) + "/" + std::to_string(total) +
                    " verified=" + std::to_string(verified) + " contradictions_refused=" + std::to_string(refuted) + "/" +
                    std::to_string(contradictions);
    if (!first_bad.empty()) d += " first=\"" + first_bad + "\"";
    return Outcome{verified == total && refuted == contradictions, d};
  });

  criterion(10, "proof-checker", 10, [] {
    std::vector<ProofObject> corpus;
    for (const auto& e : std::filesystem::directory_iterator(DTL_TEST_DATA "/proofs"))
      if (e.path().extension() == ".json") corpus.push_back(proof_from_json(load_json_file(e.path().string())));
    std::size_t accepted = 0;
    for (const ProofObject& p : corpus) accepted += check_proof(p).holds ? 1 : 0;
    const auto muts = testing::single_step_mutations(corpus, 200, 1010);
    std::size_t rejected = 0;
    for (const auto& mu : muts) rejected += check_proof(mu.proof).holds ? 0 : 1;
    return Outcome{corpus.size() == 20 && accepted == 20 && muts.size() == 200 && rejected == 200,
                   "proofs=" + std::to_string(corpus.size()) + " accepted=" + std::to_string(accepted) +
                       " mutations=" + std::to_string(muts.size()) + " rejected=" + std::to_string(rejected)};
  });

  std::printf("%s: %d criteria failed\n", g_failed ? "FAIL" : "PASS", g_failed);
  return g_failed ? 1 : 0;
}
