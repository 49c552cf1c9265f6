// dtl: command-line front end.  Results are JSON on stdout, diagnostics on
// stderr.  Exit status: 0 success, 1 negative verdict, 2 usage or input error.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dtl/eval.hpp"
#include "dtl/harness.hpp"
#include "dtl/json_io.hpp"
#include "dtl/parse.hpp"
#include "dtl/simformula.hpp"
#include "dtl/simulation.hpp"

using namespace dtl;

namespace {

bool g_pretty = false;

int emit(const json& j, int code = 0) {
  std::cout << (g_pretty ? j.dump(2) : j.dump()) << '\n';
  return code;
}

std::vector<std::string> split_vars(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string v; std::getline(in, v, ',');)
    if (!v.empty()) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic topological logic with the tangled modality"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  int jobs = 0;
  std::uint64_t seed = 1;
  app.add_flag("--pretty", g_pretty, "Indent JSON output");
  app.add_option("--jobs", jobs, "Threads for parallel sweeps");
  app.add_option("--seed", seed, "Master seed");

  std::string formula_text, model_path, state_path, other_path, phi_text, vars_text = "p";
  std::string point, oracle_name = "model-search";
  bool strict = false, identity = false, exhaustive = false;
  std::size_t worlds = 2, limit = 10, trials = 10000, cap_worlds = 4, max_models = 200000;
  std::uint64_t budget_ms = 60000;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a formula");
  parse_cmd->add_option("formula", formula_text)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Extension of a formula in a model");
  eval_cmd->add_option("--model", model_path)->required();
  eval_cmd->add_option("--formula", formula_text)->required();
  eval_cmd->add_flag("--strict", strict, "Reject variables missing from the valuation");

  auto* check_model_cmd = app.add_subcommand("check-model", "Validate a model file");
  check_model_cmd->add_option("model", model_path)->required();

  auto* sim_cmd = app.add_subcommand("sim", "Does a state simulate a state, or a model point?");
  sim_cmd->add_option("state", state_path)->required();
  sim_cmd->add_option("other", other_path, "Second state");
  sim_cmd->add_option("--model", model_path);
  sim_cmd->add_option("--point", point);

  auto* simf_cmd = app.add_subcommand("simformula", "Print the simulation formula of a state");
  simf_cmd->add_option("state", state_path)->required();

  auto* qm_cmd = app.add_subcommand("quasimodel-check", "Validate a quasimodel file");
  qm_cmd->add_option("quasimodel", other_path)->required();
  qm_cmd->add_option("--phi", phi_text, "Formulas separated by ';'");

  auto* enum_cmd = app.add_subcommand("enumerate", "Count or sample models");
  enum_cmd->add_option("--worlds", worlds)->check(CLI::Range(1, 64));
  enum_cmd->add_option("--vars", vars_text, "Comma-separated variables");
  enum_cmd->add_flag("--identity", identity, "Identity maps only");
  enum_cmd->add_option("--limit", limit, "Models to print");
  bool random = false;
  enum_cmd->add_flag("--random", random, "Sample instead of enumerating");

  auto* sat_cmd = app.add_subcommand("satisfy", "Bounded satisfiability search with witnesses");
  sat_cmd->add_option("formula", formula_text)->required();
  sat_cmd->add_option("--cap-worlds", cap_worlds);
  sat_cmd->add_option("--budget-ms", budget_ms);
  sat_cmd->add_option("--max-models", max_models);
  sat_cmd->add_option("--oracle", oracle_name)->check(CLI::IsMember({"model-search", "trusting"}));

  auto* proof_cmd = app.add_subcommand("check-proof", "Check a proof object");
  proof_cmd->add_option("proof", other_path)->required();

  auto* snd_cmd = app.add_subcommand("soundness-test", "Randomized soundness harness");
  snd_cmd->add_option("--trials", trials);
  snd_cmd->add_flag("--exhaustive", exhaustive, "Also sweep schematic instances on small models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  set_jobs(jobs);

  try {
    if (*parse_cmd) {
      const Formula f = parse(formula_text);
      json subs = json::array();
      for (const Formula& s : subformulas(FormulaSet{f})) subs.push_back(to_string(s));
      return emit({{"formula", to_string(f)}, {"length", length(FormulaSet{f})}, {"subformulas", subs}});
    }
    if (*eval_cmd) {
      const DynModel m = model_from_json(load_json_file(model_path));
      const Formula f = parse(formula_text);
      return emit({{"formula", to_string(f)}, {"worlds", worlds_to_json(m.space(), eval(m, f, strict))}});
    }
    if (*check_model_cmd) {
      const json j = load_json_file(model_path);
      try {
        const DynModel m = model_from_json(j);
        return emit({{"valid", true}, {"worlds", m.size()}});
      } catch (const ModelError& e) {
        return emit({{"valid", false}, {"error", e.what()}}, 1);
      }
    }
    if (*sim_cmd) {
      const State s = state_from_json(load_json_file(state_path));
      if (!model_path.empty()) {
        const DynModel m = model_from_json(load_json_file(model_path));
        if (point.empty()) {
          Evaluator ev(m);
          return emit({{"points", worlds_to_json(m.space(), simulated_points(s, ev))}});
        }
        const World x = m.space().index_of(point);
        const SimVerdict v = simulates_in_model(s, m, x);
        return emit({{"simulates", v.holds}}, v.holds ? 0 : 1);
      }
      if (other_path.empty()) {
        std::cerr << "sim: give a second state or --model\n";
        return 2;
      }
      const State t = state_from_json(load_json_file(other_path));
      const SimVerdict v = simulates(s, t);
      json rel = json::array();
      for (World w = 0; w < v.relation.size(); ++w)
        for (World u : v.relation[w]) rel.push_back({s.space().name(w), t.space().name(u)});
      return emit({{"simulates", v.holds}, {"relation", rel}}, v.holds ? 0 : 1);
    }
    if (*simf_cmd) {
      const State s = state_from_json(load_json_file(state_path));
      return emit({{"formula", to_string(sim_formula(s))}});
    }
    if (*qm_cmd) {
      const Quasimodel q = quasimodel_from_json(load_json_file(other_path));
      std::optional<FormulaSet> phi;
      if (!phi_text.empty()) {
        phi.emplace();
        std::stringstream in(phi_text);
        for (std::string part; std::getline(in, part, ';');) phi->insert(parse(part));
      }
      const QuasimodelVerdict v = validate_quasimodel(q, phi ? &*phi : nullptr);
      json j{{"valid", v.holds}};
      if (!v.holds) {
        j["reason"] = v.reason;
        j["world"] = q.base.space().name(v.w);
        if (v.formula.valid()) j["formula"] = to_string(v.formula);
      }
      return emit(j, v.holds ? 0 : 1);
    }
    if (*enum_cmd) {
      const auto vars = split_vars(vars_text);
      json models = json::array();
      if (random) {
        RandomModels gen(worlds, vars, seed);
        for (std::size_t i = 0; i < limit; ++i) models.push_back(model_to_json(gen.next()));
        return emit({{"seed", seed}, {"models", models}});
      }
      const ModelSpace space(worlds, vars, identity);
      for (std::size_t i = 0; i < std::min(limit, space.size()); ++i) models.push_back(model_to_json(space[i]));
      json per_size = json::array();
      for (std::size_t n = 1; n <= worlds; ++n) per_size.push_back(preorders_up_to_iso(n).size());
      return emit({{"count", space.size()}, {"preorders", per_size}, {"models", models}});
    }
    if (*sat_cmd) {
      SatOptions opt;
      opt.cap_worlds = cap_worlds;
      opt.budget_ms = budget_ms;
      opt.max_models = max_models;
      opt.seed = seed;
      opt.oracle = oracle_name == "trusting" ? OracleKind::Trusting : OracleKind::ModelSearch;
      const SatReport r = satisfy(parse(formula_text), opt);
      return emit(sat_report_to_json(r), r.verdict == SatVerdict::Satisfiable ? 0 : 1);
    }
    if (*proof_cmd) {
      const ProofObject p = proof_from_json(load_json_file(other_path));
      const ProofVerdict v = check_proof(p);
      json j{{"valid", v.holds}, {"steps", p.steps.size()}};
      if (!v.holds) {
        j["step"] = v.step;
        j["reason"] = v.reason;
      } else {
        j["conclusion"] = to_string(p.conclusion());
      }
      return emit(j, v.holds ? 0 : 1);
    }
    if (*snd_cmd) {
      SoundnessOptions opt;
      opt.trials = trials;
      opt.seed = seed;
      const SweepReport r = soundness_random(opt, Execution::Parallel);
      json j{{"trials", trials}, {"seed", seed}, {"random", sweep_to_json(r)}};
      bool ok = r.ok();
      if (exhaustive) {
        const SweepReport e = soundness_exhaustive(3, 2, Execution::Parallel);
        j["exhaustive"] = sweep_to_json(e);
        ok = ok && e.ok();
      }
      return emit(j, ok ? 0 : 1);
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return 2;
  } catch (const StateError& e) {
    std::cerr << "state error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
