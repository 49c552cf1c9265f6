#include "dtl/json_io.hpp"

#include <fstream>

#include "dtl/parse.hpp"

namespace dtl {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  return j;
}

Formula formula_of(const json& j) { return parse(str(j, "formula")); }

Preorder preorder_of(const json& j) {
  std::vector<std::string> names;
  for (const json& w : array(field(j, "worlds"), "worlds")) names.push_back(str(w, "world id"));
  if (names.empty()) throw FormatError("a structure needs at least one world");
  {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw FormatError("duplicate world id");
  }
  // Resolve ids against a provisional discrete space.
  const Preorder ids = Preorder::from_down_sets([&] {
    std::vector<WorldSet> d;
    for (World w = 0; w < names.size(); ++w) d.push_back(WorldSet::single(w));
    return d;
  }(), names);
  std::vector<std::pair<World, World>> below;
  if (j.contains("order"))
    for (const json& pr : array(j["order"], "order")) {
      if (!pr.is_array() || pr.size() != 2) throw FormatError("order entries must be [lower, upper] pairs");
      below.emplace_back(ids.index_of(str(pr[0], "world id")), ids.index_of(str(pr[1], "world id")));
    }
  return Preorder(names.size(), below, names);
}

json order_json(const Preorder& p) {
  json out = json::array();
  for (auto [v, w] : p.pairs()) out.push_back({p.name(v), p.name(w)});
  return out;
}

std::vector<TypeSet> types_of(const json& j, const Preorder& p) {
  const json& t = field(j, "types");
  if (!t.is_object()) throw FormatError("types must map world ids to formula lists");
  std::vector<TypeSet> out(p.size());
  std::vector<bool> seen(p.size(), false);
  for (auto it = t.begin(); it != t.end(); ++it) {
    const World w = p.index_of(it.key());
    std::vector<Formula> fs;
    for (const json& f : array(it.value(), "type")) fs.push_back(formula_of(f));
    out[w] = make_type(fs);
    seen[w] = true;
  }
  for (World w = 0; w < p.size(); ++w)
    if (!seen[w]) throw FormatError("world '" + p.name(w) + "' has no type");
  return out;
}

json typed_json(const TypedPreorder& a) {
  json j;
  j["worlds"] = a.space().names();
  j["order"] = order_json(a.space());
  json t = json::object();
  for (World w = 0; w < a.size(); ++w) {
    json fs = json::array();
    for (const Formula& f : a.type(w)) fs.push_back(to_string(f));
    t[a.space().name(w)] = std::move(fs);
  }
  j["types"] = std::move(t);
  return j;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

json worlds_to_json(const Preorder& p, WorldSet s) { return p.sorted_names(s); }

json model_to_json(const DynModel& m) {
  const Preorder& p = m.space();
  json j;
  j["worlds"] = p.names();
  j["order"] = order_json(p);
  json f = json::object();
  for (World w = 0; w < m.size(); ++w) f[p.name(w)] = p.name(m.f(w));
  j["f"] = std::move(f);
  json val = json::object();
  for (const auto& [v, s] : m.valuation()) val[v] = worlds_to_json(p, s);
  j["val"] = std::move(val);
  return j;
}

DynModel model_from_json(const json& j) {
  Preorder p = preorder_of(j);
  const json& fj = field(j, "f");
  if (!fj.is_object()) throw FormatError("f must map world ids to world ids");
  std::vector<World> f(p.size(), 0);
  std::vector<bool> seen(p.size(), false);
  for (auto it = fj.begin(); it != fj.end(); ++it) {
    const World w = p.index_of(it.key());
    f[w] = p.index_of(str(it.value(), "f value"));
    seen[w] = true;
  }
  for (World w = 0; w < p.size(); ++w)
    if (!seen[w]) throw ModelError("f is not total: no image for '" + p.name(w) + "'");
  std::map<std::string, WorldSet> val;
  if (j.contains("val")) {
    if (!j["val"].is_object()) throw FormatError("val must map variables to world lists");
    for (auto it = j["val"].begin(); it != j["val"].end(); ++it) {
      WorldSet s;
      for (const json& w : array(it.value(), "valuation")) s.insert(p.index_of(str(w, "world id")));
      val[it.key()] = s;
    }
  }
  return DynModel(std::move(p), std::move(f), std::move(val));
}

json state_to_json(const State& s) {
  json j = typed_json(s.base());
  j["root"] = s.space().name(s.root());
  return j;
}

State state_from_json(const json& j) {
  Preorder p = preorder_of(j);
  std::vector<TypeSet> types = types_of(j, p);
  const World root = p.index_of(str(field(j, "root"), "root"));
  return State(TypedPreorder(std::move(p), std::move(types)), root);
}

json quasimodel_to_json(const Quasimodel& q) {
  json j = typed_json(q.base);
  json step = json::array();
  for (World w = 0; w < q.step.size(); ++w)
    for (World v : q.step[w]) step.push_back({q.base.space().name(w), q.base.space().name(v)});
  j["step"] = std::move(step);
  return j;
}

Quasimodel quasimodel_from_json(const json& j) {
  Preorder p = preorder_of(j);
  std::vector<TypeSet> types = types_of(j, p);
  Relation step(p.size());
  for (const json& pr : array(field(j, "step"), "step")) {
    if (!pr.is_array() || pr.size() != 2) throw FormatError("step entries must be [from, to] pairs");
    step[p.index_of(str(pr[0], "world id"))].insert(p.index_of(str(pr[1], "world id")));
  }
  return Quasimodel{TypedPreorder(std::move(p), std::move(types)), std::move(step)};
}

json proof_to_json(const ProofObject& p) {
  json steps = json::array();
  for (const ProofStep& s : p.steps) {
    json j;
    j["formula"] = to_string(s.formula);
    j["rule"] = rule_name(s.rule);
    if (s.rule == Rule::Axiom) {
      j["name"] = s.axiom;
      json inst = json::object();
      for (const auto& [l, f] : s.inst.letters) inst[l] = to_string(f);
      if (s.inst.gamma) {
        json g = json::array();
        for (const Formula& f : *s.inst.gamma) g.push_back(to_string(f));
        inst["Gamma"] = std::move(g);
      }
      if (!inst.empty()) j["inst"] = std::move(inst);
    } else {
      j["refs"] = s.refs;
    }
    if (s.rule == Rule::Subs) {
      json sub = json::object();
      for (const auto& [v, f] : s.subst) sub[v] = to_string(f);
      j["subst"] = std::move(sub);
    }
    steps.push_back(std::move(j));
  }
  return json{{"steps", std::move(steps)}};
}

ProofObject proof_from_json(const json& j) {
  ProofObject p;
  for (const json& sj : array(field(j, "steps"), "steps")) {
    ProofStep s;
    s.formula = formula_of(field(sj, "formula"));
    try {
      s.rule = rule_from_name(str(field(sj, "rule"), "rule"));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    if (s.rule == Rule::Axiom) {
      s.axiom = str(field(sj, "name"), "axiom name");
      if (sj.contains("inst")) {
        const json& inst = sj["inst"];
        if (!inst.is_object()) throw FormatError("inst must be an object");
        for (auto it = inst.begin(); it != inst.end(); ++it) {
          if (it.key() == "Gamma") {
            std::vector<Formula> g;
            for (const json& f : array(it.value(), "Gamma")) g.push_back(formula_of(f));
            s.inst.gamma = std::move(g);
          } else {
            s.inst.letters[it.key()] = formula_of(it.value());
          }
        }
      }
    } else {
      for (const json& r : array(field(sj, "refs"), "refs")) {
        if (!r.is_number_unsigned()) throw FormatError("refs must be positive step numbers");
        s.refs.push_back(r.get<std::size_t>());
      }
    }
    if (s.rule == Rule::Subs) {
      const json& sub = field(sj, "subst");
      if (!sub.is_object()) throw FormatError("subst must map variables to formulas");
      for (auto it = sub.begin(); it != sub.end(); ++it) s.subst[it.key()] = formula_of(it.value());
    }
    p.steps.push_back(std::move(s));
  }
  return p;
}

json path_to_json(const Path& p, const Preorder& space) {
  json worlds = json::array();
  for (World w : p.worlds) worlds.push_back(space.name(w));
  json j{{"worlds", std::move(worlds)}};
  j["loop"] = p.loop ? json(*p.loop) : json(nullptr);
  return j;
}

json violation_to_json(const Violation& v) {
  json j{{"index", v.index}, {"what", v.what}};
  if (v.model) {
    j["model"] = model_to_json(*v.model);
    j["point"] = v.model->space().name(v.point);
  }
  if (v.formula.valid()) j["formula"] = to_string(v.formula);
  return j;
}

json sweep_to_json(const SweepReport& r) {
  json j{{"checked", r.checked}, {"violations", r.violations}};
  j["first_violation"] = r.first ? violation_to_json(*r.first) : json(nullptr);
  return j;
}

json sat_report_to_json(const SatReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["formula"] = to_string(r.formula);
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["models_examined"] = r.models_examined;
  j["budget_exhausted"] = r.budget_exhausted;
  const SatChecks& c = r.checks;
  j["checks"] = {{"model_eval", c.model_eval},
                 {"state_contains_formula", c.state_contains_phi},
                 {"state_consistent", c.state_consistent},
                 {"open", c.open},
                 {"serial", c.serial},
                 {"tempinc", c.tempinc},
                 {"quasimodel", c.quasimodel_valid},
                 {"lasso_realizing", c.lasso_realizing}};
  if (r.model) {
    j["model"] = model_to_json(*r.model);
    j["point"] = r.model->space().name(r.point);
  }
  if (r.witness_state) j["witness_state"] = state_to_json(*r.witness_state);
  if (r.structure) {
    j["quasimodel"] = quasimodel_to_json(*r.structure);
    j["witness_world"] = r.structure->base.space().name(static_cast<World>(r.witness_index));
    if (r.lasso) j["lasso"] = path_to_json(*r.lasso, r.structure->base.space());
  }
  return j;
}

}  // namespace dtl
