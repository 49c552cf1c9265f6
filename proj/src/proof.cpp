#include "dtl/proof.hpp"

#include <algorithm>
#include <unordered_map>

namespace dtl {
namespace {

const Formula& letter(const Instantiation& inst, const std::string& name, const std::string& ax) {
  auto it = inst.letters.find(name);
  if (it == inst.letters.end()) throw AxiomError(ax + " needs a formula for '" + name + "'");
  return it->second;
}

const std::vector<Formula>& gamma_of(const Instantiation& inst, const std::string& ax) {
  if (!inst.gamma) throw AxiomError(ax + " needs a set for 'Gamma'");
  return *inst.gamma;
}

void collect_atoms(const Formula& f, std::vector<Formula>& atoms) {
  if (f.is(Op::Not)) return collect_atoms(f.arg(), atoms);
  if (f.is(Op::And)) {
    collect_atoms(f.arg(0), atoms);
    collect_atoms(f.arg(1), atoms);
    return;
  }
  if (std::find(atoms.begin(), atoms.end(), f) == atoms.end()) atoms.push_back(f);
}

bool truth(const Formula& f, const std::vector<Formula>& atoms, std::uint64_t row) {
  if (f.is(Op::Not)) return !truth(f.arg(), atoms, row);
  if (f.is(Op::And)) return truth(f.arg(0), atoms, row) && truth(f.arg(1), atoms, row);
  auto i = std::find(atoms.begin(), atoms.end(), f) - atoms.begin();
  return (row >> i) & 1U;
}

}  // namespace

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names{"Taut",   "K",       "T",        "4",        "FixDia", "IndDia",
                                              "NegNext", "AndNext", "FixHence", "IndHence", "TCont"};
  return names;
}

std::vector<std::string> axiom_letters(const std::string& name) {
  if (name == "Taut") return {};
  if (name == "K" || name == "AndNext") return {"p", "q"};
  if (name == "T" || name == "4" || name == "FixDia" || name == "TCont") return {"Gamma"};
  if (name == "IndDia") return {"p", "Gamma"};
  if (name == "NegNext" || name == "FixHence" || name == "IndHence") return {"p"};
  throw AxiomError("unknown axiom '" + name + "'");
}

Formula axiom_instance(const std::string& name, const Instantiation& inst) {
  if (name == "K") {
    const Formula& p = letter(inst, "p", name);
    const Formula& q = letter(inst, "q", name);
    return implies(box(implies(p, q)), implies(box(p), box(q)));
  }
  if (name == "T") {
    const auto& g = gamma_of(inst, name);
    return implies(conj_all(FormulaSet(g).items()), tangle(g));
  }
  if (name == "4") {
    const auto& g = gamma_of(inst, name);
    return implies(diamond(tangle(g)), tangle(g));
  }
  if (name == "FixDia") {
    const auto& g = gamma_of(inst, name);
    const Formula d = tangle(g);
    std::vector<Formula> parts;
    for (const Formula& x : FormulaSet(g)) parts.push_back(diamond(conj(x, d)));
    return implies(d, conj_all(parts));
  }
  if (name == "IndDia") {
    const Formula& p = letter(inst, "p", name);
    const auto& g = gamma_of(inst, name);
    std::vector<Formula> parts;
    for (const Formula& x : FormulaSet(g)) parts.push_back(diamond(conj(p, x)));
    return implies(box(implies(p, conj_all(parts))), implies(p, tangle(g)));
  }
  if (name == "NegNext") {
    const Formula& p = letter(inst, "p", name);
    return iff(neg(next(p)), next(neg(p)));
  }
  if (name == "AndNext") {
    const Formula& p = letter(inst, "p", name);
    const Formula& q = letter(inst, "q", name);
    return iff(next(conj(p, q)), conj(next(p), next(q)));
  }
  if (name == "FixHence") {
    const Formula& p = letter(inst, "p", name);
    return implies(always(p), conj(p, next(always(p))));
  }
  if (name == "IndHence") {
    const Formula& p = letter(inst, "p", name);
    return implies(always(implies(p, next(p))), implies(p, always(p)));
  }
  if (name == "TCont") {
    const auto& g = gamma_of(inst, name);
    std::vector<Formula> nx;
    for (const Formula& x : g) nx.push_back(next(x));
    return implies(tangle(nx), next(tangle(g)));
  }
  if (name == "Taut") throw AxiomError("Taut has no schema; tautologies are checked directly");
  throw AxiomError("unknown axiom '" + name + "'");
}

bool is_tautology(const Formula& f) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > 24) throw std::length_error("too many atoms for a truth table");
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row)
    if (!truth(f, atoms, row)) return false;
  return true;
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "Axiom";
    case Rule::MP: return "MP";
    case Rule::Subs: return "Subs";
    case Rule::NecBox: return "NecBox";
    case Rule::NecNext: return "NecNext";
    case Rule::NecHence: return "NecHence";
  }
  return "?";
}

Rule rule_from_name(const std::string& s) {
  for (Rule r : {Rule::Axiom, Rule::MP, Rule::Subs, Rule::NecBox, Rule::NecNext, Rule::NecHence})
    if (rule_name(r) == s) return r;
  throw std::invalid_argument("unknown rule '" + s + "'");
}

ProofVerdict check_proof(const ProofObject& p) {
  if (p.steps.empty()) return {false, 0, "proof has no steps"};
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& s = p.steps[i];
    const std::size_t num = i + 1;
    auto fail = [&](std::string why) { return ProofVerdict{false, num, std::move(why)}; };
    if (!s.formula.valid()) return fail("missing formula");
    for (std::size_t r : s.refs)
      if (r == 0 || r >= num) return fail("reference " + std::to_string(r) + " does not point to an earlier step");
    auto ref = [&](std::size_t k) -> const Formula& { return p.steps[s.refs[k] - 1].formula; };
    switch (s.rule) {
      case Rule::Axiom: {
        if (!s.refs.empty()) return fail("axioms take no references");
        if (s.axiom == "Taut") {
          if (!is_tautology(s.formula)) return fail("not a propositional tautology");
          break;
        }
        Formula inst;
        try {
          inst = axiom_instance(s.axiom, s.inst);
        } catch (const AxiomError& e) {
          return fail(e.what());
        }
        if (inst != s.formula) return fail("formula is not the stated instance of " + s.axiom);
        break;
      }
      case Rule::MP: {
        if (s.refs.size() != 2) return fail("modus ponens needs two references");
        Formula lhs, rhs;
        if (!match_implication(ref(1), &lhs, &rhs)) return fail("second reference is not an implication");
        if (lhs != ref(0)) return fail("first reference is not the antecedent");
        if (rhs != s.formula) return fail("formula is not the consequent");
        break;
      }
      case Rule::Subs:
        if (s.refs.size() != 1) return fail("substitution needs one reference");
        if (substitute(ref(0), s.subst) != s.formula) return fail("formula is not the substitution instance");
        break;
      case Rule::NecBox:
      case Rule::NecNext:
      case Rule::NecHence: {
        if (s.refs.size() != 1) return fail("necessitation needs one reference");
        const Formula expect = s.rule == Rule::NecBox ? box(ref(0)) : s.rule == Rule::NecNext ? next(ref(0)) : always(ref(0));
        if (expect != s.formula) return fail("formula is not the necessitation of the reference");
        break;
      }
    }
  }
  return {};
}

}  // namespace dtl
