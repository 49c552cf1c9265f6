#pragma once

// Hilbert-style derivations: axiom schemata, rules and a step-by-step checker.
//
// Schematic letters are p and q (formulas) and Gamma (a finite set).
// Axiom names: Taut K T 4 FixDia IndDia NegNext AndNext FixHence IndHence TCont.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/formula.hpp"

namespace dtl {

class AxiomError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Instantiation {
  std::map<std::string, Formula> letters;  // "p", "q"
  std::optional<std::vector<Formula>> gamma;
};

const std::vector<std::string>& axiom_names();
/// Schematic letters an axiom uses ("Gamma" for the set).
std::vector<std::string> axiom_letters(const std::string& name);

/// Instance of a schema.  Throws AxiomError on unknown names or missing
/// letters.  Taut has no schema; use is_tautology.
Formula axiom_instance(const std::string& name, const Instantiation& inst);

/// Truth-table check with maximal non-Boolean subterms as atoms.
bool is_tautology(const Formula& f);

enum class Rule { Axiom, MP, Subs, NecBox, NecNext, NecHence };

struct ProofStep {
  Formula formula;
  Rule rule = Rule::Axiom;
  std::string axiom;           // Axiom
  Instantiation inst;          // Axiom
  std::vector<std::size_t> refs;  // 1-based; MP: {minor, implication}
  Substitution subst;          // Subs
};

struct ProofObject {
  std::vector<ProofStep> steps;
  Formula conclusion() const { return steps.empty() ? Formula{} : steps.back().formula; }
};

struct ProofVerdict {
  bool holds = true;
  std::size_t step = 0;  // 1-based index of the first bad step
  std::string reason;
  explicit operator bool() const { return holds; }
};

ProofVerdict check_proof(const ProofObject& p);

std::string rule_name(Rule r);
Rule rule_from_name(const std::string& s);  // throws std::invalid_argument

}  // namespace dtl
