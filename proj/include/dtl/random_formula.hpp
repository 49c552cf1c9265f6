#pragma once

// Random formulas, tautologies and axiom instantiations for property sweeps.

#include <random>
#include <string>
#include <vector>

#include "dtl/proof.hpp"

namespace dtl {

struct FormulaGen {
  std::vector<std::string> vars{"p", "q"};
  std::size_t max_depth = 4;  // connective nesting; a variable has depth 0
  bool temporal = true;       // allow X and G
  std::size_t max_tangle = 3;
};

/// Connective nesting depth: Formula::depth() minus one.
inline std::size_t connective_depth(const Formula& f) { return f.depth() - 1; }

Formula random_formula(std::mt19937_64& rng, const FormulaGen& g);

/// Propositional tautology templates over p, q, r.
const std::vector<Formula>& tautology_templates();
Formula random_tautology(std::mt19937_64& rng, const FormulaGen& g);

/// Letters get formulas of depth <= g.max_depth; Gamma gets 0..max_gamma members.
Instantiation random_instantiation(std::mt19937_64& rng, const std::string& axiom, const FormulaGen& g,
                                   std::size_t max_gamma);

}  // namespace dtl
