#include "dtl/random_formula.hpp"

#include "dtl/parse.hpp"

namespace dtl {
namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Formula gen(std::mt19937_64& rng, const FormulaGen& g, std::size_t depth) {
  if (depth == 0 || pick(rng, 4) == 0) {
    if (g.vars.empty() || pick(rng, 16) == 0) return top();
    return var(g.vars[pick(rng, g.vars.size())]);
  }
  const std::size_t kinds = g.temporal ? 5 : 3;
  switch (pick(rng, kinds)) {
    case 0: return neg(gen(rng, g, depth - 1));
    case 1: return conj(gen(rng, g, depth - 1), gen(rng, g, depth - 1));
    case 2: {
      const std::size_t n = 1 + pick(rng, std::max<std::size_t>(g.max_tangle, 1));
      std::vector<Formula> ms;
      for (std::size_t i = 0; i < n; ++i) ms.push_back(gen(rng, g, depth - 1));
      return tangle(std::move(ms));
    }
    case 3: return next(gen(rng, g, depth - 1));
    default: return always(gen(rng, g, depth - 1));
  }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const FormulaGen& g) { return gen(rng, g, g.max_depth); }

const std::vector<Formula>& tautology_templates() {
  static const std::vector<Formula> t = [] {
    std::vector<Formula> out;
    for (const char* s : {"p -> p", "p -> (q -> p)", "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
                          "(~p -> ~q) -> (q -> p)", "p | ~p", "~~p -> p", "(p & q) -> q", "p -> (p | q)",
                          "(p -> q) -> ((q -> r) -> (p -> r))", "~(p & q) <-> (~p | ~q)", "(p & (p -> q)) -> q",
                          "((p -> q) -> p) -> p"})
      out.push_back(parse(s));
    return out;
  }();
  return t;
}

Formula random_tautology(std::mt19937_64& rng, const FormulaGen& g) {
  const auto& ts = tautology_templates();
  const Formula& t = ts[pick(rng, ts.size())];
  Substitution sigma;
  for (const char* v : {"p", "q", "r"}) sigma[v] = random_formula(rng, g);
  return substitute(t, sigma);
}

Instantiation random_instantiation(std::mt19937_64& rng, const std::string& axiom, const FormulaGen& g,
                                   std::size_t max_gamma) {
  Instantiation inst;
  for (const std::string& l : axiom_letters(axiom)) {
    if (l == "Gamma") {
      std::vector<Formula> gamma;
      const std::size_t n = pick(rng, max_gamma + 1);
      for (std::size_t i = 0; i < n; ++i) gamma.push_back(random_formula(rng, g));
      inst.gamma = std::move(gamma);
    } else {
      inst.letters[l] = random_formula(rng, g);
    }
  }
  return inst;
}

}  // namespace dtl
