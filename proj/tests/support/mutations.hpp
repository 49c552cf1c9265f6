#pragma once

// Single-step corruptions of valid proofs.  Each kind is chosen so that the
// corrupted step can no longer be justified by its stated rule.

#include <random>
#include <string>
#include <vector>

#include "dtl/proof.hpp"

namespace dtl::testing {

struct Mutation {
  ProofObject proof;
  std::size_t step = 0;  // 1-based
  std::string kind;
};

inline Rule swapped_rule(Rule r) {
  switch (r) {
    case Rule::Axiom: return Rule::MP;
    case Rule::MP: return Rule::NecNext;
    case Rule::Subs: return Rule::NecBox;
    case Rule::NecBox: return Rule::NecNext;
    case Rule::NecNext: return Rule::NecHence;
    case Rule::NecHence: return Rule::NecBox;
  }
  return Rule::MP;
}

inline Mutation mutate(const ProofObject& p, std::size_t kind, std::mt19937_64& rng) {
  Mutation m{p, 0, {}};
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, p.steps.size() - 1)(rng);
  m.step = k + 1;
  ProofStep& s = m.proof.steps[k];
  auto negate = [&] {
    s.formula = neg(s.formula);
    m.kind = "negate-formula";
  };
  switch (kind % 10) {
    case 0: negate(); break;
    case 1:
      s.formula = conj(s.formula, neg(s.formula));
      m.kind = "contradict-formula";
      break;
    case 2:
      if (s.refs.empty()) return negate(), m;
      s.refs[0] = k + 1;
      m.kind = "self-reference";
      break;
    case 3:
      if (s.refs.empty()) {
        s.refs.push_back(1);
        m.kind = "axiom-with-reference";
      } else {
        s.refs[0] = 0;
        m.kind = "zero-reference";
      }
      break;
    case 4:
      s.rule = swapped_rule(s.rule);
      m.kind = "swap-rule";
      break;
    case 5:
      if (s.rule != Rule::Axiom) return negate(), m;
      {
        const auto& names = axiom_names();
        auto it = std::find(names.begin(), names.end(), s.axiom);
        s.axiom = names[(static_cast<std::size_t>(it - names.begin()) + 1) % names.size()];
      }
      m.kind = "rename-axiom";
      break;
    case 6:
      if (s.rule != Rule::Axiom || s.axiom == "Taut") return negate(), m;
      if (s.inst.gamma) s.inst.gamma->push_back(var("zz_fresh"));
      else s.inst.letters.begin()->second = neg(s.inst.letters.begin()->second);
      m.kind = "perturb-instantiation";
      break;
    case 7:
      if (s.rule != Rule::Subs) return negate(), m;
      {
        const auto vs = variables(m.proof.steps[s.refs[0] - 1].formula);
        if (vs.empty()) return negate(), m;
        const std::string& v = vs[0];
        auto it = s.subst.find(v);
        s.subst[v] = neg(it == s.subst.end() ? var(v) : it->second);
      }
      m.kind = "perturb-substitution";
      break;
    case 8:
      if (s.rule != Rule::MP || s.refs[0] == s.refs[1]) return negate(), m;
      std::swap(s.refs[0], s.refs[1]);
      m.kind = "swap-premises";
      break;
    default:
      m.step = p.steps.size();
      m.proof.steps.back().formula = neg(m.proof.steps.back().formula);
      m.kind = "negate-conclusion";
      break;
  }
  return m;
}

/// count mutations spread round-robin over the corpus and over the kinds.
inline std::vector<Mutation> single_step_mutations(const std::vector<ProofObject>& corpus, std::size_t count,
                                                   std::uint64_t seed) {
  std::vector<Mutation> out;
  if (corpus.empty()) return out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) out.push_back(mutate(corpus[i % corpus.size()], i / corpus.size(), rng));
  return out;
}

}  // namespace dtl::testing
