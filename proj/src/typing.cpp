#include "dtl/typing.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "dtl/eval.hpp"

namespace dtl {
namespace {

Formula base_of(const Formula& f) {
  const Formula* cur = &f;
  while (cur->is(Op::Not)) cur = &cur->arg();
  return *cur;
}

bool negated(const Formula& f) {
  bool n = false;
  for (const Formula* cur = &f; cur->is(Op::Not); cur = &cur->arg()) n = !n;
  return n;
}

bool in_type(const TypeSet& t, const Formula& f) { return t.contains_mod_dneg(f); }

}  // namespace

TypeSet make_type(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  out.reserve(fs.size());
  for (const Formula& f : fs) out.push_back(strip(f));
  return TypeSet(std::move(out));
}

TypeVerdict check_weak_type(const TypeSet& t) {
  for (const Formula& m : t) {
    const Formula s = strip(m);
    if (t.contains_complement(s)) return {false, "contains a formula and its negation", s};
    if (s.is(Op::And) && !(in_type(t, s.arg(0)) && in_type(t, s.arg(1))))
      return {false, "conjunction without both conjuncts", s};
    if (s.is(Op::Not) && s.arg().is(Op::And) &&
        !(t.contains_complement(s.arg().arg(0)) || t.contains_complement(s.arg().arg(1))))
      return {false, "negated conjunction without a negated conjunct", s};
    if (s.is(Op::Always) && !in_type(t, s.arg())) return {false, "henceforth without its argument", s};
  }
  return {};
}

TypeVerdict check_phi_type(const TypeSet& t, const FormulaSet& phi) {
  return check_phi_type(t, subformulas(phi), sub_pm(phi));
}

TypeVerdict check_phi_type(const TypeSet& t, const FormulaSet& sub, const FormulaSet& pm) {
  if (auto v = check_weak_type(t); !v) return v;
  for (const Formula& m : t)
    if (!pm.contains(strip(m))) return {false, "formula outside sub+-", m};
  for (const Formula& s : sub)
    if (!in_type(t, s) && !t.contains_complement(s)) return {false, "undecided subformula", s};
  return {};
}

TypeSpace::TypeSpace(const FormulaSet& phi) : phi_(phi) {
  std::vector<Formula> bases;
  for (const Formula& s : subformulas(phi)) bases.push_back(base_of(s));
  std::sort(bases.begin(), bases.end(), [](const Formula& a, const Formula& b) {
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    return compare(a, b) < 0;
  });
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  bases_ = std::move(bases);
  if (bases_.size() > 30) throw std::length_error("too many independent subformulas to enumerate types");

  std::unordered_map<Formula, std::size_t, FormulaHash> idx;
  for (std::size_t i = 0; i < bases_.size(); ++i) idx.emplace(bases_[i], i);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < bases_.size(); ++i)
    if (!bases_[i].is(Op::And)) free.push_back(i);

  auto value = [&](std::uint64_t bits, const Formula& f) {
    bool v = (bits >> idx.at(base_of(f))) & 1U;
    return negated(f) ? !v : v;
  };

  for (std::uint64_t a = 0; a < (std::uint64_t{1} << free.size()); ++a) {
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < free.size(); ++k)
      if ((a >> k) & 1U) bits |= std::uint64_t{1} << free[k];
    bool ok = true;
    for (std::size_t i = 0; i < bases_.size() && ok; ++i) {
      const Formula& b = bases_[i];
      if (b.is(Op::And)) {  // children have smaller depth, already set
        if (value(bits, b.arg(0)) && value(bits, b.arg(1))) bits |= std::uint64_t{1} << i;
      } else if (b.is(Op::Always) && ((bits >> i) & 1U) && !value(bits, b.arg())) {
        ok = false;
      }
    }
    if (ok) types_.push_back(type_from_bits(bits));
  }
  std::sort(types_.begin(), types_.end());
}

TypeSet TypeSpace::type_from_bits(std::uint64_t bits) const {
  std::vector<Formula> out;
  out.reserve(bases_.size());
  for (std::size_t i = 0; i < bases_.size(); ++i) out.push_back((bits >> i) & 1U ? bases_[i] : neg(bases_[i]));
  return TypeSet(std::move(out));
}

std::optional<std::size_t> TypeSpace::index_of(const TypeSet& t) const {
  auto it = std::lower_bound(types_.begin(), types_.end(), t);
  if (it == types_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - types_.begin());
}

TypedPreorder::TypedPreorder(Preorder space, std::vector<TypeSet> types)
    : space_(std::move(space)), types_(std::move(types)) {
  if (types_.size() != space_.size()) throw StateError("every world needs a type");
}

TypingVerdict validate_typing(const TypedPreorder& a) {
  const Preorder& p = a.space();
  for (World w = 0; w < p.size(); ++w) {
    for (const Formula& m : a.type(w)) {
      const Formula s = strip(m);
      if (s.is(Op::Tangle)) {
        bool found = false;
        for (World v : p.downset(w)) {
          const WorldSet c = p.cluster(v);
          bool all = true;
          for (const Formula& g : s.args()) {
            bool some = false;
            for (World u : c)
              if (in_type(a.type(u), g)) { some = true; break; }
            if (!some) { all = false; break; }
          }
          if (all) { found = true; break; }
        }
        if (!found) return {false, w, s, 1};
      } else if (s.is(Op::Not) && s.arg().is(Op::Tangle)) {
        for (World v : p.downset(w)) {
          const WorldSet c = p.cluster(v);
          bool refuted = false;
          for (const Formula& g : s.arg().args()) {
            bool everywhere = true;
            for (World u : c)
              if (!a.type(u).contains_complement(g)) { everywhere = false; break; }
            if (everywhere) { refuted = true; break; }
          }
          if (!refuted) return {false, w, s, 2};
        }
      }
    }
  }
  return {};
}

TypedPreorder typed_model(const DynModel& m, const FormulaSet& phi) {
  Evaluator ev(m);
  const FormulaSet sub = subformulas(phi);
  std::vector<std::vector<Formula>> acc(m.size());
  for (const Formula& s : sub) {
    const WorldSet ext = ev(s);
    const Formula pos = strip(s), negf = complement(s);
    for (World w = 0; w < m.size(); ++w) acc[w].push_back(ext.contains(w) ? pos : negf);
  }
  std::vector<TypeSet> types;
  for (auto& a : acc) types.emplace_back(std::move(a));
  return TypedPreorder(m.space(), std::move(types));
}

TypeSet type_of_world(const DynModel& m, const FormulaSet& phi, World w) {
  if (w >= m.size()) throw std::out_of_range("world index");
  Evaluator ev(m);
  std::vector<Formula> out;
  for (const Formula& s : subformulas(phi)) out.push_back(ev(s).contains(w) ? strip(s) : complement(s));
  return TypeSet(std::move(out));
}

State::State(TypedPreorder base, World root) : base_(std::move(base)), root_(root) {
  const Preorder& p = base_.space();
  if (root_ >= p.size()) throw StateError("root is not a world");
  if (p.downset(root_) != p.all()) throw StateError("some world is not below the root");
  for (World w = 0; w < p.size(); ++w)
    for (World v = w + 1; v < p.size(); ++v)
      if (p.equivalent(w, v) && base_.type(w) == base_.type(v))
        throw StateError("equivalent worlds " + p.name(w) + " and " + p.name(v) + " share a type");
}

std::vector<TypeSet> State::type_range() const {
  std::vector<TypeSet> out(base_.types());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct Labelled {
  std::vector<TypeSet> range;
  CanonicalForm form;
};

Labelled label(const State& s) {
  Labelled l;
  l.range = s.type_range();
  std::vector<std::uint64_t> colour(s.size());
  for (World w = 0; w < s.size(); ++w) {
    auto rank = static_cast<std::uint64_t>(
        std::lower_bound(l.range.begin(), l.range.end(), s.type(w)) - l.range.begin());
    colour[w] = w == s.root() ? 0 : 1 + rank;
  }
  l.form = canonical_form(s.space(), colour);
  return l;
}

}  // namespace

StateKey state_key(const State& s) {
  Labelled l = label(s);
  StateKey k;
  k.types = std::move(l.range);
  k.colours = std::move(l.form.colours);
  k.rows = std::move(l.form.rows);
  // The root colour hides its type; record it as the last colour.
  auto rank = std::lower_bound(k.types.begin(), k.types.end(), s.root_type()) - k.types.begin();
  k.colours.push_back(static_cast<std::uint64_t>(rank));
  std::size_t h = 0x5eed;
  auto mixin = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (auto& t : k.types) mixin(t.hash());
  for (auto c : k.colours) mixin(c);
  for (auto r : k.rows) mixin(r);
  k.hash = h;
  return k;
}

State canonicalize(const State& s) {
  Labelled l = label(s);
  const std::size_t n = s.size();
  std::vector<WorldSet> down(n);
  std::vector<TypeSet> types(n);
  World root = 0;
  for (std::size_t i = 0; i < n; ++i) {
    down[i] = WorldSet(l.form.rows[i]);
    types[i] = s.type(l.form.order[i]);
    if (l.form.order[i] == s.root()) root = static_cast<World>(i);
  }
  return State(TypedPreorder(Preorder::from_down_sets(std::move(down)), std::move(types)), root);
}

bool isomorphic(const State& a, const State& b) { return state_key(a) == state_key(b); }

Norm norm(const State& s) {
  const Preorder& p = s.space();
  const std::size_t n = p.size();
  std::vector<std::size_t> h(n, 0);
  std::function<std::size_t(World)> height = [&](World w) -> std::size_t {
    if (h[w]) return h[w];
    std::size_t best = 0;
    for (World v : p.downset(w) - p.cluster(w)) best = std::max(best, height(v));
    return h[w] = best + 1;
  };
  Norm out;
  for (World w = 0; w < n; ++w) {
    out.hgt = std::max(out.hgt, height(w));
    out.wdt = std::max(out.wdt, p.daughters(w).size());
  }
  out.nrm = std::max(out.hgt, out.wdt);
  return out;
}

State substate(const State& s, World v) {
  const WorldSet d = s.space().downset(v);
  std::vector<TypeSet> types;
  World root = 0, i = 0;
  for (World w : d) {
    if (w == v) root = i;
    types.push_back(s.type(w));
    ++i;
  }
  return State(TypedPreorder(s.space().induced(d), std::move(types)), root);
}

std::vector<State> substates(const State& s) {
  std::vector<State> out;
  out.reserve(s.size());
  for (World v = 0; v < s.size(); ++v) out.push_back(substate(s, v));
  return out;
}

DistinctVerdict distinctly_typed(const State& s) {
  for (World w = 0; w < s.size(); ++w)
    for (World v = w + 1; v < s.size(); ++v) {
      if (s.type(w) == s.type(v)) continue;
      bool sep = false;
      for (const Formula& f : s.type(w))
        if (s.type(v).contains_complement(f)) { sep = true; break; }
      if (!sep) return {false, w, v};
    }
  return {};
}

IndicatorState state_p(const State& s) {
  IndicatorState out;
  const std::vector<TypeSet> range = s.type_range();
  std::vector<std::string> used;
  for (const TypeSet& t : range)
    for (auto& v : variables(t)) used.push_back(v);
  const std::string prefix = fresh_prefix(used, "_p");
  for (std::size_t i = 0; i < range.size(); ++i) {
    out.vars.push_back(prefix + std::to_string(i));
    out.back[out.vars.back()] = conj_all(range[i].items());
  }
  std::vector<TypeSet> types;
  for (World w = 0; w < s.size(); ++w) {
    auto k = static_cast<std::size_t>(std::lower_bound(range.begin(), range.end(), s.type(w)) - range.begin());
    std::vector<Formula> t;
    for (std::size_t j = 0; j < range.size(); ++j) t.push_back(j == k ? var(out.vars[j]) : neg(var(out.vars[j])));
    types.emplace_back(std::move(t));
  }
  out.state = State(TypedPreorder(s.space(), std::move(types)), s.root());
  return out;
}

State state_plus(const State& s, const FormulaSet& phi, PlusVariant variant) {
  std::vector<TypeSet> types;
  for (World w = 0; w < s.size(); ++w) {
    const TypeSet& psi = s.type(w);
    TypeSet plus = psi;
    const FormulaSet& range = variant == PlusVariant::Literal ? phi : psi;
    for (const Formula& g : range)
      if (strip(g).is(Op::Always)) plus.insert(next(strip(g)));
    for (const Formula& m : psi) {
      const Formula e = strip(m);
      if (is_eventuality(e) && !in_type(psi, eventuality_target(e))) plus.insert(next(e));
    }
    types.push_back(std::move(plus));
  }
  return State(TypedPreorder(s.space(), std::move(types)), s.root());
}

State state_subst(const State& s, const Substitution& sigma) {
  std::vector<TypeSet> types;
  for (World w = 0; w < s.size(); ++w) {
    std::vector<Formula> t;
    for (const Formula& f : s.type(w)) t.push_back(substitute(f, sigma));
    types.push_back(make_type(t));
  }
  return State(TypedPreorder(s.space(), std::move(types)), s.root());
}

State state_q(const State& s, QTransform& q) {
  std::vector<TypeSet> types;
  for (World w = 0; w < s.size(); ++w) {
    std::vector<Formula> t;
    for (const Formula& f : s.type(w)) t.push_back(q.apply(f));
    types.push_back(make_type(t));
  }
  return State(TypedPreorder(s.space(), std::move(types)), s.root());
}

State state_of_point(const TypedPreorder& a, World x) {
  const Preorder& p = a.space();
  WorldSet keep;
  World root = x;
  for (World w : p.downset(x)) {
    bool dup = false;
    for (World u : keep)
      if (p.equivalent(u, w) && a.type(u) == a.type(w)) {
        dup = true;
        if (w == x) root = u;
        break;
      }
    if (!dup) keep.insert(w);
  }
  std::vector<TypeSet> types;
  World r = 0, i = 0;
  for (World w : keep) {
    if (w == root) r = i;
    types.push_back(a.type(w));
    ++i;
  }
  return State(TypedPreorder(p.induced(keep), std::move(types)), r);
}

State state_of_point(const DynModel& m, const FormulaSet& phi, World x) {
  return state_of_point(typed_model(m, phi), x);
}

}  // namespace dtl
