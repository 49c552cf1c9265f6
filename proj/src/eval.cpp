#include "dtl/eval.hpp"

namespace dtl {

WorldSet tangled_gfp(const Preorder& p, std::span<const WorldSet> family) {
  WorldSet e = p.all();
  for (;;) {
    WorldSet next = e;
    for (WorldSet a : family) next &= p.closure(a & e);
    if (next == e) return e;
    e = next;
  }
}

WorldSet tangled_cluster(const Preorder& p, std::span<const WorldSet> family) {
  WorldSet good;
  for (WorldSet c : p.clusters()) {
    bool meets = true;
    for (WorldSet a : family)
      if (!c.intersects(a)) { meets = false; break; }
    if (meets) good |= c;
  }
  return p.closure(good);
}

WorldSet Evaluator::operator()(const Formula& f) {
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  WorldSet r = compute(f);
  memo_.emplace(f, r);
  return r;
}

WorldSet Evaluator::compute(const Formula& f) {
  const WorldSet all = m_.space().all();
  switch (f.op()) {
    case Op::Var:
      if (strict_ && !m_.has_var(f.name())) throw UnknownVariable(f.name());
      return m_.val(f.name());
    case Op::Not:
      return all - (*this)(f.arg());
    case Op::And:
      return (*this)(f.arg(0)) & (*this)(f.arg(1));
    case Op::Next:
      return m_.preimage((*this)(f.arg()));
    case Op::Always: {
      const WorldSet a = (*this)(f.arg());
      WorldSet h = a;
      for (;;) {
        WorldSet next = a & m_.preimage(h);
        if (next == h) return h;
        h = next;
      }
    }
    case Op::Tangle: {
      std::vector<WorldSet> family;
      family.reserve(f.args().size());
      for (const Formula& g : f.args()) family.push_back((*this)(g));
      return tangled_gfp(m_.space(), family);
    }
  }
  return {};
}

WorldSet eval(const DynModel& m, const Formula& f, bool strict) {
  Evaluator ev(m, strict);
  return ev(f);
}

}  // namespace dtl
