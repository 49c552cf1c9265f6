#include "dtl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace dtl {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  // boost::hash_combine with a 64-bit constant
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
std::span<const Formula> Formula::args() const { return node_->args; }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::depth() const { return node_->depth; }

Formula Formula::make(Op op, std::string name, std::vector<Formula> args) {
  std::size_t h = mix(0x51ed27, static_cast<std::size_t>(op));
  std::size_t d = 0;
  if (op == Op::Var) h = mix(h, std::hash<std::string>{}(name));
  for (const auto& a : args) {
    h = mix(h, a.hash());
    d = std::max(d, a.depth());
  }
  auto node = std::make_shared<const FormulaNode>(
      FormulaNode{op, std::move(name), std::move(args), h, d + 1});
  return Formula(std::move(node));
}

std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (a.node() == b.node()) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  switch (a.op()) {
    case Op::Var:
      return a.name().compare(b.name()) <=> 0;
    case Op::Tangle:
      if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
      [[fallthrough]];
    default: {
      auto aa = a.args();
      auto bb = b.args();
      for (std::size_t i = 0; i < aa.size(); ++i)
        if (auto c = compare(aa[i], bb[i]); c != 0) return c;
      return std::strong_ordering::equal;
    }
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  return compare(a, b);
}

Formula var(std::string name) { return Formula::make(Op::Var, std::move(name), {}); }
Formula neg(Formula a) { return Formula::make(Op::Not, {}, {std::move(a)}); }
Formula conj(Formula a, Formula b) {
  return Formula::make(Op::And, {}, {std::move(a), std::move(b)});
}
Formula next(Formula a) { return Formula::make(Op::Next, {}, {std::move(a)}); }
Formula always(Formula a) { return Formula::make(Op::Always, {}, {std::move(a)}); }

Formula tangle(std::vector<Formula> members) {
  std::sort(members.begin(), members.end(),
            [](const Formula& x, const Formula& y) { return compare(x, y) < 0; });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Formula::make(Op::Tangle, {}, std::move(members));
}

Formula disj(Formula a, Formula b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }
Formula implies(Formula a, Formula b) { return neg(conj(std::move(a), neg(std::move(b)))); }
Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }
Formula diamond(Formula a) { return tangle({std::move(a)}); }
Formula box(Formula a) { return neg(diamond(neg(std::move(a)))); }
Formula eventually(Formula a) { return neg(always(neg(std::move(a)))); }
Formula top() { return tangle({}); }

Formula conj_all(std::span<const Formula> fs) {
  if (fs.empty()) return top();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(std::span<const Formula> fs) {
  if (fs.empty()) return neg(top());
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool match_implication(const Formula& f, Formula* lhs, Formula* rhs) {
  if (!f.is(Op::Not)) return false;
  const Formula& c = f.arg();
  if (!c.is(Op::And) || !c.arg(1).is(Op::Not)) return false;
  if (lhs) *lhs = c.arg(0);
  if (rhs) *rhs = c.arg(1).arg();
  return true;
}

Formula strip(const Formula& f) {
  const Formula* cur = &f;
  while (cur->is(Op::Not) && cur->arg().is(Op::Not)) cur = &cur->arg().arg();
  return *cur;
}

Formula complement(const Formula& f) {
  Formula s = strip(f);
  if (s.is(Op::Not)) return s.arg();
  return neg(s);
}

bool is_eventuality(const Formula& f) {
  return f.is(Op::Not) && f.arg().is(Op::Always);
}

Formula eventuality_target(const Formula& f) { return complement(f.arg().arg()); }

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec { kIff = 0, kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

bool match_or(const Formula& f, Formula* a, Formula* b) {
  if (!f.is(Op::Not)) return false;
  const Formula& c = f.arg();
  if (!c.is(Op::And) || !c.arg(0).is(Op::Not) || !c.arg(1).is(Op::Not)) return false;
  *a = c.arg(0).arg();
  *b = c.arg(1).arg();
  return true;
}

bool match_iff(const Formula& f, Formula* a, Formula* b) {
  if (!f.is(Op::And)) return false;
  Formula l1, r1, l2, r2;
  if (!match_implication(f.arg(0), &l1, &r1) || !match_implication(f.arg(1), &l2, &r2))
    return false;
  if (!(l1 == r2 && r1 == l2)) return false;
  *a = l1;
  *b = r1;
  return true;
}

void print(const Formula& f, int ctx, std::string& out);

void print_wrapped(const Formula& f, int own, int ctx, std::string& out,
                   const std::function<void(std::string&)>& body) {
  (void)f;
  if (own < ctx) {
    out += '(';
    body(out);
    out += ')';
  } else {
    body(out);
  }
}

void print(const Formula& f, int ctx, std::string& out) {
  Formula a, b;
  if (match_iff(f, &a, &b)) {
    print_wrapped(f, kIff, ctx, out, [&](std::string& o) {
      print(a, kIff, o);
      o += " <-> ";
      print(b, kImp, o);
    });
    return;
  }
  if (match_or(f, &a, &b)) {
    print_wrapped(f, kOr, ctx, out, [&](std::string& o) {
      print(a, kOr, o);
      o += " | ";
      print(b, kAnd, o);
    });
    return;
  }
  if (match_implication(f, &a, &b)) {
    print_wrapped(f, kImp, ctx, out, [&](std::string& o) {
      print(a, kOr, o);
      o += " -> ";
      print(b, kImp, o);
    });
    return;
  }
  switch (f.op()) {
    case Op::Var:
      out += f.name();
      return;
    case Op::And:
      print_wrapped(f, kAnd, ctx, out, [&](std::string& o) {
        print(f.arg(0), kAnd, o);
        o += " & ";
        print(f.arg(1), kUnary, o);
      });
      return;
    case Op::Not: {
      const Formula& x = f.arg();
      if (x.is(Op::Tangle) && x.args().size() == 1 && x.arg().is(Op::Not)) {
        out += "[]";
        print(x.arg().arg(), kUnary, out);
      } else if (x.is(Op::Always) && x.arg().is(Op::Not)) {
        out += "F ";
        print(x.arg().arg(), kUnary, out);
      } else {
        out += '~';
        print(x, kUnary, out);
      }
      return;
    }
    case Op::Next:
      out += "X ";
      print(f.arg(), kUnary, out);
      return;
    case Op::Always:
      out += "G ";
      print(f.arg(), kUnary, out);
      return;
    case Op::Tangle:
      if (f.args().size() == 1) {
        out += "<>";
        print(f.arg(), kUnary, out);
        return;
      }
      out += "<>{";
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ", ";
        print(f.args()[i], kIff, out);
      }
      out += '}';
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, kIff, out);
  return out;
}

// ---------------------------------------------------------------------------
// FormulaSet

namespace {
bool less(const Formula& x, const Formula& y) { return compare(x, y) < 0; }
bool double_neg(const Formula& f) { return f.is(Op::Not) && f.arg().is(Op::Not); }
}  // namespace

FormulaSet::FormulaSet(std::initializer_list<Formula> fs)
    : FormulaSet(std::vector<Formula>(fs)) {}

FormulaSet::FormulaSet(std::vector<Formula> fs) : items_(std::move(fs)) {
  std::sort(items_.begin(), items_.end(), less);
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  dneg_ = std::any_of(items_.begin(), items_.end(), double_neg);
}

bool FormulaSet::contains(const Formula& f) const {
  return std::binary_search(items_.begin(), items_.end(), f, less);
}

bool FormulaSet::contains_mod_dneg(const Formula& f) const {
  Formula s = strip(f);
  if (contains(s)) return true;
  if (!dneg_) return false;
  // Members themselves may carry double negations.
  for (const auto& m : items_)
    if (strip(m) == s) return true;
  return false;
}

bool FormulaSet::contains_complement(const Formula& f) const {
  const Formula s = strip(f);
  if (s.is(Op::Not)) return contains_mod_dneg(s.arg());
  if (dneg_) return contains_mod_dneg(neg(s));
  // Binary search for ~s, ordered as compare() would order it.
  const auto it = std::lower_bound(items_.begin(), items_.end(), s, [](const Formula& m, const Formula& x) {
    if (m.op() != Op::Not) return m.op() < Op::Not;
    return compare(m.arg(), x) < 0;
  });
  return it != items_.end() && it->is(Op::Not) && it->arg() == s;
}

void FormulaSet::insert(const Formula& f) {
  auto it = std::lower_bound(items_.begin(), items_.end(), f, less);
  if (it != items_.end() && *it == f) return;
  items_.insert(it, f);
  dneg_ = dneg_ || double_neg(f);
}

void FormulaSet::insert_all(const FormulaSet& other) {
  std::vector<Formula> merged;
  merged.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(merged), less);
  items_ = std::move(merged);
  dneg_ = dneg_ || other.dneg_;
}

std::size_t FormulaSet::hash() const {
  std::size_t h = 0xfeed;
  for (const auto& f : items_) h = mix(h, f.hash());
  return h;
}

std::strong_ordering operator<=>(const FormulaSet& a, const FormulaSet& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = compare(a.items_[i], b.items_[i]); c != 0) return c;
  return a.size() <=> b.size();
}

std::string to_string(const FormulaSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s[i]);
  }
  return out + "}";
}

namespace {

// Sweeps ask for the closure of the same set many times in a row.
struct ClosureCache {
  FormulaSet phi, sub, pm;
  bool has_sub = false, has_pm = false;
  void reset(const FormulaSet& p) {
    if (has_sub || has_pm) {
      if (p == phi) return;
    }
    phi = p;
    has_sub = has_pm = false;
  }
};
thread_local ClosureCache closure_cache;

FormulaSet compute_subformulas(const FormulaSet& phi) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> stack(phi.begin(), phi.end());
  while (!stack.empty()) {
    Formula f = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    for (const auto& a : f.args()) stack.push_back(a);
  }
  return FormulaSet(std::vector<Formula>(seen.begin(), seen.end()));
}

}  // namespace

FormulaSet subformulas(const FormulaSet& phi) {
  ClosureCache& c = closure_cache;
  c.reset(phi);
  if (!c.has_sub) {
    c.sub = compute_subformulas(phi);
    c.has_sub = true;
  }
  return c.sub;
}

FormulaSet sub_pm(const FormulaSet& phi) {
  ClosureCache& c = closure_cache;
  c.reset(phi);
  if (!c.has_pm) {
    std::vector<Formula> out;
    for (const auto& f : subformulas(phi)) {
      out.push_back(strip(f));
      out.push_back(complement(f));
    }
    c.pm = FormulaSet(std::move(out));
    c.has_pm = true;
  }
  return c.pm;
}

std::size_t length(const FormulaSet& phi) { return subformulas(phi).size(); }

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> names;
  std::unordered_set<const FormulaNode*> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(g.node()).second) continue;
    if (g.is(Op::Var)) names.insert(g.name());
    for (const auto& a : g.args()) stack.push_back(a);
  }
  return {names.begin(), names.end()};
}

std::vector<std::string> variables(const FormulaSet& s) {
  std::set<std::string> names;
  for (const auto& f : s)
    for (auto& n : variables(f)) names.insert(std::move(n));
  return {names.begin(), names.end()};
}

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> args) {
  switch (f.op()) {
    case Op::Not: return neg(std::move(args[0]));
    case Op::And: return conj(std::move(args[0]), std::move(args[1]));
    case Op::Next: return next(std::move(args[0]));
    case Op::Always: return always(std::move(args[0]));
    case Op::Tangle: return tangle(std::move(args));
    case Op::Var: break;
  }
  return f;
}

template <typename Leaf>
Formula rewrite(const Formula& f, std::unordered_map<const FormulaNode*, Formula>& memo,
                Leaf&& leaf) {
  if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
  Formula out;
  if (auto replaced = leaf(f); replaced.valid()) {
    out = replaced;
  } else if (f.is(Op::Var)) {
    out = f;
  } else {
    std::vector<Formula> args;
    bool changed = false;
    for (const auto& a : f.args()) {
      args.push_back(rewrite(a, memo, leaf));
      changed |= args.back().node() != a.node();
    }
    out = changed ? rebuild(f, std::move(args)) : f;
  }
  memo.emplace(f.node(), out);
  return out;
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& sigma) {
  if (sigma.empty()) return f;
  std::unordered_map<const FormulaNode*, Formula> memo;
  return rewrite(f, memo, [&](const Formula& g) -> Formula {
    if (g.is(Op::Var))
      if (auto it = sigma.find(g.name()); it != sigma.end()) return it->second;
    return {};
  });
}

std::string fresh_prefix(const std::vector<std::string>& used, std::string base) {
  auto clashes = [&](const std::string& prefix) {
    for (const auto& u : used) {
      if (u.size() <= prefix.size() || u.compare(0, prefix.size(), prefix) != 0) continue;
      if (std::all_of(u.begin() + static_cast<std::ptrdiff_t>(prefix.size()), u.end(),
                      [](unsigned char c) { return std::isdigit(c); }))
        return true;
    }
    return false;
  };
  while (clashes(base)) base += '_';
  return base;
}

QTransform::QTransform(const FormulaSet& context, std::string prefix)
    : prefix_(fresh_prefix(variables(context), std::move(prefix))) {}

std::string QTransform::fresh_for(const Formula& delta) {
  for (const auto& [d, v] : table_)
    if (d == delta) return v;
  std::string name = prefix_ + std::to_string(table_.size());
  table_.emplace_back(delta, name);
  return name;
}

Formula QTransform::apply(const Formula& f) {
  std::unordered_map<const FormulaNode*, Formula> memo;
  return rewrite(f, memo, [&](const Formula& g) -> Formula {
    if (g.is(Op::Always)) return var(fresh_for(g.arg()));
    return {};
  });
}

FormulaSet QTransform::apply(const FormulaSet& s) {
  std::vector<Formula> out;
  for (const auto& f : s) out.push_back(apply(f));
  return FormulaSet(std::move(out));
}

Substitution QTransform::inverse() const {
  Substitution inv;
  for (const auto& [delta, v] : table_) inv.emplace(v, always(delta));
  return inv;
}

}  // namespace dtl
