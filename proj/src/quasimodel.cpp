#include "dtl/quasimodel.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace dtl {
namespace {

bool in_type(const TypeSet& t, const Formula& f) { return t.contains_mod_dneg(f); }

std::vector<Formula> eventuality_targets(const TypeSet& t) {
  std::vector<Formula> out;
  for (const Formula& m : t) {
    const Formula s = strip(m);
    if (is_eventuality(s)) out.push_back(eventuality_target(s));
  }
  return out;
}

// Shortest step path from `from` (excluded) to a world whose type contains
// target; empty if none.
std::vector<World> shortest_to(const Quasimodel& q, World from, const Formula& target) {
  const std::size_t n = q.base.size();
  std::vector<int> parent(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<World> queue;
  for (World v : q.step[from]) {
    if (seen[v]) continue;
    seen[v] = true;
    parent[v] = -2;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    World u = queue.front();
    queue.pop_front();
    if (in_type(q.base.type(u), target)) {
      std::vector<World> path;
      for (int x = static_cast<int>(u); x >= 0; x = parent[x]) {
        path.push_back(static_cast<World>(x));
        if (parent[x] == -2) break;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (World v : q.step[u])
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = static_cast<int>(u);
        queue.push_back(v);
      }
  }
  return {};
}

}  // namespace

SensibleVerdict is_sensible_pair(const TypeSet& a, const TypeSet& b) {
  for (const Formula& m : a) {
    const Formula s = strip(m);
    if (s.is(Op::Next) && !in_type(b, s.arg())) return {false, 1, s};
    if (s.is(Op::Not) && s.arg().is(Op::Next) && !b.contains_complement(s.arg().arg())) return {false, 2, s};
    if (s.is(Op::Always) && !in_type(b, s)) return {false, 3, s};
    if (is_eventuality(s) && !in_type(a, eventuality_target(s)) && !in_type(b, s)) return {false, 4, s};
  }
  return {};
}

WorldSet reachable_worlds(const Quasimodel& q, World w) {
  WorldSet seen = WorldSet::single(w), frontier = seen;
  while (!frontier.empty()) {
    WorldSet next;
    for (World u : frontier) next |= q.step[u];
    frontier = next - seen;
    seen |= next;
  }
  return seen;
}

QuasimodelVerdict validate_quasimodel(const Quasimodel& q, const FormulaSet* phi) {
  const TypedPreorder& a = q.base;
  const std::size_t n = a.size();
  if (q.step.size() != n) return {false, "step relation has the wrong size", 0, 0, {}};
  const FormulaSet sub = phi ? subformulas(*phi) : FormulaSet{};
  const FormulaSet pm = phi ? sub_pm(*phi) : FormulaSet{};
  for (World w = 0; w < n; ++w) {
    auto tv = phi ? check_phi_type(a.type(w), sub, pm) : check_weak_type(a.type(w));
    if (!tv) return {false, "not a type: " + tv.clause, w, w, tv.formula};
  }
  if (auto tv = validate_typing(a); !tv)
    return {false, "typing clause " + std::to_string(tv.clause) + " fails", tv.world, tv.world, tv.formula};
  for (World w = 0; w < n; ++w) {
    if (q.step[w].empty()) return {false, "step is not serial", w, w, {}};
    if (!q.step[w].subset_of(a.space().all())) return {false, "step leaves the structure", w, w, {}};
  }
  if (auto cv = is_continuous_relation(a.space(), a.space(), q.step); !cv)
    return {false, "step is not continuous", cv.w_below, cv.v, {}};
  for (World w = 0; w < n; ++w)
    for (World v : q.step[w])
      if (auto sv = is_sensible_pair(a.type(w), a.type(v)); !sv)
        return {false, "pair is not sensible (clause " + std::to_string(sv.clause) + ")", w, v, sv.formula};
  for (World w = 0; w < n; ++w) {
    const WorldSet reach = reachable_worlds(q, w);
    for (const Formula& target : eventuality_targets(a.type(w))) {
      bool found = false;
      for (World v : reach)
        if (in_type(a.type(v), target)) { found = true; break; }
      if (!found) return {false, "eventuality is never realized", w, w, target};
    }
  }
  return {};
}

Quasimodel quasimodel_of_model(const DynModel& m, const FormulaSet& phi) {
  return Quasimodel{typed_model(m, phi), graph_of(m.f())};
}

World Path::at(std::size_t i) const {
  if (i < worlds.size()) return worlds[i];
  if (!loop) throw std::out_of_range("index past the end of a finite path");
  const std::size_t period = worlds.size() - *loop;
  return worlds[*loop + (i - *loop) % period];
}

bool is_path(const Quasimodel& q, const Path& p) {
  if (p.worlds.empty()) return false;
  for (World w : p.worlds)
    if (w >= q.base.size()) return false;
  for (std::size_t i = 0; i + 1 < p.worlds.size(); ++i)
    if (!q.step[p.worlds[i]].contains(p.worlds[i + 1])) return false;
  if (p.loop) {
    if (*p.loop >= p.worlds.size()) return false;
    if (!q.step[p.worlds.back()].contains(p.worlds[*p.loop])) return false;
  }
  return true;
}

bool is_realizing(const Quasimodel& q, const Path& p) {
  const std::size_t len = p.worlds.size();
  for (std::size_t i = 0; i < len; ++i) {
    for (const Formula& target : eventuality_targets(q.base.type(p.worlds[i]))) {
      bool found = false;
      const std::size_t from = p.loop ? std::min(i, *p.loop) : i;
      for (std::size_t j = from; j < len && !found; ++j)
        if ((j >= i || (p.loop && j >= *p.loop)) && in_type(q.base.type(p.worlds[j]), target)) found = true;
      if (!found) return false;
    }
  }
  return true;
}

Path shift(const Path& p) {
  if (p.worlds.empty()) throw std::invalid_argument("cannot shift an empty path");
  Path out;
  if (!p.loop) {
    out.worlds.assign(p.worlds.begin() + 1, p.worlds.end());
    return out;
  }
  if (*p.loop == 0) {
    out.worlds.assign(p.worlds.begin() + 1, p.worlds.end());
    out.worlds.push_back(p.worlds.front());
    out.loop = 0;
  } else {
    out.worlds.assign(p.worlds.begin() + 1, p.worlds.end());
    out.loop = *p.loop - 1;
  }
  return out;
}

bool below_n(const Quasimodel& q, const Path& v, const Path& w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!q.base.space().le(v.at(i), w.at(i))) return false;
  return true;
}

Path extend_path_below(const Quasimodel& q, const Path& w, World v0, std::size_t len) {
  const Preorder& p = q.base.space();
  if (w.worlds.empty()) throw std::invalid_argument("path is empty");
  if (!p.le(v0, w.worlds[0])) throw std::invalid_argument("start is not below the path");
  Path out;
  out.worlds.push_back(v0);
  const std::size_t target = std::max(w.worlds.size(), len);
  for (std::size_t i = 1; i < target; ++i) {
    const World cur = out.worlds.back();
    WorldSet cand = q.step[cur];
    if (i < w.worlds.size()) cand &= p.downset(w.worlds[i]);
    if (cand.empty())
      throw QuasimodelError(i < w.worlds.size() ? "step is not continuous along the path" : "step is not serial");
    out.worlds.push_back(cand.first());
  }
  return out;
}

Path realizing_lasso(const Quasimodel& q, World w0) {
  std::map<std::pair<World, std::vector<Formula>>, std::size_t> seen;
  Path out;
  World cur = w0;
  std::vector<Formula> pending;
  for (;;) {
    const TypeSet& t = q.base.type(cur);
    std::erase_if(pending, [&](const Formula& f) { return in_type(t, f); });
    for (const Formula& target : eventuality_targets(t))
      if (!in_type(t, target) && std::find(pending.begin(), pending.end(), target) == pending.end())
        pending.push_back(target);
    auto [it, fresh] = seen.emplace(std::pair{cur, pending}, out.worlds.size());
    if (!fresh) {
      out.loop = it->second;
      break;
    }
    out.worlds.push_back(cur);
    if (pending.empty()) {
      if (q.step[cur].empty()) throw QuasimodelError("step is not serial");
      cur = q.step[cur].first();
    } else {
      auto path = shortest_to(q, cur, pending.front());
      if (path.empty()) throw QuasimodelError("eventuality " + to_string(pending.front()) + " cannot be realized");
      cur = path.front();
    }
  }
  if (!is_realizing(q, out)) throw QuasimodelError("constructed lasso is not realizing");
  return out;
}

Path orbit(const DynModel& m, World x) {
  Path out;
  std::vector<int> index(m.size(), -1);
  World cur = x;
  while (index[cur] < 0) {
    index[cur] = static_cast<int>(out.worlds.size());
    out.worlds.push_back(cur);
    cur = m.f(cur);
  }
  out.loop = static_cast<std::size_t>(index[cur]);
  return out;
}

}  // namespace dtl
