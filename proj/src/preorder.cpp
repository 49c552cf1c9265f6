#include "dtl/preorder.hpp"

#include <algorithm>

namespace dtl {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

Preorder::Preorder(std::size_t n, std::span<const std::pair<World, World>> below,
                   std::vector<std::string> names) {
  check_world_count(n);
  down_.assign(n, WorldSet{});
  for (World w = 0; w < n; ++w) down_[w].insert(w);
  for (auto [v, w] : below) {
    if (v >= n || w >= n) throw std::out_of_range("order pair refers to a missing world");
    down_[w].insert(v);
  }
  // Warshall over bitsets.
  for (World k = 0; k < n; ++k)
    for (World w = 0; w < n; ++w)
      if (down_[w].contains(k)) down_[w] |= down_[k];
  names_ = std::move(names);
  finish();
}

Preorder Preorder::from_down_sets(std::vector<WorldSet> down, std::vector<std::string> names) {
  check_world_count(down.size());
  const WorldSet all = WorldSet::full(down.size());
  for (World w = 0; w < down.size(); ++w) {
    if (!down[w].contains(w) || !down[w].subset_of(all))
      throw std::invalid_argument("down sets must be reflexive and in range");
    for (World v : down[w])
      if (!down[v].subset_of(down[w])) throw std::invalid_argument("down sets must be transitive");
  }
  Preorder p;
  p.down_ = std::move(down);
  p.names_ = std::move(names);
  p.finish();
  return p;
}

void Preorder::finish() {
  const std::size_t n = down_.size();
  if (names_.empty()) names_ = default_names(n);
  if (names_.size() != n) throw std::invalid_argument("world name count mismatch");
  up_.assign(n, WorldSet{});
  for (World w = 0; w < n; ++w)
    for (World v : down_[w]) up_[v].insert(w);
}

WorldSet Preorder::closure(WorldSet a) const {
  WorldSet out;
  for (World w = 0; w < size(); ++w)
    if (down_[w].intersects(a)) out.insert(w);
  return out;
}

WorldSet Preorder::interior(WorldSet a) const {
  WorldSet out;
  for (World w : a)
    if (down_[w].subset_of(a)) out.insert(w);
  return out;
}

std::vector<WorldSet> Preorder::clusters() const {
  std::vector<WorldSet> out;
  WorldSet seen;
  for (World w = 0; w < size(); ++w) {
    if (seen.contains(w)) continue;
    WorldSet c = cluster(w);
    seen |= c;
    out.push_back(c);
  }
  return out;
}

std::vector<WorldSet> Preorder::daughters(World w) const {
  const WorldSet strict = down_[w] - cluster(w);
  std::vector<WorldSet> out;
  WorldSet seen;
  for (World v : strict) {
    if (seen.contains(v)) continue;
    WorldSet c = cluster(v);
    seen |= c;
    // Immediate: nothing strictly between v and w.
    bool immediate = true;
    for (World u : strict - c)
      if (down_[u].contains(v)) { immediate = false; break; }
    if (immediate) out.push_back(c);
  }
  return out;
}

Preorder Preorder::induced(WorldSet keep) const {
  std::vector<World> members(keep.begin(), keep.end());
  std::vector<int> pos(size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
  std::vector<WorldSet> down(members.size());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (World v : down_[members[i]] & keep) down[i].insert(static_cast<World>(pos[v]));
    names.push_back(names_[members[i]]);
  }
  Preorder p;
  p.down_ = std::move(down);
  p.names_ = std::move(names);
  p.finish();
  return p;
}

World Preorder::index_of(const std::string& id) const {
  auto it = std::find(names_.begin(), names_.end(), id);
  if (it == names_.end()) throw UnknownWorld(id);
  return static_cast<World>(it - names_.begin());
}

std::vector<std::string> Preorder::sorted_names(WorldSet s) const {
  std::vector<std::string> out;
  for (World w : s) out.push_back(names_[w]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<World, World>> Preorder::pairs() const {
  std::vector<std::pair<World, World>> out;
  for (World w = 0; w < size(); ++w)
    for (World v : down_[w])
      if (v != w) out.emplace_back(v, w);
  return out;
}

MapVerdict is_continuous_map(const Preorder& p, std::span<const World> f) {
  if (f.size() != p.size()) throw std::invalid_argument("map must be total on the worlds");
  for (World w = 0; w < p.size(); ++w)
    for (World v : p.downset(w))
      if (!p.le(f[v], f[w])) return {false, std::pair{v, w}};
  return {};
}

RelationVerdict is_continuous_relation(const Preorder& p, const Preorder& q, const Relation& r) {
  for (World w = 0; w < p.size(); ++w)
    for (World v : r[w])
      for (World wb : p.downset(w))
        if (!r[wb].intersects(q.downset(v))) return {false, w, v, wb};
  return {};
}

Relation graph_of(std::span<const World> f) {
  Relation r(f.size());
  for (World w = 0; w < f.size(); ++w) r[w].insert(f[w]);
  return r;
}

}  // namespace dtl
