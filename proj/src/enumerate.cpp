#include "dtl/enumerate.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <mutex>
#include <set>

#include "dtl/canonical.hpp"

namespace dtl {
namespace {

// Adds a new world whose strict down set is d and strict up set is u.
std::vector<WorldSet> extend(const Preorder& p, WorldSet d, WorldSet u) {
  const std::size_t n = p.size();
  std::vector<WorldSet> down(p.down_sets());
  WorldSet self = WorldSet::single(static_cast<World>(n));
  for (World w : u) down[w] |= self | d;
  down.push_back(d | self);
  // Worlds above u see d as well; u is up-closed so down[w] above covers them.
  return down;
}

bool down_closed(const Preorder& p, WorldSet s) {
  for (World w : s)
    if (!p.downset(w).subset_of(s)) return false;
  return true;
}

bool up_closed(const Preorder& p, WorldSet s) {
  for (World w : s)
    if (!p.upset(w).subset_of(s)) return false;
  return true;
}

std::vector<Preorder> build_level(const std::vector<Preorder>& prev) {
  std::vector<Preorder> out;
  std::set<std::vector<std::uint64_t>> seen;
  for (const Preorder& p : prev) {
    const std::size_t n = p.size();
    const std::uint64_t lim = std::uint64_t{1} << n;
    for (std::uint64_t db = 0; db < lim; ++db) {
      WorldSet d(db);
      if (!down_closed(p, d)) continue;
      for (std::uint64_t ub = 0; ub < lim; ++ub) {
        WorldSet u(ub);
        if (!up_closed(p, u)) continue;
        bool ok = true;
        for (World x : d) {
          if (!u.subset_of(p.upset(x))) { ok = false; break; }
        }
        if (!ok) continue;
        Preorder q = Preorder::from_down_sets(extend(p, d, u));
        CanonicalForm cf = canonical_form(q);
        if (!seen.insert(cf.rows).second) continue;
        // Store in canonical labelling so the representative is deterministic.
        std::vector<WorldSet> down(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) down[i] = WorldSet(cf.rows[i]);
        out.push_back(Preorder::from_down_sets(std::move(down)));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Preorder& a, const Preorder& b) {
    std::vector<std::uint64_t> ra, rb;
    for (auto s : a.down_sets()) ra.push_back(s.bits());
    for (auto s : b.down_sets()) rb.push_back(s.bits());
    return ra < rb;
  });
  return out;
}

}  // namespace

const std::vector<Preorder>& preorders_up_to_iso(std::size_t n) {
  static std::mutex mu;
  static std::deque<std::vector<Preorder>> levels;  // deque keeps references stable
  if (n == 0 || n > kRandomCap) throw CapExceeded("preorder enumeration supports 1 to 6 worlds");
  std::lock_guard lock(mu);
  if (levels.empty()) {
    std::array<std::pair<World, World>, 0> none{};
    levels.push_back({Preorder(1, none)});
  }
  while (levels.size() < n) levels.push_back(build_level(levels.back()));
  return levels[n - 1];
}

std::vector<Preorder> rooted_preorders_up_to_iso(std::size_t n) {
  std::vector<Preorder> out;
  for (const Preorder& p : preorders_up_to_iso(n)) {
    // Find a world above everything; relabel it to position 0 by canonicalizing
    // with that world coloured.
    for (World r = 0; r < p.size(); ++r) {
      if (p.downset(r) != p.all()) continue;
      std::vector<std::uint64_t> colour(p.size(), 1);
      colour[r] = 0;
      CanonicalForm cf = canonical_form(p, colour);
      std::vector<WorldSet> down(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) down[i] = WorldSet(cf.rows[i]);
      out.push_back(Preorder::from_down_sets(std::move(down)));
      break;
    }
  }
  return out;
}

std::vector<std::vector<World>> monotone_maps(const Preorder& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<World>> out;
  std::vector<World> f(n, 0);
  // Assign worlds in index order, checking every constraint among assigned ones.
  auto rec = [&](auto&& self, World w) -> void {
    if (w == n) { out.push_back(f); return; }
    for (World y = 0; y < n; ++y) {
      f[w] = y;
      bool ok = true;
      for (World v = 0; v < w && ok; ++v) {
        if (p.le(v, w) && !p.le(f[v], y)) ok = false;
        if (p.le(w, v) && !p.le(y, f[v])) ok = false;
      }
      if (ok) self(self, w + 1);
    }
  };
  rec(rec, 0);
  return out;
}

ModelSpace::ModelSpace(std::size_t n_max, std::vector<std::string> vars, bool identity_only)
    : vars_(std::move(vars)) {
  if (n_max == 0 || n_max > kExhaustiveCap)
    throw CapExceeded("exhaustive model enumeration is capped at " + std::to_string(kExhaustiveCap) + " worlds");
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n * vars_.size() >= 40) throw CapExceeded("too many valuations");
    for (const Preorder& p : preorders_up_to_iso(n)) {
      Block b;
      b.space = &p;
      if (identity_only) {
        std::vector<World> id(n);
        for (World w = 0; w < n; ++w) id[w] = w;
        b.maps.push_back(std::move(id));
      } else {
        b.maps = monotone_maps(p);
      }
      b.start = total_;
      b.valuations = std::size_t{1} << (n * vars_.size());
      total_ += b.maps.size() * b.valuations;
      blocks_.push_back(std::move(b));
    }
  }
}

DynModel ModelSpace::operator[](std::size_t i) const {
  if (i >= total_) throw std::out_of_range("model index");
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), i,
                             [](std::size_t x, const Block& b) { return x < b.start; });
  const Block& b = *std::prev(it);
  const std::size_t off = i - b.start;
  const std::size_t map_ix = off / b.valuations;
  std::uint64_t bits = off % b.valuations;
  const std::size_t n = b.space->size();
  std::map<std::string, WorldSet> val;
  for (const std::string& v : vars_) {
    val[v] = WorldSet(bits & ((std::uint64_t{1} << n) - 1));
    bits >>= n;
  }
  return DynModel(*b.space, b.maps[map_ix], std::move(val));
}

DynModel random_model(std::size_t n_max, const std::vector<std::string>& vars, std::mt19937_64& rng) {
  if (n_max == 0 || n_max > kRandomCap)
    throw CapExceeded("random model sampling is capped at " + std::to_string(kRandomCap) + " worlds");
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, n_max)(rng);
  const auto& reps = preorders_up_to_iso(n);
  const Preorder& p = reps[std::uniform_int_distribution<std::size_t>(0, reps.size() - 1)(rng)];
  std::uniform_int_distribution<World> pick(0, static_cast<World>(n - 1));
  std::vector<World> f(n);
  for (;;) {  // rejection sampling keeps the map uniform among monotone ones
    for (auto& y : f) y = pick(rng);
    if (is_continuous_map(p, f)) break;
  }
  std::map<std::string, WorldSet> val;
  std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t{1} << n) - 1);
  for (const std::string& v : vars) val[v] = WorldSet(bits(rng));
  return DynModel(p, std::move(f), std::move(val));
}

RandomModels::RandomModels(std::size_t n_max, std::vector<std::string> vars, std::uint64_t seed)
    : n_max_(n_max), vars_(std::move(vars)), rng_(seed) {
  if (n_max_ == 0 || n_max_ > kRandomCap)
    throw CapExceeded("random model sampling is capped at " + std::to_string(kRandomCap) + " worlds");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace dtl
