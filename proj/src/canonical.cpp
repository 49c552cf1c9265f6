#include "dtl/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace dtl {
namespace {

// Colour refinement: a world's new colour is its old colour plus the sorted
// colours of its strict down and up sets.  Values are re-ranked every round
// so that colours stay small and comparable across inputs.
std::vector<std::uint64_t> refine(const Preorder& p, std::vector<std::uint64_t> col) {
  const std::size_t n = p.size();
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::vector<std::uint64_t>> sig(n);
    for (World w = 0; w < n; ++w) {
      std::vector<std::uint64_t> dn, up;
      for (World v : p.downset(w)) if (v != w) dn.push_back(col[v]);
      for (World v : p.upset(w)) if (v != w) up.push_back(col[v]);
      std::sort(dn.begin(), dn.end());
      std::sort(up.begin(), up.end());
      sig[w].push_back(col[w]);
      sig[w].push_back(dn.size());
      sig[w].insert(sig[w].end(), dn.begin(), dn.end());
      sig[w].push_back(up.size());
      sig[w].insert(sig[w].end(), up.begin(), up.end());
    }
    std::map<std::vector<std::uint64_t>, std::uint64_t> rank;
    for (auto& s : sig) rank.emplace(s, 0);
    std::uint64_t r = 0;
    for (auto& [k, v] : rank) v = r++;
    for (World w = 0; w < n; ++w) col[w] = rank[sig[w]];
    if (rank.size() == classes) break;
    classes = rank.size();
  }
  return col;
}

}  // namespace

CanonicalForm canonical_form(const Preorder& p, std::span<const std::uint64_t> colour) {
  const std::size_t n = p.size();
  std::vector<std::uint64_t> col(n, 0);
  if (!colour.empty()) col.assign(colour.begin(), colour.end());
  // Refined ranks depend only on the isomorphism class: every round ranks by
  // signature content, and the first round sees the input colours verbatim.
  col = refine(p, std::move(col));

  std::vector<World> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::stable_sort(base.begin(), base.end(), [&](World a, World b) { return col[a] < col[b]; });

  std::vector<std::pair<std::size_t, std::size_t>> cells;  // [begin, end)
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && col[base[j]] == col[base[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }

  CanonicalForm best;
  bool have = false;
  std::vector<World> order = base;
  std::vector<std::uint64_t> pos(n);

  auto evaluate = [&] {
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::uint64_t> rows(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (World v : p.downset(order[i])) rows[i] |= std::uint64_t{1} << pos[v];
    if (!have || rows < best.rows) {
      best.rows = std::move(rows);
      best.order = order;
      have = true;
    }
  };

  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == cells.size()) { evaluate(); return; }
    auto [b, e] = cells[c];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      rec(c + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  rec(0);

  best.colours.resize(n);
  for (std::size_t i = 0; i < n; ++i) best.colours[i] = colour.empty() ? 0 : colour[best.order[i]];
  return best;
}

}  // namespace dtl
