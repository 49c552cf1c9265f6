#include "dtl/enumerate.hpp"
#include "test_util.hpp"

using namespace dtl;

namespace {

// b below a.
Preorder chain() {
  const std::pair<World, World> below[] = {{1, 0}};
  return Preorder(2, below, {"a", "b"});
}

Preorder two_cluster() {
  const std::pair<World, World> below[] = {{0, 1}, {1, 0}};
  return Preorder(2, below, {"x", "y"});
}

bool is_open_brute(const Preorder& p, WorldSet u) {
  for (World w : u)
    for (World v = 0; v < p.size(); ++v)
      if (p.le(v, w) && !u.contains(v)) return false;
  return true;
}

std::vector<Preorder> small_preorders(std::size_t n_max) {
  std::vector<Preorder> out;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (const Preorder& p : preorders_up_to_iso(n)) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("down-sets") {
  const Preorder c = chain();
  CHECK(c.downset(c.index_of("a")) == WorldSet::full(2));
  CHECK(c.downset(c.index_of("b")) == WorldSet::single(1));
  const Preorder k = two_cluster();
  CHECK(k.downset(0) == WorldSet::full(2));
  CHECK(c.is_open(c.downset(0)));
  CHECK_THROWS_AS(c.index_of("zz"), UnknownWorld);
}

TEST_CASE("order pairs are closed reflexively and transitively") {
  const std::pair<World, World> below[] = {{2, 1}, {1, 0}};
  const Preorder p(3, below);
  CHECK(p.le(2, 0));
  CHECK(p.le(1, 1));
  CHECK_FALSE(p.le(0, 2));
  CHECK(p.name(2) == "w2");
}

TEST_CASE("closure") {
  const Preorder c = chain();
  CHECK(c.closure(WorldSet::single(1)) == WorldSet::full(2));
  CHECK(c.closure(WorldSet::single(0)) == WorldSet::single(0));
  CHECK(c.closure(WorldSet{}) == WorldSet{});
  CHECK(c.interior(WorldSet::single(0)) == WorldSet{});
  CHECK(c.interior(WorldSet::single(1)) == WorldSet::single(1));
}

TEST_CASE("closure is a Kuratowski operator on every preorder up to four worlds") {
  for (const Preorder& p : small_preorders(4)) {
    const std::uint64_t n = std::uint64_t{1} << p.size();
    for (std::uint64_t a = 0; a < n; ++a) {
      const WorldSet A(a);
      const WorldSet cA = p.closure(A);
      CHECK(A.subset_of(cA));
      CHECK(p.closure(cA) == cA);
      // Brute force: w in closure iff its down-set meets A.
      for (World w = 0; w < p.size(); ++w) CHECK(cA.contains(w) == p.downset(w).intersects(A));
      // Open iff complement closed iff down-closed.
      CHECK(p.is_open(A) == is_open_brute(p, A));
      CHECK(p.is_open(A) == p.is_closed(p.all() - A));
      for (std::uint64_t b = 0; b < n; ++b) {
        const WorldSet B(b);
        CHECK(p.closure(A | B) == (cA | p.closure(B)));
        if (A.subset_of(B)) CHECK(cA.subset_of(p.closure(B)));
      }
    }
  }
}

TEST_CASE("clusters and daughters") {
  const std::pair<World, World> below[] = {{1, 0}, {2, 0}, {3, 1}};
  const Preorder p(4, below);
  CHECK(p.clusters().size() == 4);
  CHECK(p.daughters(0).size() == 2);
  CHECK(p.daughters(1) == std::vector<WorldSet>{WorldSet::single(3)});
  CHECK(p.daughters(3).empty());
  const Preorder k = two_cluster();
  CHECK(k.cluster(0) == WorldSet::full(2));
  CHECK(k.daughters(0).empty());
}

TEST_CASE("continuous maps") {
  const Preorder c = chain();
  const World id[] = {0, 1};
  CHECK(is_continuous_map(c, id));
  const World constant[] = {1, 1};
  CHECK(is_continuous_map(c, constant));
  const World swap[] = {1, 0};
  const MapVerdict v = is_continuous_map(c, swap);
  CHECK_FALSE(v);
  REQUIRE(v.witness);
  CHECK(v.witness->first == 1);
  CHECK(v.witness->second == 0);
}

TEST_CASE("continuity means open preimages") {
  for (const Preorder& p : small_preorders(3)) {
    const std::size_t n = p.size();
    std::vector<World> f(n, 0);
    while (true) {
      bool preimages_open = true;
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
        if (!is_open_brute(p, WorldSet(u))) continue;
        WorldSet pre;
        for (World w = 0; w < n; ++w)
          if (WorldSet(u).contains(f[w])) pre.insert(w);
        if (!is_open_brute(p, pre)) preimages_open = false;
      }
      CHECK(static_cast<bool>(is_continuous_map(p, f)) == preimages_open);
      CHECK(static_cast<bool>(is_continuous_relation(p, p, graph_of(f))) == preimages_open);
      std::size_t j = 0;
      while (j < n && ++f[j] == n) f[j++] = 0;
      if (j == n) break;
    }
  }
}

TEST_CASE("graph continuity agrees with map continuity up to four worlds") {
  for (const Preorder& p : small_preorders(4)) {
    const std::size_t n = p.size();
    std::vector<World> f(n, 0);
    while (true) {
      CHECK(static_cast<bool>(is_continuous_map(p, f)) == static_cast<bool>(is_continuous_relation(p, p, graph_of(f))));
      std::size_t j = 0;
      while (j < n && ++f[j] == n) f[j++] = 0;
      if (j == n) break;
    }
  }
}

TEST_CASE("continuous relations") {
  const Preorder c = chain();
  CHECK(is_continuous_relation(c, c, Relation{WorldSet::full(2), WorldSet::full(2)}));
  const RelationVerdict v = is_continuous_relation(c, c, Relation{WorldSet::single(0), WorldSet{}});
  CHECK_FALSE(v);
  CHECK(v.w == 0);
  CHECK(v.w_below == 1);
}

TEST_CASE("world-count guard") {
  CHECK_THROWS_AS(check_world_count(0), std::invalid_argument);
  CHECK_THROWS_AS(check_world_count(65), std::invalid_argument);
  CHECK_NOTHROW(check_world_count(64));
}
