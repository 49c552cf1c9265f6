#pragma once

// Finite preorders read as Alexandrov (down-set) topologies: a set is open
// iff it is closed downward under v <= w.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dtl/worldset.hpp"

namespace dtl {

class UnknownWorld : public std::out_of_range {
public:
  explicit UnknownWorld(const std::string& id) : std::out_of_range("unknown world '" + id + "'") {}
};

/// Image sets: rel[w] = { v : w R v }.
using Relation = std::vector<WorldSet>;

class Preorder {
public:
  Preorder() = default;

  /// Reflexive-transitive closure of the given pairs; (v, w) means v <= w.
  Preorder(std::size_t n, std::span<const std::pair<World, World>> below,
           std::vector<std::string> names = {});

  /// down[w] must already be reflexive and transitive; throws otherwise.
  static Preorder from_down_sets(std::vector<WorldSet> down, std::vector<std::string> names = {});

  std::size_t size() const { return down_.size(); }
  WorldSet all() const { return WorldSet::full(size()); }

  bool le(World v, World w) const { return down_[w].contains(v); }
  bool lt(World v, World w) const { return le(v, w) && !le(w, v); }
  bool equivalent(World v, World w) const { return le(v, w) && le(w, v); }

  WorldSet downset(World w) const { return down_.at(w); }
  WorldSet upset(World w) const { return up_.at(w); }
  const std::vector<WorldSet>& down_sets() const { return down_; }

  WorldSet closure(WorldSet a) const;
  WorldSet interior(WorldSet a) const;
  bool is_open(WorldSet a) const { return interior(a) == a; }
  bool is_closed(WorldSet a) const { return closure(a) == a; }

  WorldSet cluster(World w) const { return down_[w] & up_[w]; }
  /// Clusters ordered by their least world.
  std::vector<WorldSet> clusters() const;
  /// Immediate strict predecessor clusters of [w] in the quotient order.
  std::vector<WorldSet> daughters(World w) const;

  /// Restriction to a subset; the i-th world of the result is the i-th member of `keep`.
  Preorder induced(WorldSet keep) const;

  const std::string& name(World w) const { return names_.at(w); }
  const std::vector<std::string>& names() const { return names_; }
  World index_of(const std::string& id) const;
  /// Member ids sorted by name.
  std::vector<std::string> sorted_names(WorldSet s) const;

  /// Downward pairs (v, w) with v < w or v ~ w, excluding reflexive ones.
  std::vector<std::pair<World, World>> pairs() const;

  friend bool operator==(const Preorder& a, const Preorder& b) { return a.down_ == b.down_; }

private:
  void finish();

  std::vector<WorldSet> down_;
  std::vector<WorldSet> up_;
  std::vector<std::string> names_;
};

std::vector<std::string> default_names(std::size_t n);

struct MapVerdict {
  bool holds = true;
  /// v <= w but f(v) is not below f(w).
  std::optional<std::pair<World, World>> witness;
  explicit operator bool() const { return holds; }
};

/// Monotone maps are exactly the continuous ones for down-set topologies.
MapVerdict is_continuous_map(const Preorder& p, std::span<const World> f);

struct RelationVerdict {
  bool holds = true;
  /// w R v and w_below <= w, yet nothing below v is related to w_below.
  World w = 0, v = 0, w_below = 0;
  explicit operator bool() const { return holds; }
};

/// Preimages of open sets are open: whenever w R v and w' <= w there is v' <= v with w' R v'.
RelationVerdict is_continuous_relation(const Preorder& p, const Preorder& q, const Relation& r);

Relation graph_of(std::span<const World> f);

}  // namespace dtl
