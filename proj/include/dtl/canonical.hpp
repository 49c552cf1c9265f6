#pragma once

// Canonical labelling of small preorders with vertex colours.  Worlds are
// partitioned by a refined invariant and the relation matrix is minimized
// over permutations inside each cell.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "dtl/preorder.hpp"

namespace dtl {

struct CanonicalForm {
  /// Input colour of the world at each canonical position.
  std::vector<std::uint64_t> colours;
  /// rows[i] = down set of the i-th canonical world, in canonical positions.
  std::vector<std::uint64_t> rows;
  /// order[i] = original world at canonical position i.
  std::vector<World> order;

  bool same_class(const CanonicalForm& o) const { return colours == o.colours && rows == o.rows; }
};

/// `colour` may be empty (all worlds alike).  Two coloured preorders get the
/// same colours and rows iff they are isomorphic by a colour-preserving map.
CanonicalForm canonical_form(const Preorder& p, std::span<const std::uint64_t> colour = {});

}  // namespace dtl
