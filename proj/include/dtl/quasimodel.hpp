#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/typing.hpp"

namespace dtl {

class QuasimodelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SensibleVerdict {
  bool holds = true;
  int clause = 0;  // 1: next, 2: negated next, 3: henceforth, 4: eventuality
  Formula formula;
  explicit operator bool() const { return holds; }
};

SensibleVerdict is_sensible_pair(const TypeSet& a, const TypeSet& b);

struct Quasimodel {
  TypedPreorder base;
  Relation step;  // step[w] = successors of w
};

struct QuasimodelVerdict {
  bool holds = true;
  std::string reason;
  World w = 0, v = 0;
  Formula formula;
  explicit operator bool() const { return holds; }
};

/// Typing (and phi-types when phi is given), seriality, continuity,
/// sensibility of every pair and omega-sensibility.
QuasimodelVerdict validate_quasimodel(const Quasimodel& q, const FormulaSet* phi = nullptr);

/// Worlds reachable from w in zero or more steps.
WorldSet reachable_worlds(const Quasimodel& q, World w);

/// Types from type_of_world, step = graph of the map.
Quasimodel quasimodel_of_model(const DynModel& m, const FormulaSet& phi);

/// A finite sequence, or an eventually periodic one when `loop` is set: after
/// the last element the sequence continues at index *loop.
struct Path {
  std::vector<World> worlds;
  std::optional<std::size_t> loop;

  World at(std::size_t i) const;
  friend bool operator==(const Path&, const Path&) = default;
};

bool is_path(const Quasimodel& q, const Path& p);
/// Every eventuality at every index is realized at that index or later.
/// For finite paths only indices within the path count.
bool is_realizing(const Quasimodel& q, const Path& p);
/// Drops the first element.
Path shift(const Path& p);
/// v_n <= w_n for all n < N (indices unrolled through loops).
bool below_n(const Quasimodel& q, const Path& v, const Path& w, std::size_t n);

/// A path v with v_n <= w_n for every n inside w, extended by seriality to
/// length max(|w|, len).  Throws QuasimodelError if continuity or seriality fails.
Path extend_path_below(const Quasimodel& q, const Path& w, World v0, std::size_t len);

/// A realizing lasso from w0.  Pending eventualities are discharged first in,
/// first out along shortest paths; the lasso closes at a repeated
/// (world, pending) configuration.  Throws QuasimodelError if q is not
/// omega-sensible along the way.
Path realizing_lasso(const Quasimodel& q, World w0);

/// The orbit of x under the map of m, as a lasso.
Path orbit(const DynModel& m, World x);

}  // namespace dtl
