#pragma once

// Types, typed preorders and states, together with the state transforms
// used to build simulation formulas.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/canonical.hpp"
#include "dtl/formula.hpp"
#include "dtl/model.hpp"

namespace dtl {

/// Types are stored with leading double negations removed.
using TypeSet = FormulaSet;

class StateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct TypeVerdict {
  bool holds = true;
  std::string clause;  // empty when holds
  Formula formula;
  explicit operator bool() const { return holds; }
};

/// The four closure conditions on weak types.
TypeVerdict check_weak_type(const TypeSet& t);
/// Weak type inside sub_pm(phi) deciding every member of sub(phi).
TypeVerdict check_phi_type(const TypeSet& t, const FormulaSet& phi);
/// Same check with sub(phi) and sub+-(phi) already computed.
TypeVerdict check_phi_type(const TypeSet& t, const FormulaSet& sub, const FormulaSet& pm);

/// Normalizes a set of formulas to stripped form.
TypeSet make_type(const std::vector<Formula>& fs);

/// All phi-types.  Formulas of sub(phi) are reduced to "bases" (no leading
/// negation); a type is a truth assignment to the bases respecting conjunction
/// and G psi -> psi.
class TypeSpace {
public:
  explicit TypeSpace(const FormulaSet& phi);

  const FormulaSet& phi() const { return phi_; }
  const std::vector<Formula>& bases() const { return bases_; }
  const std::vector<TypeSet>& types() const { return types_; }
  std::optional<std::size_t> index_of(const TypeSet& t) const;
  /// The type decided by a truth assignment (bit i = value of bases()[i]).
  TypeSet type_from_bits(std::uint64_t bits) const;

private:
  FormulaSet phi_;
  std::vector<Formula> bases_;
  std::vector<TypeSet> types_;
};

class TypedPreorder {
public:
  TypedPreorder() = default;
  TypedPreorder(Preorder space, std::vector<TypeSet> types);

  const Preorder& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const TypeSet& type(World w) const { return types_[w]; }
  const std::vector<TypeSet>& types() const { return types_; }

private:
  Preorder space_;
  std::vector<TypeSet> types_;
};

struct TypingVerdict {
  bool holds = true;
  World world = 0;
  Formula formula;
  int clause = 0;  // 1: a diamond lacks a witness cluster, 2: a negated diamond is refuted
  explicit operator bool() const { return holds; }
};

/// Both clauses of the typing-function definition at every world.
TypingVerdict validate_typing(const TypedPreorder& a);

TypeSet type_of_world(const DynModel& m, const FormulaSet& phi, World w);
/// Every world typed by type_of_world.
TypedPreorder typed_model(const DynModel& m, const FormulaSet& phi);

/// A finite rooted typed preorder with every world below the root and no two
/// equivalent worlds sharing a type.
class State {
public:
  State() = default;
  /// Throws StateError on a root that is not greatest or on a cluster collision.
  State(TypedPreorder base, World root);

  const TypedPreorder& base() const { return base_; }
  const Preorder& space() const { return base_.space(); }
  std::size_t size() const { return base_.size(); }
  World root() const { return root_; }
  const TypeSet& type(World w) const { return base_.type(w); }
  const TypeSet& root_type() const { return base_.type(root_); }
  /// Distinct types in sorted order.
  std::vector<TypeSet> type_range() const;

private:
  TypedPreorder base_;
  World root_ = 0;
};

/// Isomorphism-invariant key of a state.
struct StateKey {
  std::vector<TypeSet> types;
  std::vector<std::uint64_t> colours;
  std::vector<std::uint64_t> rows;
  std::size_t hash = 0;
  friend bool operator==(const StateKey& a, const StateKey& b) {
    return a.hash == b.hash && a.rows == b.rows && a.colours == b.colours && a.types == b.types;
  }
};
struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const { return k.hash; }
};

StateKey state_key(const State& s);
/// The state relabelled in canonical order (root first); names w0, w1, ...
State canonicalize(const State& s);
bool isomorphic(const State& a, const State& b);

struct Norm {
  std::size_t hgt = 0, wdt = 0, nrm = 0;
  friend bool operator==(const Norm&, const Norm&) = default;
};
Norm norm(const State& s);

State substate(const State& s, World v);
/// Indexed by world; entry root() is the state itself.
std::vector<State> substates(const State& s);

struct DistinctVerdict {
  bool holds = true;
  World w = 0, v = 0;
  explicit operator bool() const { return holds; }
};
DistinctVerdict distinctly_typed(const State& s);

/// Indicator typing over fresh variables, one per distinct type.
struct IndicatorState {
  State state;
  std::vector<std::string> vars;  // vars[i] stands for type_range()[i]
  Substitution back;              // vars[i] -> conjunction of type_range()[i]
};
IndicatorState state_p(const State& s);

enum class PlusVariant { Literal, OwnType };
State state_plus(const State& s, const FormulaSet& phi, PlusVariant variant = PlusVariant::Literal);

/// Throws StateError if two equivalent worlds end up with the same type.
State state_subst(const State& s, const Substitution& sigma);

/// Replaces outermost G delta in every type by shared fresh variables.
State state_q(const State& s, QTransform& q);

/// The state over the down set of x typed by type_of_world, with equivalent
/// worlds of equal type merged.
State state_of_point(const DynModel& m, const FormulaSet& phi, World x);
/// Same from an already typed model.
State state_of_point(const TypedPreorder& a, World x);

}  // namespace dtl
