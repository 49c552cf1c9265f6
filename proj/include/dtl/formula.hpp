#pragma once

// Formulas of dynamic topological logic with the polyadic tangled modality.
//
// Primitive connectives are negation, conjunction, next (X), henceforth (G)
// and the tangled diamond over a finite set.  Everything else (|, ->, <->,
// [], F, single-argument <>) is an abbreviation expanded at construction.
//
// Formula values are immutable and share structure through reference-counted
// nodes; equality is structural, with a pointer fast path.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dtl {

enum class Op : std::uint8_t { Var, Not, And, Next, Always, Tangle };

struct FormulaNode;

class Formula {
public:
  Formula() = default;

  Op op() const;
  const std::string& name() const;  // Var only
  std::span<const Formula> args() const;
  const Formula& arg(std::size_t i = 0) const { return args()[i]; }

  std::size_t hash() const;
  std::size_t depth() const;
  bool valid() const { return node_ != nullptr; }
  const FormulaNode* node() const { return node_.get(); }

  bool is(Op o) const { return op() == o; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  static Formula make(Op op, std::string name, std::vector<Formula> args);

private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  Op op;
  std::string name;
  std::vector<Formula> args;
  std::size_t hash;
  std::size_t depth;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Total structural order used for canonical set ordering and printing.
std::strong_ordering compare(const Formula& a, const Formula& b);

// Primitive constructors.
Formula var(std::string name);
Formula neg(Formula a);
Formula conj(Formula a, Formula b);
Formula next(Formula a);
Formula always(Formula a);
Formula tangle(std::vector<Formula> members);

// Abbreviations.
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula diamond(Formula a);
Formula box(Formula a);
Formula eventually(Formula a);
Formula top();  // <>{} , true everywhere
Formula conj_all(std::span<const Formula> fs);
Formula disj_all(std::span<const Formula> fs);

/// Matches a -> b, i.e. ~(a & ~b).
bool match_implication(const Formula& f, Formula* lhs = nullptr, Formula* rhs = nullptr);

/// Removes pairs of leading negations: ~~p becomes p.
Formula strip(const Formula& f);
/// The complement under the identification of psi with ~~psi.
Formula complement(const Formula& f);

/// An eventuality <f>psi is ~G chi; returns psi (= complement of chi).
bool is_eventuality(const Formula& f);
Formula eventuality_target(const Formula& f);

std::string to_string(const Formula& f);

/// Finite set of formulas in canonical (sorted, duplicate-free) order.
class FormulaSet {
public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> fs);
  explicit FormulaSet(std::vector<Formula> fs);

  bool contains(const Formula& f) const;
  /// Membership with ~~psi identified with psi.
  bool contains_mod_dneg(const Formula& f) const;
  /// contains_mod_dneg(complement(f)) without building the complement.
  bool contains_complement(const Formula& f) const;
  void insert(const Formula& f);
  void insert_all(const FormulaSet& other);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Formula>& items() const { return items_; }
  const Formula& operator[](std::size_t i) const { return items_[i]; }

  std::size_t hash() const;

  friend bool operator==(const FormulaSet&, const FormulaSet&) = default;
  friend std::strong_ordering operator<=>(const FormulaSet& a, const FormulaSet& b);

private:
  std::vector<Formula> items_;
  bool dneg_ = false;  // some member starts with a double negation
};

struct FormulaSetHash {
  std::size_t operator()(const FormulaSet& s) const { return s.hash(); }
};

std::string to_string(const FormulaSet& s);

/// sub(Phi): every subformula of every member, Tangle members included.
FormulaSet subformulas(const FormulaSet& phi);
/// sub(Phi) together with complements, stripped of double negations.
FormulaSet sub_pm(const FormulaSet& phi);
/// len(Phi) = #sub(Phi).
std::size_t length(const FormulaSet& phi);

/// Variable names occurring in f.
std::vector<std::string> variables(const Formula& f);
std::vector<std::string> variables(const FormulaSet& s);

using Substitution = std::map<std::string, Formula>;

/// Simultaneous substitution; shared subterms are rewritten once.
Formula substitute(const Formula& f, const Substitution& sigma);

/// Replaces each outermost G delta by a fresh variable shared between equal
/// deltas.  The fresh names are drawn so that they do not clash with the
/// variables of any formula passed to the constructor.
class QTransform {
public:
  explicit QTransform(const FormulaSet& context, std::string prefix = "_q");

  Formula apply(const Formula& f);
  FormulaSet apply(const FormulaSet& s);

  /// Maps each introduced variable back to its G delta.
  Substitution inverse() const;
  const std::vector<std::pair<Formula, std::string>>& table() const { return table_; }

private:
  std::string fresh_for(const Formula& delta);

  std::string prefix_;
  std::vector<std::pair<Formula, std::string>> table_;  // delta -> variable
};

/// A prefix such that prefix + digits never collides with a variable of s.
std::string fresh_prefix(const std::vector<std::string>& used, std::string base);

}  // namespace dtl

template <>
struct std::hash<dtl::Formula> {
  std::size_t operator()(const dtl::Formula& f) const { return f.hash(); }
};
