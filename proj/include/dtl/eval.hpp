#pragma once

#include <span>
#include <stdexcept>
#include <unordered_map>

#include "dtl/formula.hpp"
#include "dtl/model.hpp"

namespace dtl {

class UnknownVariable : public std::runtime_error {
public:
  explicit UnknownVariable(const std::string& v) : std::runtime_error("variable '" + v + "' has no valuation") {}
};

/// Largest E such that every member of the family is dense in E.
WorldSet tangled_gfp(const Preorder& p, std::span<const WorldSet> family);
/// Points seeing a single cluster that meets every member of the family.
WorldSet tangled_cluster(const Preorder& p, std::span<const WorldSet> family);

/// Memoizing evaluator bound to one model.  Not thread safe; use one per thread.
class Evaluator {
public:
  /// In strict mode a variable missing from the valuation throws UnknownVariable.
  explicit Evaluator(const DynModel& m, bool strict = false) : m_(m), strict_(strict) {}
  Evaluator(DynModel&&, bool = false) = delete;  // holds a reference

  WorldSet operator()(const Formula& f);
  bool holds(const Formula& f, World w) { return (*this)(f).contains(w); }
  bool valid(const Formula& f) { return (*this)(f) == m_.space().all(); }
  const DynModel& model() const { return m_; }

private:
  WorldSet compute(const Formula& f);

  const DynModel& m_;
  bool strict_;
  std::unordered_map<Formula, WorldSet, FormulaHash> memo_;
};

WorldSet eval(const DynModel& m, const Formula& f, bool strict = false);

}  // namespace dtl
