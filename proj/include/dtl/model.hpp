#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/preorder.hpp"

namespace dtl {

class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A finite dynamic topological model: a preorder, a monotone self-map and a
/// valuation.  Variables absent from the valuation are false everywhere.
class DynModel {
public:
  DynModel() = default;
  /// Throws ModelError if f is not total or not monotone.
  DynModel(Preorder space, std::vector<World> f, std::map<std::string, WorldSet> val = {});

  const Preorder& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<World>& f() const { return f_; }
  World f(World w) const { return f_[w]; }
  const std::map<std::string, WorldSet>& valuation() const { return val_; }
  bool has_var(const std::string& name) const { return val_.count(name) != 0; }
  WorldSet val(const std::string& name) const;
  /// f^{-1}(a)
  WorldSet preimage(WorldSet a) const;

private:
  Preorder space_;
  std::vector<World> f_;
  std::map<std::string, WorldSet> val_;
};

}  // namespace dtl
