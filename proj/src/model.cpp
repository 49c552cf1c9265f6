#include "dtl/model.hpp"

namespace dtl {

DynModel::DynModel(Preorder space, std::vector<World> f, std::map<std::string, WorldSet> val)
    : space_(std::move(space)), f_(std::move(f)), val_(std::move(val)) {
  if (f_.size() != space_.size()) throw ModelError("map must be defined on every world");
  for (World w : f_)
    if (w >= space_.size()) throw ModelError("map leaves the space");
  if (auto v = is_continuous_map(space_, f_); !v) {
    auto [lo, hi] = *v.witness;
    throw ModelError("map is not monotone: " + space_.name(lo) + " <= " + space_.name(hi) + " but " +
                     space_.name(f_[lo]) + " is not below " + space_.name(f_[hi]));
  }
  const WorldSet all = space_.all();
  for (auto& [k, s] : val_)
    if (!s.subset_of(all)) throw ModelError("valuation of '" + k + "' leaves the space");
}

WorldSet DynModel::val(const std::string& name) const {
  auto it = val_.find(name);
  return it == val_.end() ? WorldSet{} : it->second;
}

WorldSet DynModel::preimage(WorldSet a) const {
  WorldSet out;
  for (World w = 0; w < f_.size(); ++w)
    if (a.contains(f_[w])) out.insert(w);
  return out;
}

}  // namespace dtl
