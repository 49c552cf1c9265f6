#pragma once

// Exhaustive and random enumeration of small dynamic models.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/model.hpp"

namespace dtl {

class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kExhaustiveCap = 5;
inline constexpr std::size_t kRandomCap = 6;

/// Preorders on exactly n worlds, one per isomorphism class.  Cached; n <= 6.
const std::vector<Preorder>& preorders_up_to_iso(std::size_t n);
/// Preorders with a greatest cluster containing world 0 (every world below 0).
std::vector<Preorder> rooted_preorders_up_to_iso(std::size_t n);

/// All monotone self-maps in lexicographic order.
std::vector<std::vector<World>> monotone_maps(const Preorder& p);

/// Index-addressable space of models with 1..n_max worlds: each preorder class,
/// each monotone map and each valuation of `vars`.
class ModelSpace {
public:
  /// Throws CapExceeded when n_max exceeds kExhaustiveCap.  With
  /// `identity_only` the map is always the identity.
  ModelSpace(std::size_t n_max, std::vector<std::string> vars, bool identity_only = false);

  std::size_t size() const { return total_; }
  DynModel operator[](std::size_t i) const;
  const std::vector<std::string>& vars() const { return vars_; }

private:
  struct Block {
    const Preorder* space;
    std::vector<std::vector<World>> maps;
    std::size_t start;
    std::size_t valuations;
  };
  std::vector<std::string> vars_;
  std::vector<Block> blocks_;
  std::size_t total_ = 0;
};

/// Uniform preorder class size in 1..n_max, then a uniform class, a uniform
/// monotone map and a uniform valuation.
DynModel random_model(std::size_t n_max, const std::vector<std::string>& vars, std::mt19937_64& rng);

/// Reproducible random model stream.
class RandomModels {
public:
  RandomModels(std::size_t n_max, std::vector<std::string> vars, std::uint64_t seed);
  DynModel next() { return random_model(n_max_, vars_, rng_); }

private:
  std::size_t n_max_;
  std::vector<std::string> vars_;
  std::mt19937_64 rng_;
};

/// Per-trial seed derivation (splitmix64 of master and index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace dtl
