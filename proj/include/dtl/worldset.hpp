#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <stdexcept>

namespace dtl {

using World = std::uint32_t;

/// Subset of the worlds of a finite structure with at most 64 worlds.
class WorldSet {
public:
  static constexpr std::size_t kMaxWorlds = 64;

  constexpr WorldSet() = default;
  constexpr explicit WorldSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr WorldSet full(std::size_t n) {
    return WorldSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr WorldSet single(World w) { return WorldSet(std::uint64_t{1} << w); }

  constexpr bool contains(World w) const { return (bits_ >> w) & 1U; }
  constexpr void insert(World w) { bits_ |= std::uint64_t{1} << w; }
  constexpr void erase(World w) { bits_ &= ~(std::uint64_t{1} << w); }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool intersects(WorldSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(WorldSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr World first() const { return static_cast<World>(std::countr_zero(bits_)); }

  constexpr WorldSet operator|(WorldSet o) const { return WorldSet(bits_ | o.bits_); }
  constexpr WorldSet operator&(WorldSet o) const { return WorldSet(bits_ & o.bits_); }
  constexpr WorldSet operator-(WorldSet o) const { return WorldSet(bits_ & ~o.bits_); }
  constexpr WorldSet& operator|=(WorldSet o) { bits_ |= o.bits_; return *this; }
  constexpr WorldSet& operator&=(WorldSet o) { bits_ &= o.bits_; return *this; }
  constexpr WorldSet& operator-=(WorldSet o) { bits_ &= ~o.bits_; return *this; }
  friend constexpr bool operator==(WorldSet, WorldSet) = default;
  friend constexpr auto operator<=>(WorldSet a, WorldSet b) { return a.bits_ <=> b.bits_; }

  class iterator {
  public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = World;
    using difference_type = std::ptrdiff_t;
    using pointer = const World*;
    using reference = World;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t b) : rest_(b) {}
    constexpr World operator*() const { return static_cast<World>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { iterator t = *this; ++*this; return t; }
    constexpr bool operator!=(const iterator& o) const { return rest_ != o.rest_; }
    constexpr bool operator==(const iterator& o) const { return rest_ == o.rest_; }

  private:
    std::uint64_t rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

private:
  std::uint64_t bits_ = 0;
};

inline void check_world_count(std::size_t n) {
  if (n == 0 || n > WorldSet::kMaxWorlds)
    throw std::invalid_argument("structures must have between 1 and 64 worlds");
}

}  // namespace dtl
