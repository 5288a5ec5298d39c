#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace sepdual {

// Subset of a ground set of at most 64 elements, stored as a bit mask.
class VertexSet {
 public:
  static constexpr int kMaxElements = 64;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr VertexSet full(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static constexpr VertexSet single(int v) { return VertexSet(std::uint64_t{1} << v); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr void insert(int v) { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  // set difference
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSet, VertexSet) = default;
  friend constexpr auto operator<=>(VertexSet, VertexSet) = default;

  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) fn(std::countr_zero(b));
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace sepdual

template <>
struct std::hash<sepdual::VertexSet> {
  std::size_t operator()(sepdual::VertexSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
