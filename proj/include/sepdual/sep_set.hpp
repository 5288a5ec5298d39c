#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace sepdual {

// Index of an oriented separation inside its SeparationSystem. Members are
// numbered in canonical (id string) order, so comparing SepIds compares ids.
using SepId = std::uint32_t;
inline constexpr SepId kNoSep = static_cast<SepId>(-1);

// A set of members of one separation system, as a bitset over SepIds.
class SepSet {
 public:
  SepSet() = default;
  explicit SepSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  SepSet(std::size_t universe, std::initializer_list<SepId> ids) : SepSet(universe) {
    for (SepId id : ids) insert(id);
  }
  template <typename Range>
  static SepSet of(std::size_t universe, const Range& ids) {
    SepSet s(universe);
    for (SepId id : ids) s.insert(id);
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(SepId id) const { return id < universe_ && ((words_[id >> 6] >> (id & 63)) & 1U); }
  void insert(SepId id) { words_[id >> 6] |= std::uint64_t{1} << (id & 63); }
  void erase(SepId id) { words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63)); }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool subset_of(const SepSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.word(i)) != 0) return false;
    return true;
  }

  SepSet& operator|=(const SepSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.word(i);
    return *this;
  }
  SepSet& operator&=(const SepSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.word(i);
    return *this;
  }
  SepSet with(SepId id) const {
    SepSet s = *this;
    s.insert(id);
    return s;
  }

  // Members in ascending SepId order.
  std::vector<SepId> ids() const {
    std::vector<SepId> out;
    for_each([&](SepId id) { out.push_back(id); });
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      for (std::uint64_t b = words_[i]; b != 0; b &= b - 1)
        fn(static_cast<SepId>(i * 64 + static_cast<std::size_t>(std::countr_zero(b))));
  }

  friend bool operator==(const SepSet& a, const SepSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  // Lexicographic on the sorted id lists; gives families a canonical order.
  friend bool operator<(const SepSet& a, const SepSet& b) { return a.ids() < b.ids(); }

  std::size_t hash() const {
    std::size_t h = universe_;
    for (auto w : words_) h = h * 1099511628211ULL ^ std::hash<std::uint64_t>{}(w);
    return h;
  }

 private:
  std::uint64_t word(std::size_t i) const { return i < words_.size() ? words_[i] : 0; }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// A partial orientation is a SepSet that never holds a separation together
// with its inverse; operations that need antisymmetry check it explicitly.
using PartialOrientation = SepSet;

}  // namespace sepdual

template <>
struct std::hash<sepdual::SepSet> {
  std::size_t operator()(const sepdual::SepSet& s) const noexcept { return s.hash(); }
};
