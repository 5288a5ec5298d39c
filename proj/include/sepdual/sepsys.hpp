#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sepdual/error.hpp"
#include "sepdual/sep_set.hpp"
#include "sepdual/vertex_set.hpp"

namespace sepdual {

// The two sides (A,B) of a separation of a ground set V, A ∪ B = V.
struct SetSides {
  VertexSet a;
  VertexSet b;

  SetSides inverse() const { return {b, a}; }
  int order() const { return (a & b).size(); }
  friend bool operator==(const SetSides&, const SetSides&) = default;
};

struct SetSidesHash {
  std::size_t operator()(const SetSides& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.a.bits() * 0x9E3779B97F4A7C15ULL ^ s.b.bits());
  }
};

struct OrientedSeparation {
  std::string id;
  SepId inverse = kNoSep;  // kNoSep only in deliberately malformed systems
  std::optional<SetSides> sides;
};

// A finite set of oriented separations with an involution and a partial
// order. Immutable after construction; members are indexed in ascending id
// order, which is the canonical order used for all iteration and tie-breaks.
//
// Abstract systems store the order as an explicit bit matrix. Set systems
// derive it from the sides: (A,B) <= (C,D) iff A ⊆ C and B ⊇ D.
class SeparationSystem {
 public:
  struct PairSpec {
    std::string id;
    std::string inverse_id;
  };
  struct SidesSpec {
    std::string id;
    SetSides sides;
  };
  enum class Closure { none, reflexive, full };

  SeparationSystem() = default;

  // Abstract system from inverse pairs and order generators. With
  // Closure::full the relation is closed under reflexivity, order reversal and
  // transitivity. An inverse id that names no member is kept as a dangling
  // reference, which validate_system reports.
  static SeparationSystem abstract(const std::vector<PairSpec>& members,
                                   const std::vector<std::pair<std::string, std::string>>& le_pairs,
                                   Closure closure = Closure::full) {
    SeparationSystem sys;
    std::vector<std::string> ids;
    for (const auto& p : members) {
      ids.push_back(p.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      throw InvalidInput("duplicate separation id");
    for (const auto& id : ids) {
      sys.by_id_.emplace(id, static_cast<SepId>(sys.members_.size()));
      sys.members_.push_back({id, kNoSep, std::nullopt});
    }
    for (const auto& p : members) {
      auto it = sys.by_id_.find(p.inverse_id);
      sys.members_[sys.by_id_.at(p.id)].inverse = it == sys.by_id_.end() ? kNoSep : it->second;
    }
    const std::size_t n = sys.members_.size();
    sys.row_words_ = (n + 63) / 64;
    sys.le_bits_.assign(n * sys.row_words_, 0);
    for (const auto& [r, s] : le_pairs) sys.set_le(sys.find(r), sys.find(s));
    if (closure != Closure::none)
      for (SepId r = 0; r < n; ++r) sys.set_le(r, r);
    if (closure == Closure::full) sys.close_order();
    return sys;
  }

  // Set system over a named ground set. Inverses that are not listed are
  // added with id "<id>*".
  static SeparationSystem from_sides(std::vector<std::string> ground_names, const std::vector<SidesSpec>& seps) {
    if (ground_names.size() > static_cast<std::size_t>(VertexSet::kMaxElements))
      throw InvalidInput("ground set larger than 64 elements");
    SeparationSystem sys;
    sys.ground_names_ = std::move(ground_names);
    sys.ground_ = VertexSet::full(static_cast<int>(sys.ground_names_.size()));
    std::unordered_map<SetSides, std::string, SetSidesHash> named;
    for (const auto& s : seps) {
      if ((s.sides.a | s.sides.b) != sys.ground_) throw InvalidInput("separation " + s.id + ": A ∪ B != V");
      if (!named.emplace(s.sides, s.id).second) throw InvalidInput("separation " + s.id + " listed twice");
    }
    for (const auto& s : seps) {
      if (s.sides.a == s.sides.b) throw InvalidInput("separation " + s.id + " is its own inverse");
      if (!named.count(s.sides.inverse())) named.emplace(s.sides.inverse(), s.id + "*");
    }
    std::vector<std::pair<std::string, SetSides>> all;
    for (const auto& [sides, id] : named) all.emplace_back(id, sides);
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [id, sides] : all) {
      if (!sys.by_id_.emplace(id, static_cast<SepId>(sys.members_.size())).second)
        throw InvalidInput("duplicate separation id " + id);
      sys.by_sides_.emplace(sides, static_cast<SepId>(sys.members_.size()));
      sys.members_.push_back({id, kNoSep, sides});
    }
    for (auto& m : sys.members_) m.inverse = sys.by_sides_.at(m.sides->inverse());
    return sys;
  }

  std::size_t size() const { return members_.size(); }
  bool is_set_system() const { return !ground_names_.empty(); }

  const OrientedSeparation& member(SepId r) const {
    check(r);
    return members_[r];
  }
  const std::string& id(SepId r) const { return member(r).id; }
  SepId inverse(SepId r) const { return member(r).inverse; }
  const std::optional<SetSides>& sides(SepId r) const { return member(r).sides; }

  SepId find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) throw InvalidInput("unknown separation id '" + std::string(id) + "'");
    return it->second;
  }
  std::optional<SepId> find_sides(const SetSides& s) const {
    auto it = by_sides_.find(s);
    if (it == by_sides_.end()) return std::nullopt;
    return it->second;
  }

  bool le(SepId r, SepId s) const {
    const auto& mr = member(r);
    const auto& ms = member(s);
    if (mr.sides && ms.sides) return mr.sides->a.subset_of(ms.sides->a) && ms.sides->b.subset_of(mr.sides->b);
    return (le_bits_[r * row_words_ + (s >> 6)] >> (s & 63)) & 1U;
  }

  VertexSet ground() const { return ground_; }
  const std::vector<std::string>& ground_names() const { return ground_names_; }

  SepSet empty_set() const { return SepSet(size()); }
  SepSet all() const {
    SepSet s(size());
    for (SepId r = 0; r < size(); ++r) s.insert(r);
    return s;
  }

  // Explicit generator list of an abstract order (every related pair).
  std::vector<std::pair<SepId, SepId>> order_pairs() const {
    std::vector<std::pair<SepId, SepId>> out;
    for (SepId r = 0; r < size(); ++r)
      for (SepId s = 0; s < size(); ++s)
        if (le(r, s)) out.emplace_back(r, s);
    return out;
  }

 private:
  void check(SepId r) const {
    if (r >= members_.size()) throw InvalidInput("separation index out of range");
  }
  void set_le(SepId r, SepId s) { le_bits_[r * row_words_ + (s >> 6)] |= std::uint64_t{1} << (s & 63); }

  void close_order() {
    const std::size_t n = size();
    for (SepId r = 0; r < n; ++r)
      for (SepId s = 0; s < n; ++s)
        if (le(r, s) && members_[r].inverse != kNoSep && members_[s].inverse != kNoSep)
          set_le(members_[s].inverse, members_[r].inverse);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if ((le_bits_[i * row_words_ + (k >> 6)] >> (k & 63)) & 1U)
          for (std::size_t w = 0; w < row_words_; ++w) le_bits_[i * row_words_ + w] |= le_bits_[k * row_words_ + w];
  }

  std::vector<OrientedSeparation> members_;
  std::unordered_map<std::string, SepId> by_id_;
  std::unordered_map<SetSides, SepId, SetSidesHash> by_sides_;
  std::vector<std::uint64_t> le_bits_;
  std::size_t row_words_ = 0;
  VertexSet ground_;
  std::vector<std::string> ground_names_;
};

inline bool le(const SeparationSystem& sys, SepId r, SepId s) { return sys.le(r, s); }

inline bool lt(const SeparationSystem& sys, SepId r, SepId s) { return r != s && sys.le(r, s); }

// Some orientation of r is comparable with some orientation of s.
inline bool is_nested(const SeparationSystem& sys, SepId r, SepId s) {
  const SepId ri = sys.inverse(r);
  const SepId si = sys.inverse(s);
  return sys.le(r, s) || sys.le(s, r) || sys.le(r, si) || sys.le(si, r) || sys.le(ri, s) || sys.le(s, ri) ||
         sys.le(ri, si) || sys.le(si, ri);
}

// r <= r*: the separation points away from everything, e.g. (A,V).
inline bool is_small(const SeparationSystem& sys, SepId r) { return sys.le(r, sys.inverse(r)); }

inline bool is_antisymmetric(const SeparationSystem& sys, const SepSet& p) {
  bool ok = true;
  p.for_each([&](SepId r) {
    if (sys.inverse(r) == r || p.contains(sys.inverse(r))) ok = false;
  });
  return ok;
}

inline void require_antisymmetric(const SeparationSystem& sys, const SepSet& p) {
  if (p.universe() != sys.size()) throw InvalidInput("orientation belongs to a different system");
  if (!is_antisymmetric(sys, p)) throw InvalidInput("partial orientation is not antisymmetric");
}

// Every inverse pair of the system is oriented.
inline bool is_full(const SeparationSystem& sys, const SepSet& p) { return 2 * p.size() == sys.size(); }

// A pair (r, s) of p with r != s* and r* <= s: r and s point away from each
// other (r == s covers co-small singletons such as (V,A)).
inline std::optional<std::pair<SepId, SepId>> find_inconsistency(const SeparationSystem& sys, const SepSet& p) {
  const auto ids = p.ids();
  for (SepId r : ids) {
    const SepId ri = sys.inverse(r);
    for (SepId s : ids)
      if (s != ri && sys.le(ri, s)) return std::make_pair(r, s);
  }
  return std::nullopt;
}

inline bool is_consistent(const SeparationSystem& sys, const SepSet& p) {
  require_antisymmetric(sys, p);
  return !find_inconsistency(sys, p).has_value();
}

// Representatives (lower id) of the inverse pairs that base leaves unoriented.
inline std::vector<SepId> free_pairs(const SeparationSystem& sys, const SepSet& base) {
  std::vector<SepId> out;
  for (SepId r = 0; r < sys.size(); ++r) {
    const SepId ri = sys.inverse(r);
    if (ri != kNoSep && r < ri && !base.contains(r) && !base.contains(ri)) out.push_back(r);
  }
  return out;
}

// Calls fn on every full orientation extending base, in binary counting order
// over the free pairs (bit set = upper id of the pair). Stops when fn returns
// false.
template <typename Fn>
void for_each_orientation(const SeparationSystem& sys, const SepSet& base, Fn&& fn) {
  require_antisymmetric(sys, base);
  const auto free = free_pairs(sys, base);
  if (free.size() >= 63) throw BudgetExceeded("too many free pairs to enumerate");
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    SepSet o = base;
    for (std::size_t j = 0; j < free.size(); ++j)
      o.insert(((mask >> j) & 1U) ? sys.inverse(free[j]) : free[j]);
    if (!fn(o)) return;
  }
}

inline std::vector<SepSet> enumerate_orientations(const SeparationSystem& sys, const SepSet& base) {
  std::vector<SepSet> out;
  for_each_orientation(sys, base, [&](const SepSet& o) {
    out.push_back(o);
    return true;
  });
  return out;
}

struct SystemViolation {
  std::string kind;  // involution | symmetry | reflexivity | transitivity | order-reversal | sides
  std::string detail;
};

inline std::vector<SystemViolation> validate_system(const SeparationSystem& sys) {
  std::vector<SystemViolation> out;
  const std::size_t n = sys.size();
  for (SepId r = 0; r < n; ++r) {
    const SepId ri = sys.inverse(r);
    if (ri == kNoSep) {
      out.push_back({"symmetry", "inverse of " + sys.id(r) + " is not a member"});
      continue;
    }
    if (sys.inverse(ri) != r) out.push_back({"involution", sys.id(r) + "** != " + sys.id(r)});
    if (const auto& sd = sys.sides(r)) {
      if ((sd->a | sd->b) != sys.ground()) out.push_back({"sides", sys.id(r) + ": A ∪ B != V"});
      const auto& si = sys.sides(ri);
      if (!si || !(*si == sd->inverse())) out.push_back({"sides", sys.id(r) + ": inverse sides not swapped"});
    }
    if (!sys.le(r, r)) out.push_back({"reflexivity", sys.id(r) + " !<= itself"});
  }
  for (SepId r = 0; r < n; ++r)
    for (SepId s = 0; s < n; ++s) {
      if (!sys.le(r, s)) continue;
      const SepId ri = sys.inverse(r);
      const SepId si = sys.inverse(s);
      if (ri != kNoSep && si != kNoSep && !sys.le(si, ri))
        out.push_back({"order-reversal", sys.id(r) + " <= " + sys.id(s) + " but not inverse"});
      // set orders are transitive by construction
      if (sys.is_set_system()) continue;
      for (SepId t = 0; t < n; ++t)
        if (sys.le(s, t) && !sys.le(r, t))
          out.push_back({"transitivity", sys.id(r) + " <= " + sys.id(s) + " <= " + sys.id(t)});
    }
  return out;
}

}  // namespace sepdual
