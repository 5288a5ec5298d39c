#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepdual/error.hpp"
#include "sepdual/sepsys.hpp"

namespace sepdual {

// Behaviour behind a ForbiddenFamily. Explicit families list their members;
// predicate families (blocks, profiles, uncrossing) decide membership locally
// and can only produce bounded witness lists.
class FamilyImpl {
 public:
  virtual ~FamilyImpl() = default;

  virtual bool is_member(const SepSet& s) const = 0;
  virtual bool contains_subset(const SepSet& o) const = 0;
  // Subsets of o that are members; at most `limit` of them.
  virtual std::vector<SepSet> find_forbidden_subsets(const SepSet& o, std::size_t limit) const = 0;
  // The full member list, when the family is small enough to enumerate.
  virtual std::optional<std::vector<SepSet>> members() const { return std::nullopt; }
  // Streams every member as a sorted id list; false when the family cannot
  // be listed.
  virtual bool for_each_member(const std::function<void(const std::vector<SepId>&)>& fn) const {
    const auto all = members();
    if (!all) return false;
    for (const auto& s : *all) fn(s.ids());
    return true;
  }
  virtual std::string kind() const = 0;
};

// A set F of sets of separations, immutable and cheap to copy.
class ForbiddenFamily {
 public:
  ForbiddenFamily() : ForbiddenFamily(std::vector<SepSet>{}) {}
  explicit ForbiddenFamily(std::shared_ptr<const FamilyImpl> impl) : impl_(std::move(impl)) {}
  explicit ForbiddenFamily(std::vector<SepSet> sets);

  bool is_member(const SepSet& s) const { return impl_->is_member(s); }
  bool contains_subset(const SepSet& o) const { return impl_->contains_subset(o); }
  std::vector<SepSet> find_forbidden_subsets(const SepSet& o, std::size_t limit) const {
    return impl_->find_forbidden_subsets(o, limit);
  }
  std::optional<std::vector<SepSet>> members() const { return impl_->members(); }
  bool for_each_member(const std::function<void(const std::vector<SepId>&)>& fn) const {
    return impl_->for_each_member(fn);
  }
  std::string kind() const { return impl_->kind(); }
  bool is_explicit() const { return kind() == "explicit"; }

  // Members of an explicit family; throws for predicate families.
  std::vector<SepSet> sets() const {
    if (!is_explicit()) throw InvalidInput("family '" + kind() + "' is not explicit");
    return *members();
  }

 private:
  std::shared_ptr<const FamilyImpl> impl_;
};

class ExplicitFamily final : public FamilyImpl {
 public:
  explicit ExplicitFamily(std::vector<SepSet> sets) : sets_(std::move(sets)) {
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
  }

  bool is_member(const SepSet& s) const override {
    return std::any_of(sets_.begin(), sets_.end(), [&](const SepSet& m) { return m == s; });
  }
  bool contains_subset(const SepSet& o) const override {
    return std::any_of(sets_.begin(), sets_.end(), [&](const SepSet& m) { return m.subset_of(o); });
  }
  std::vector<SepSet> find_forbidden_subsets(const SepSet& o, std::size_t limit) const override {
    std::vector<SepSet> out;
    for (const auto& m : sets_) {
      if (out.size() >= limit) break;
      if (m.subset_of(o)) out.push_back(m);
    }
    return out;
  }
  std::optional<std::vector<SepSet>> members() const override { return sets_; }
  std::string kind() const override { return "explicit"; }

 private:
  std::vector<SepSet> sets_;
};

inline ForbiddenFamily::ForbiddenFamily(std::vector<SepSet> sets)
    : impl_(std::make_shared<ExplicitFamily>(std::move(sets))) {}

inline ForbiddenFamily explicit_family(std::vector<SepSet> sets) { return ForbiddenFamily(std::move(sets)); }

// ---------------------------------------------------------------------------

inline void require_members(const SeparationSystem& sys, const SepSet& s) {
  if (s.universe() != sys.size()) throw InvalidInput("separation set belongs to a different system");
}

// Antisymmetric and free of pairs pointing away from each other. Sets that
// hold both r and r* are never subsets of an orientation and count as
// inconsistent here.
inline bool is_consistent_set(const SeparationSystem& sys, const SepSet& s) {
  return is_antisymmetric(sys, s) && !find_inconsistency(sys, s);
}

// A consistent ≤-antichain.
inline bool is_weak_star(const SeparationSystem& sys, const SepSet& s) {
  require_members(sys, s);
  if (!is_consistent_set(sys, s)) return false;
  const auto ids = s.ids();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < ids.size(); ++j)
      if (i != j && sys.le(ids[i], ids[j])) return false;
  return true;
}

// S⁺: the elements of s with no strictly larger element in s.
inline SepSet maximal_elements(const SeparationSystem& sys, const SepSet& s) {
  require_members(sys, s);
  SepSet out(sys.size());
  const auto ids = s.ids();
  for (SepId r : ids) {
    bool maximal = true;
    for (SepId t : ids)
      if (t != r && sys.le(r, t) && !sys.le(t, r)) {
        maximal = false;
        break;
      }
    if (maximal) out.insert(r);
  }
  return out;
}

// F* = { S⁺ : S ∈ F, S consistent }.
inline ForbiddenFamily star_reduce(const SeparationSystem& sys, const ForbiddenFamily& f) {
  std::vector<SepSet> out;
  for (const auto& s : f.sets())
    if (is_consistent_set(sys, s)) out.push_back(maximal_elements(sys, s));
  return explicit_family(std::move(out));
}

// S ≤ S': every element of S lies below some element of S'.
inline bool le_sets(const SeparationSystem& sys, const SepSet& s, const SepSet& t) {
  require_members(sys, s);
  require_members(sys, t);
  const auto tids = t.ids();
  bool ok = true;
  s.for_each([&](SepId r) {
    if (ok && std::none_of(tids.begin(), tids.end(), [&](SepId u) { return sys.le(r, u); })) ok = false;
  });
  return ok;
}

// F⁻: the ≤-minimal members of a family of weak stars.
inline ForbiddenFamily minimal_weak_stars(const SeparationSystem& sys, const ForbiddenFamily& fstar) {
  const auto sets = fstar.sets();
  for (const auto& s : sets)
    if (!is_weak_star(sys, s)) throw InvalidInput("minimal_weak_stars: member is not a weak star");
  std::vector<SepSet> out;
  for (const auto& s : sets) {
    const bool dominated = std::any_of(sets.begin(), sets.end(), [&](const SepSet& t) {
      return !(t == s) && le_sets(sys, t, s) && !le_sets(sys, s, t);
    });
    if (!dominated) out.push_back(s);
  }
  return explicit_family(std::move(out));
}

// No subset of o is a member of f.
inline bool avoids(const SeparationSystem& sys, const SepSet& o, const ForbiddenFamily& f) {
  require_antisymmetric(sys, o);
  return !f.contains_subset(o);
}

struct StarsEquivalence {
  bool avoids_f = false;
  bool avoids_star = false;
  bool avoids_minimal = false;

  bool agree() const { return avoids_f == avoids_star && avoids_star == avoids_minimal; }
};

// Evaluates o against F, F* and F⁻. For a consistent full orientation the
// three answers coincide; report.agree() is the checkable claim.
inline StarsEquivalence lemma_stars_equivalence(const SeparationSystem& sys, const SepSet& o,
                                                const ForbiddenFamily& f) {
  require_antisymmetric(sys, o);
  if (!is_full(sys, o)) throw PreconditionError("lemma_stars_equivalence: orientation is not full");
  if (find_inconsistency(sys, o)) throw PreconditionError("lemma_stars_equivalence: orientation is inconsistent");
  const auto fstar = star_reduce(sys, f);
  const auto fminus = minimal_weak_stars(sys, fstar);
  return {avoids(sys, o, f), avoids(sys, o, fstar), avoids(sys, o, fminus)};
}

}  // namespace sepdual
