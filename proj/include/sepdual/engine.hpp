#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepdual/error.hpp"
#include "sepdual/families.hpp"
#include "sepdual/sepsys.hpp"
#include "sepdual/sgraph.hpp"

namespace sepdual {

// Exactly one of the two branches is present.
struct DualityVerdict {
  std::optional<SepSet> orientation;
  std::optional<SGraph> witness;

  bool found_orientation() const { return orientation.has_value(); }
};

struct DecideOptions {
  std::size_t max_states = std::size_t{1} << 22;
  bool verify = true;
};

// Inputs the engine refuses: members without a distinct inverse, a
// non-antisymmetric S⁻, and families containing the empty set (which would
// forbid every orientation without any star to show for it).
inline void require_engine_input(const SeparationSystem& sys, const SepSet& s_minus, const ForbiddenFamily& f) {
  for (SepId r = 0; r < sys.size(); ++r) {
    const SepId ri = sys.inverse(r);
    if (ri == kNoSep || ri == r || sys.inverse(ri) != r)
      throw InvalidInput("separation " + sys.id(r) + " has no proper inverse");
  }
  require_antisymmetric(sys, s_minus);
  if (f.is_member(sys.empty_set())) throw InvalidInput("the forbidden family contains the empty set");
}

// First violated condition of a verdict, or nothing when it verifies.
inline std::optional<std::string> verdict_violation(const DualityVerdict& v, const SeparationSystem& sys,
                                                    const SepSet& s_minus, const ForbiddenFamily& f) {
  if (v.orientation.has_value() == v.witness.has_value()) return "verdict must hold exactly one branch";
  if (v.orientation) {
    const SepSet& o = *v.orientation;
    if (o.universe() != sys.size()) return "orientation belongs to a different system";
    if (!is_antisymmetric(sys, o)) return "orientation is not antisymmetric";
    if (!is_full(sys, o)) return "orientation is not full";
    if (!s_minus.subset_of(o)) return "orientation does not extend S-";
    if (auto bad = find_inconsistency(sys, o))
      return "orientation is inconsistent at " + sys.id(bad->first) + ", " + sys.id(bad->second);
    if (f.contains_subset(o)) return "orientation has a subset in F";
    return std::nullopt;
  }
  const SGraph& g = *v.witness;
  if (auto bad = validate_sgraph(g, sys, s_minus, f); !bad.empty()) return bad.front();
  if (!is_cusped(g.h)) return "witness is not cusped";
  if (auto t = verify_trace(g, sys, f); !t)
    return "trace step " + (t.failed_step ? std::to_string(*t.failed_step) : std::string("-")) + ": " + t.reason;
  return std::nullopt;
}

inline bool verify_verdict(const DualityVerdict& v, const SeparationSystem& sys, const SepSet& s_minus,
                           const ForbiddenFamily& f) {
  return !verdict_violation(v, sys, s_minus, f);
}

namespace detail {

// The recursion of the duality proof. A branch that fails returns an S-graph
// over F whose leaf separations lie in the branch's S⁻ (or are justified on
// their own); two failed branches are glued at the branching pair.
class Decider {
 public:
  Decider(const SeparationSystem& sys, const ForbiddenFamily& f, std::size_t max_states)
      : sys_(sys), f_(f), max_states_(max_states) {}

  DualityVerdict run(const SepSet& p) {
    if (++states_ > max_states_) throw BudgetExceeded("decide exceeded its state budget");
    if (auto bad = find_inconsistency(sys_, p)) return {std::nullopt, inconsistency_path(sys_, bad->second, bad->first)};
    // Checked at every node, not only at full orientations: a forbidden
    // subset of S⁻ already refutes every extension.
    if (f_.contains_subset(p)) {
      const auto subs = f_.find_forbidden_subsets(p, 1);
      if (subs.empty()) throw Error("family reported a forbidden subset but listed none");
      return {std::nullopt, from_star_tree(sys_, subs.front().ids())};
    }
    const auto free = free_pairs(sys_, p);
    if (free.empty()) return {p, std::nullopt};
    const SepId xy = free.front();
    const SepId yx = sys_.inverse(xy);

    auto with_yx = run(p.with(yx));
    if (with_yx.orientation || !needs(*with_yx.witness, yx)) return with_yx;
    auto with_xy = run(p.with(xy));
    if (with_xy.orientation || !needs(*with_xy.witness, xy)) return with_xy;
    return {std::nullopt, amalgamate(*with_yx.witness, *with_xy.witness, xy, sys_, &f_)};
  }

  std::size_t states() const { return states_; }

 private:
  // The witness has a leaf whose only justification is the branching choice.
  bool needs(const SGraph& g, SepId sep) const {
    if (leaf_self_justified(sys_, &f_, sep)) return false;
    const auto inc = g.h.incidence();
    for (Vertex v = 0; v < g.h.vertex_count(); ++v)
      if (g.h.part[v] == Part::N && inc[v].size() == 1 && g.to_m[inc[v][0]] == sep) return true;
    return false;
  }

  const SeparationSystem& sys_;
  const ForbiddenFamily& f_;
  std::size_t max_states_;
  std::size_t states_ = 0;
};

}  // namespace detail

// Either a consistent F-avoiding orientation of sys extending s_minus, or a
// constructible cusped S-graph over F rooted in s_minus.
inline DualityVerdict decide(const SeparationSystem& sys, const SepSet& s_minus, const ForbiddenFamily& f,
                             const DecideOptions& opt = {}) {
  require_engine_input(sys, s_minus, f);
  detail::Decider d(sys, f, opt.max_states);
  auto verdict = d.run(s_minus);
  if (opt.verify)
    if (auto bad = verdict_violation(verdict, sys, s_minus, f))
      throw Error("decide produced a verdict that fails verification: " + *bad);
  return verdict;
}

// Every full orientation extending s_minus that avoids F (and, if asked, is
// consistent), by exhaustive enumeration.
inline std::vector<SepSet> brute_force_all(const SeparationSystem& sys, const SepSet& s_minus, const ForbiddenFamily& f,
                                           bool require_consistency = true, std::size_t max_free = 20) {
  require_antisymmetric(sys, s_minus);
  if (free_pairs(sys, s_minus).size() > max_free) throw BudgetExceeded("too many free pairs for brute force");
  std::vector<SepSet> out;
  for_each_orientation(sys, s_minus, [&](const SepSet& o) {
    if ((!require_consistency || !find_inconsistency(sys, o)) && !f.contains_subset(o)) out.push_back(o);
    return true;
  });
  return out;
}

// Canonically first consistent F-avoiding full orientation extending s_minus.
inline std::optional<SepSet> brute_force_decide(const SeparationSystem& sys, const SepSet& s_minus,
                                                const ForbiddenFamily& f, std::size_t max_free = 20) {
  require_antisymmetric(sys, s_minus);
  if (free_pairs(sys, s_minus).size() > max_free) throw BudgetExceeded("too many free pairs for brute force");
  std::optional<SepSet> found;
  for_each_orientation(sys, s_minus, [&](const SepSet& o) {
    if (!find_inconsistency(sys, o) && !f.contains_subset(o)) found = o;
    return !found;
  });
  return found;
}

// Backtracking search for a full F-avoiding orientation extending s_minus;
// consistency is optional (without it this is the weak-duality question).
inline std::optional<SepSet> search_orientation(const SeparationSystem& sys, const SepSet& s_minus,
                                                const ForbiddenFamily& f, bool require_consistency,
                                                std::size_t max_states = std::size_t{1} << 22) {
  require_antisymmetric(sys, s_minus);
  const auto free = free_pairs(sys, s_minus);
  std::size_t states = 0;
  std::function<std::optional<SepSet>(const SepSet&, std::size_t)> go = [&](const SepSet& p, std::size_t i)
      -> std::optional<SepSet> {
    if (++states > max_states) throw BudgetExceeded("orientation search exceeded its state budget");
    if (require_consistency && find_inconsistency(sys, p)) return std::nullopt;
    if (f.contains_subset(p)) return std::nullopt;
    if (i == free.size()) return p;
    if (auto o = go(p.with(sys.inverse(free[i])), i + 1)) return o;
    return go(p.with(free[i]), i + 1);
  };
  return go(s_minus, 0);
}

struct TreeSearchOptions {
  std::size_t max_nodes = 12;
  // false: plain subdivided S-trees, alpha(n',m) = alpha(m,n'') at every hub.
  // true: any S-graph whose H is a tree (hubs may witness inconsistencies).
  bool generalized = true;
  std::size_t max_member_visits = std::size_t{1} << 27;
};

// Smallest S-graph over F rooted in s_minus whose H is a tree, if one with at
// most max_nodes vertices exists. Hubs have degree 2: a hub of larger degree
// in a tree witness can be cut down to two of its branches.
// Sizes are computed by a shortest-derivation fixpoint over separations:
//   node[r] = size of a branch hanging off a node n with alpha(n,m) = r,
//   hub[s]  = size of a branch hanging off a hub m with alpha(m,n) = s.
// Absent is bounded evidence only. Needs a family that can list its members.
inline std::optional<SGraph> tree_witness_search(const SeparationSystem& sys, const SepSet& s_minus,
                                                 const ForbiddenFamily& f, const TreeSearchOptions& opt = {}) {
  require_engine_input(sys, s_minus, f);
  const std::size_t n = sys.size();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> node(n, kInf), hub(n, kInf);
  std::vector<SepId> hub_choice(n, kNoSep);
  std::vector<std::optional<std::vector<SepId>>> node_children(n);  // nullopt: leaf

  for (SepId r = 0; r < n; ++r)
    if (leaf_justified(sys, s_minus, f, r)) node[r] = 1;

  std::size_t visits = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (SepId s = 0; s < n; ++s)
      for (SepId a = 0; a < n; ++a)
        if (node[a] != kInf && node[a] + 1 < hub[s] && node[a] + 1 <= opt.max_nodes &&
            (opt.generalized ? sys.le(s, a) : s == a)) {
          hub[s] = node[a] + 1;
          hub_choice[s] = a;
          changed = true;
        }
    const bool listed = f.for_each_member([&](const std::vector<SepId>& x) {
      if (++visits > opt.max_member_visits) throw BudgetExceeded("tree search exceeded its member budget");
      if (x.size() < 2) return;
      std::size_t inf_count = 0, sum = 1;
      SepId missing = kNoSep;
      for (SepId y : x) {
        if (hub[y] == kInf) {
          ++inf_count;
          missing = y;
        } else {
          sum += hub[y];
        }
      }
      if (inf_count > 1) return;
      auto offer = [&](SepId parent, std::size_t cost) {
        const SepId r = sys.inverse(parent);
        if (cost > opt.max_nodes || cost >= node[r]) return;
        node[r] = cost;
        std::vector<SepId> kids;
        for (SepId y : x)
          if (y != parent) kids.push_back(y);
        node_children[r] = std::move(kids);
        changed = true;
      };
      if (inf_count == 1)
        offer(missing, sum);
      else
        for (SepId y : x) offer(y, sum - hub[y]);
    });
    if (!listed) throw PreconditionError("tree_witness_search needs a family that can list its members");
  }

  std::size_t best = kInf;
  SepId best_a = kNoSep, best_b = kNoSep;
  for (SepId a = 0; a < n; ++a)
    for (SepId b = 0; b < n; ++b)
      if (node[a] != kInf && node[b] != kInf && 1 + node[a] + node[b] < best &&
          (opt.generalized ? sys.le(sys.inverse(b), a) : sys.inverse(b) == a)) {
        best = 1 + node[a] + node[b];
        best_a = a;
        best_b = b;
      }
  if (best > opt.max_nodes) return std::nullopt;

  SGraph g;
  auto link = [&](Vertex nv, Vertex mv, std::uint8_t cls, SepId toward_hub) {
    g.h.add_edge(nv, mv, cls);
    g.to_m.push_back(toward_hub);
    g.to_n.push_back(sys.inverse(toward_hub));
  };
  std::function<void(SepId, Vertex, std::uint8_t)> grow = [&](SepId r, Vertex parent_hub, std::uint8_t cls) {
    const Vertex nv = g.h.add_vertex(Part::N);
    link(nv, parent_hub, cls, r);
    if (!node_children[r] || node[r] == 1) return;
    for (SepId y : *node_children[r]) {
      const Vertex mv = g.h.add_vertex(Part::M);
      link(nv, mv, 0, sys.inverse(y));
      grow(hub_choice[y], mv, 1);
    }
  };
  const Vertex root = g.h.add_vertex(Part::M);
  grow(best_a, root, 0);
  grow(best_b, root, 1);
  return g;
}

}  // namespace sepdual
