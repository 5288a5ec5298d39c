#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sepdual/error.hpp"
#include "sepdual/families.hpp"
#include "sepdual/sepsys.hpp"
#include "sepdual/vertex_set.hpp"

namespace sepdual {

// Simple undirected graph on at most 64 named vertices.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::vector<std::string> names) : names_(std::move(names)), adj_(names_.size()) {
    if (names_.size() > static_cast<std::size_t>(VertexSet::kMaxElements))
      throw InvalidInput("graphs are limited to 64 vertices");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_)
      if (!seen.insert(n).second) throw InvalidInput("duplicate vertex name '" + n + "'");
  }
  explicit SimpleGraph(int n) : SimpleGraph(numbered(n)) {}

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw InvalidInput("edge endpoint out of range");
    if (u == v) throw InvalidInput("loop at vertex " + names_[u]);
    if (adj_[u].contains(v)) throw InvalidInput("parallel edge " + names_[u] + "-" + names_[v]);
    adj_[u].insert(v);
    adj_[v].insert(u);
  }
  void add_edge(const std::string& u, const std::string& v) { add_edge(index(u), index(v)); }

  int size() const { return static_cast<int>(names_.size()); }
  VertexSet vertices() const { return VertexSet::full(size()); }
  VertexSet neighbours(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const { return adj_[u].contains(v); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int v) const { return names_[v]; }
  int index(const std::string& name) const {
    for (int v = 0; v < size(); ++v)
      if (names_[v] == name) return v;
    throw InvalidInput("unknown vertex '" + name + "'");
  }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < size(); ++u)
      adj_[u].for_each([&](int v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  // Connected components of G - removed.
  std::vector<VertexSet> components(VertexSet removed) const {
    std::vector<VertexSet> out;
    VertexSet left = vertices() - removed;
    while (!left.empty()) {
      VertexSet comp = VertexSet::single(left.elements().front());
      VertexSet frontier = comp;
      while (!frontier.empty()) {
        VertexSet next;
        frontier.for_each([&](int v) { next = next | adj_[v]; });
        next = (next & left) - comp;
        comp = comp | next;
        frontier = next;
      }
      out.push_back(comp);
      left = left - comp;
    }
    return out;
  }

  // No edge joins A∖B to B∖A and A ∪ B = V.
  bool is_separation(const SetSides& s) const {
    if ((s.a | s.b) != vertices()) return false;
    const VertexSet a_only = s.a - s.b;
    const VertexSet b_only = s.b - s.a;
    bool ok = true;
    a_only.for_each([&](int v) { ok = ok && (adj_[v] & b_only).empty(); });
    return ok;
  }

  std::string format(VertexSet s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int v) {
      if (!first) out += ",";
      out += names_[v];
      first = false;
    });
    return out + "}";
  }

  static SimpleGraph path(int n) {
    SimpleGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }
  static SimpleGraph cycle(int n) {
    SimpleGraph g = path(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
  }
  static SimpleGraph complete(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  static std::vector<std::string> numbered(int n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }

  std::vector<std::string> names_;
  std::vector<VertexSet> adj_;
};

// The separations of order < k of a graph, as a set separation system.
struct SkSystem {
  SimpleGraph graph;
  int k = 0;
  SeparationSystem sys;

  const SetSides& sides(SepId r) const { return *sys.sides(r); }
  std::optional<SepId> find(const SetSides& s) const { return sys.find_sides(s); }
  bool is_proper(SepId r) const {
    const auto& s = sides(r);
    return s.a != graph.vertices() && s.b != graph.vertices();
  }
};
using SkHandle = std::shared_ptr<const SkSystem>;

inline std::string separation_id(const SimpleGraph& g, const SetSides& s) {
  return g.format(s.a) + "|" + g.format(s.b);
}

// Every (A,B) with |A ∩ B| < k, via separators X and 2-partitions of the
// components of G - X. The self-inverse (V,V) (only present when |V| < k) is
// left out.
inline SkHandle enumerate_Sk(const SimpleGraph& g, int k, std::size_t max_components = 24) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  const int n = g.size();
  std::unordered_set<SetSides, SetSidesHash> found;
  std::vector<SeparationSystem::SidesSpec> specs;
  auto add = [&](const SetSides& s) {
    if (s.a == s.b) return;
    if (found.insert(s).second) specs.push_back({separation_id(g, s), s});
  };
  auto visit = [&](VertexSet x) {
    const auto comps = g.components(x);
    if (comps.size() > max_components) throw BudgetExceeded("too many components to split");
    const std::uint64_t count = std::uint64_t{1} << comps.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      SetSides s{x, x};
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if ((mask >> i) & 1U)
          s.b = s.b | comps[i];
        else
          s.a = s.a | comps[i];
      }
      add(s);
    }
  };
  auto rec = [&](auto&& self, int start, VertexSet x) -> void {
    visit(x);
    if (x.size() + 1 >= k) return;
    for (int v = start; v < n; ++v) self(self, v + 1, x | VertexSet::single(v));
  };
  rec(rec, 0, VertexSet{});
  auto out = std::make_shared<SkSystem>();
  out->graph = g;
  out->k = k;
  out->sys = SeparationSystem::from_sides(g.names(), specs);
  return out;
}

// S_k⁻ = { (A,V) : |A| < k }.
inline SepSet sk_minus(const SkSystem& sk) {
  SepSet out(sk.sys.size());
  const VertexSet v = sk.graph.vertices();
  for (SepId r = 0; r < sk.sys.size(); ++r)
    if (sk.sides(r).b == v && sk.sides(r).a.size() < sk.k) out.insert(r);
  return out;
}

// (A ∪ C, B ∩ D) if it has order < k.
inline std::optional<SetSides> corner(const SimpleGraph& g, const SetSides& r, const SetSides& s, int k) {
  const VertexSet v = g.vertices();
  if ((r.a | r.b) != v || (s.a | s.b) != v) throw InvalidInput("corner: sides are not over the graph's vertex set");
  SetSides c{r.a | s.a, r.b & s.b};
  if (c.order() >= k) return std::nullopt;
  return c;
}

// Some orientation of one is <= some orientation of the other.
inline bool sides_nested(const SetSides& r, const SetSides& s) {
  auto le = [](const SetSides& x, const SetSides& y) { return x.a.subset_of(y.a) && y.b.subset_of(x.b); };
  const SetSides ri = r.inverse(), si = s.inverse();
  return le(r, s) || le(r, si) || le(ri, s) || le(ri, si) || le(s, r) || le(si, r) || le(s, ri) || le(si, ri);
}

// ---------------------------------------------------------------------------
// Families over S_k

namespace detail {

inline VertexSet intersect_b(const SkSystem& sk, const SepSet& s) {
  VertexSet out = sk.graph.vertices();
  s.for_each([&](SepId r) { out = out & sk.sides(r).b; });
  return out;
}

// B_k: sets whose B-sides meet in fewer than k vertices (closed upwards).
class BkFamily final : public FamilyImpl {
 public:
  explicit BkFamily(SkHandle sk) : sk_(std::move(sk)) {}
  bool is_member(const SepSet& s) const override { return intersect_b(*sk_, s).size() < sk_->k; }
  bool contains_subset(const SepSet& o) const override { return is_member(o); }
  // Greedy: repeatedly take the member that shrinks the intersection most,
  // then drop members that are not needed.
  std::vector<SepSet> find_forbidden_subsets(const SepSet& o, std::size_t limit) const override {
    if (limit == 0 || !is_member(o)) return {};
    const auto ids = o.ids();
    std::vector<SepId> chosen;
    VertexSet cur = sk_->graph.vertices();
    while (cur.size() >= sk_->k) {
      SepId best = ids.front();
      int best_size = cur.size() + 1;
      for (SepId r : ids) {
        const int sz = (cur & sk_->sides(r).b).size();
        if (sz < best_size) {
          best_size = sz;
          best = r;
        }
      }
      chosen.push_back(best);
      cur = cur & sk_->sides(best).b;
    }
    for (std::size_t i = 0; i < chosen.size();) {
      VertexSet without = sk_->graph.vertices();
      for (std::size_t j = 0; j < chosen.size(); ++j)
        if (j != i) without = without & sk_->sides(chosen[j]).b;
      if (chosen.size() > 1 && without.size() < sk_->k)
        chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
      else
        ++i;
    }
    return {SepSet::of(sk_->sys.size(), chosen)};
  }
  std::string kind() const override { return "blocks"; }

 private:
  SkHandle sk_;
};

// P_k: {r, s, corner} with corner = (B∩D, A∪C) ∈ S_k, as a set.
class PkFamily final : public FamilyImpl {
 public:
  explicit PkFamily(SkHandle sk) : sk_(std::move(sk)) {}

  std::optional<SepId> pk_corner(SepId r, SepId s) const {
    const auto& a = sk_->sides(r);
    const auto& c = sk_->sides(s);
    return sk_->find({a.b & c.b, a.a | c.a});
  }

  bool is_member(const SepSet& s) const override {
    if (s.universe() != sk_->sys.size() || s.empty() || s.size() > 3) return false;
    const auto ids = s.ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i; j < ids.size(); ++j)
        if (auto c = pk_corner(ids[i], ids[j]); c && SepSet(s.universe(), {ids[i], ids[j], *c}) == s) return true;
    return false;
  }
  bool contains_subset(const SepSet& o) const override { return !find_forbidden_subsets(o, 1).empty(); }
  std::vector<SepSet> find_forbidden_subsets(const SepSet& o, std::size_t limit) const override {
    std::vector<SepSet> out;
    const auto ids = o.ids();
    for (std::size_t i = 0; i < ids.size() && out.size() < limit; ++i)
      for (std::size_t j = i; j < ids.size() && out.size() < limit; ++j)
        if (auto c = pk_corner(ids[i], ids[j]); c && o.contains(*c))
          out.push_back(SepSet(o.universe(), {ids[i], ids[j], *c}));
    return out;
  }
  bool for_each_member(const std::function<void(const std::vector<SepId>&)>& fn) const override {
    const auto n = static_cast<SepId>(sk_->sys.size());
    for (SepId r = 0; r < n; ++r)
      for (SepId s = r; s < n; ++s)
        if (auto c = pk_corner(r, s)) {
          std::vector<SepId> m{r, s, *c};
          std::sort(m.begin(), m.end());
          m.erase(std::unique(m.begin(), m.end()), m.end());
          fn(m);
        }
    return true;
  }
  std::string kind() const override { return "profiles"; }

 private:
  SkHandle sk_;
};

// Uncrossed (P)-violations: {(A,B),(C,D),(E,F)} such that some (A',B') ∈ S_k
// has (A,B) = (A'∩D, B'∪C) and (E,F) = (B'∩D, A'∪C).
class UncrossFamily final : public FamilyImpl {
 public:
  explicit UncrossFamily(SkHandle sk) : sk_(std::move(sk)) {}

  // For a given (C,D) and (A',B'): the pair ((A,B), (E,F)) if both are in S_k.
  std::optional<std::pair<SepId, SepId>> roles(SepId cd, SepId apbp) const {
    const auto& c = sk_->sides(cd);
    const auto& p = sk_->sides(apbp);
    auto ab = sk_->find({p.a & c.b, p.b | c.a});
    if (!ab) return std::nullopt;
    auto ef = sk_->find({p.b & c.b, p.a | c.a});
    if (!ef) return std::nullopt;
    return std::make_pair(*ab, *ef);
  }

  bool is_member(const SepSet& s) const override {
    if (s.universe() != sk_->sys.size() || s.empty() || s.size() > 3) return false;
    const auto ids = s.ids();
    for (SepId cd : ids)
      for (SepId p = 0; p < sk_->sys.size(); ++p)
        if (auto r = roles(cd, p); r && SepSet(s.universe(), {r->first, cd, r->second}) == s) return true;
    return false;
  }
  bool contains_subset(const SepSet& o) const override { return !find_forbidden_subsets(o, 1).empty(); }
  std::vector<SepSet> find_forbidden_subsets(const SepSet& o, std::size_t limit) const override {
    std::vector<SepSet> out;
    const auto ids = o.ids();
    for (SepId cd : ids)
      for (SepId p = 0; p < sk_->sys.size() && out.size() < limit; ++p)
        if (auto r = roles(cd, p); r && o.contains(r->first) && o.contains(r->second))
          out.push_back(SepSet(o.universe(), {r->first, cd, r->second}));
    return out;
  }
  bool for_each_member(const std::function<void(const std::vector<SepId>&)>& fn) const override {
    const auto n = static_cast<SepId>(sk_->sys.size());
    for (SepId cd = 0; cd < n; ++cd)
      for (SepId p = 0; p < n; ++p)
        if (auto r = roles(cd, p)) {
          std::vector<SepId> m{r->first, cd, r->second};
          std::sort(m.begin(), m.end());
          m.erase(std::unique(m.begin(), m.end()), m.end());
          fn(m);
        }
    return true;
  }
  std::string kind() const override { return "uncross"; }

 private:
  SkHandle sk_;
};

}  // namespace detail

inline ForbiddenFamily bk_family(SkHandle sk) { return ForbiddenFamily(std::make_shared<detail::BkFamily>(std::move(sk))); }
inline ForbiddenFamily pk_family(SkHandle sk) { return ForbiddenFamily(std::make_shared<detail::PkFamily>(std::move(sk))); }
inline ForbiddenFamily uncross_family(SkHandle sk) {
  return ForbiddenFamily(std::make_shared<detail::UncrossFamily>(std::move(sk)));
}

// Triples (r, s, corner) ⊆ O with corner = (B∩D, A∪C), r <= s by id.
inline std::vector<std::array<SepId, 3>> pk_violations(const SkSystem& sk, const SepSet& o) {
  require_antisymmetric(sk.sys, o);
  std::vector<std::array<SepId, 3>> out;
  const auto ids = o.ids();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i; j < ids.size(); ++j) {
      const auto& a = sk.sides(ids[i]);
      const auto& c = sk.sides(ids[j]);
      if (auto e = sk.find({a.b & c.b, a.a | c.a}); e && o.contains(*e)) out.push_back({ids[i], ids[j], *e});
    }
  return out;
}

struct UncrossResult {
  std::array<SetSides, 3> first;   // ((A∩D, B∪C), (C,D), (E,F))
  std::array<SetSides, 3> second;  // ((A,B), (C∩B, A∪D), (E,F))
  bool first_in_sk = false;        // (A∩D, B∪C) has order < k
  bool second_in_sk = false;       // (C∩B, A∪D) has order < k
};

inline UncrossResult uncross(const SimpleGraph& g, const std::array<SetSides, 3>& t, int k) {
  const auto& [ab, cd, ef] = t;
  for (const auto& s : t)
    if (!g.is_separation(s) || s.order() >= k) throw PreconditionError("uncross: triple is not in S_k");
  if (!(ef == SetSides{ab.b & cd.b, ab.a | cd.a})) throw PreconditionError("uncross: third member is not the corner");
  if (sides_nested(ab, cd)) throw PreconditionError("uncross: first two separations do not cross");
  UncrossResult out;
  const SetSides x{ab.a & cd.b, ab.b | cd.a};
  const SetSides y{cd.a & ab.b, ab.a | cd.b};
  out.first = {x, cd, ef};
  out.second = {ab, y, ef};
  out.first_in_sk = x.order() < k;
  out.second_in_sk = y.order() < k;
  return out;
}

// ---------------------------------------------------------------------------
// Blocks

namespace detail {

// Number of internally vertex-disjoint x-y paths, capped at `cap`.
inline int vertex_connectivity(const SimpleGraph& g, int x, int y, int cap) {
  const int n = g.size();
  // node v_in = 2v, v_out = 2v+1
  const int nodes = 2 * n;
  std::vector<std::vector<int>> cap_m(nodes, std::vector<int>(nodes, 0));
  const int big = n + 1;
  for (int v = 0; v < n; ++v) cap_m[2 * v][2 * v + 1] = (v == x || v == y) ? big : 1;
  for (auto [u, v] : g.edges()) {
    cap_m[2 * u + 1][2 * v] = big;
    cap_m[2 * v + 1][2 * u] = big;
  }
  const int s = 2 * x + 1, t = 2 * y;
  int flow = 0;
  while (flow < cap) {
    std::vector<int> prev(nodes, -1);
    prev[s] = s;
    std::vector<int> queue{s};
    for (std::size_t qi = 0; qi < queue.size() && prev[t] < 0; ++qi) {
      const int u = queue[qi];
      for (int w = 0; w < nodes; ++w)
        if (prev[w] < 0 && cap_m[u][w] > 0) {
          prev[w] = u;
          queue.push_back(w);
        }
    }
    if (prev[t] < 0) break;
    for (int w = t; w != s; w = prev[w]) {
      cap_m[prev[w]][w] -= 1;
      cap_m[w][prev[w]] += 1;
    }
    ++flow;
  }
  return flow;
}

inline void bron_kerbosch(const std::vector<VertexSet>& rel, VertexSet r, VertexSet p, VertexSet x,
                          std::vector<VertexSet>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  int pivot = (p | x).elements().front();
  int best = -1;
  (p | x).for_each([&](int u) {
    const int c = (p & rel[u]).size();
    if (c > best) {
      best = c;
      pivot = u;
    }
  });
  (p - rel[pivot]).for_each([&](int v) {
    bron_kerbosch(rel, r | VertexSet::single(v), p & rel[v], x & rel[v], out);
    p.erase(v);
    x.insert(v);
  });
}

}  // namespace detail

// x and x' are k-inseparable if equal, adjacent, or joined by at least k
// internally disjoint paths.
inline std::vector<VertexSet> inseparability(const SimpleGraph& g, int k) {
  std::vector<VertexSet> rel(g.size());
  for (int x = 0; x < g.size(); ++x) {
    rel[x].insert(x);
    for (int y = x + 1; y < g.size(); ++y)
      if (g.adjacent(x, y) || detail::vertex_connectivity(g, x, y, k) >= k) {
        rel[x].insert(y);
        rel[y].insert(x);
      }
  }
  return rel;
}

// The k-blocks: maximal k-inseparable sets of at least k vertices, sorted.
inline std::vector<VertexSet> blocks(const SimpleGraph& g, int k) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  auto rel = inseparability(g, k);
  std::vector<VertexSet> no_loops(rel.size());
  for (int v = 0; v < g.size(); ++v) no_loops[v] = rel[v] - VertexSet::single(v);
  std::vector<VertexSet> cliques;
  detail::bron_kerbosch(no_loops, VertexSet{}, g.vertices(), VertexSet{}, cliques);
  std::vector<VertexSet> out;
  for (auto c : cliques)
    if (c.size() >= k) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

inline int block_number(const SimpleGraph& g) {
  if (g.size() == 0) throw InvalidInput("block number of the empty graph");
  for (int k = g.size(); k >= 1; --k)
    if (!blocks(g, k).empty()) return k;
  return 0;
}

// O_k(b) = { (A,B) ∈ S_k : b ⊆ B }.
inline SepSet orientation_of_block(const SkSystem& sk, VertexSet b) {
  const auto bl = blocks(sk.graph, sk.k);
  if (std::find(bl.begin(), bl.end(), b) == bl.end()) throw PreconditionError("not a k-block of the graph");
  SepSet out(sk.sys.size());
  for (SepId r = 0; r < sk.sys.size(); ++r)
    if (b.subset_of(sk.sides(r).b)) out.insert(r);
  return out;
}

// b_k(O) = ⋂ { B : (A,B) ∈ O } for a full B_k-avoiding orientation.
inline VertexSet block_of_orientation(const SkSystem& sk, const SepSet& o) {
  require_antisymmetric(sk.sys, o);
  if (!is_full(sk.sys, o)) throw PreconditionError("orientation is not full");
  const VertexSet b = detail::intersect_b(sk, o);
  if (b.size() < sk.k) throw PreconditionError("orientation does not avoid B_k");
  return b;
}

// ---------------------------------------------------------------------------
// Orientation search with propagation

struct OrientationSearchOptions {
  bool profile = false;  // enforce (P) by corner forcing (set systems only)
  const ForbiddenFamily* avoid = nullptr;
  std::size_t max_states = std::size_t{1} << 24;
};

// Backtracking over the free pairs of a system in ascending id order; every
// assignment propagates consistency (r chosen forces s* for every s with
// r* <= s) and, for profiles, corners of chosen pairs.
class OrientationSearch {
 public:
  OrientationSearch(const SeparationSystem& sys, OrientationSearchOptions opt) : sys_(sys), opt_(opt) {
    if (opt_.profile && !sys.is_set_system()) throw InvalidInput("profile search needs a set system");
  }

  // Calls fn on each solution until it returns false.
  template <typename Fn>
  void run(const SepSet& base, Fn&& fn) {
    require_antisymmetric(sys_, base);
    value_.assign(sys_.size(), 0);
    chosen_.clear();
    states_ = 0;
    bool ok = true;
    base.for_each([&](SepId r) { ok = ok && assign(r); });
    if (!ok) return;
    pairs_ = free_pairs(sys_, base);
    stop_ = false;
    search(0, fn);
  }

  std::optional<SepSet> first(const SepSet& base) {
    std::optional<SepSet> out;
    run(base, [&](const SepSet& o) {
      out = o;
      return false;
    });
    return out;
  }

  std::vector<SepSet> all(const SepSet& base, std::size_t limit = std::size_t{1} << 20) {
    std::vector<SepSet> out;
    run(base, [&](const SepSet& o) {
      if (out.size() >= limit) throw BudgetExceeded("too many orientations to list");
      out.push_back(o);
      return true;
    });
    return out;
  }

 private:
  // value_: 1 chosen, -1 inverse chosen, 0 open
  bool assign(SepId r) {
    std::vector<SepId> queue{r};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const SepId t = queue[qi];
      if (value_[t] == 1) continue;
      if (value_[t] == -1) return false;
      const SepId ti = sys_.inverse(t);
      if (sys_.le(ti, t)) return false;  // t* <= t: inconsistent on its own
      value_[t] = 1;
      value_[ti] = -1;
      chosen_.push_back(t);
      for (SepId s = 0; s < sys_.size(); ++s) {
        if (s == ti || !sys_.le(ti, s)) continue;
        if (value_[s] == 1) return false;
        if (value_[s] == 0) queue.push_back(sys_.inverse(s));
      }
      if (opt_.profile) {
        const auto& a = *sys_.sides(t);
        for (SepId u : chosen_) {
          const auto& c = *sys_.sides(u);
          if (auto cr = sys_.find_sides({a.a | c.a, a.b & c.b})) {
            if (value_[*cr] == -1) return false;
            if (value_[*cr] == 0) queue.push_back(*cr);
          }
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (chosen_.size() > mark) {
      const SepId t = chosen_.back();
      chosen_.pop_back();
      value_[t] = 0;
      value_[sys_.inverse(t)] = 0;
    }
  }

  SepSet current() const {
    SepSet o(sys_.size());
    for (SepId t : chosen_) o.insert(t);
    return o;
  }

  template <typename Fn>
  void search(std::size_t i, Fn& fn) {
    if (stop_) return;
    if (++states_ > opt_.max_states) throw BudgetExceeded("orientation search exceeded its state budget");
    if (opt_.avoid && opt_.avoid->contains_subset(current())) return;
    while (i < pairs_.size() && value_[pairs_[i]] != 0) ++i;
    if (i == pairs_.size()) {
      if (!fn(current())) stop_ = true;
      return;
    }
    for (SepId pick : {pairs_[i], sys_.inverse(pairs_[i])}) {
      const std::size_t mark = chosen_.size();
      if (assign(pick)) search(i + 1, fn);
      undo(mark);
      if (stop_) return;
    }
  }

  const SeparationSystem& sys_;
  OrientationSearchOptions opt_;
  std::vector<std::int8_t> value_;
  std::vector<SepId> chosen_;  // also the undo trail
  std::vector<SepId> pairs_;
  std::size_t states_ = 0;
  bool stop_ = false;
};

// A k-profile (consistent orientation of S_k satisfying (P)), if any.
inline std::optional<SepSet> has_profile(const SkSystem& sk, std::size_t max_states = std::size_t{1} << 24) {
  OrientationSearch search(sk.sys, {true, nullptr, max_states});
  return search.first(sk_minus(sk));
}

}  // namespace sepdual
