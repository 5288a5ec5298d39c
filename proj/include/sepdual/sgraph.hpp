#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sepdual/error.hpp"
#include "sepdual/families.hpp"
#include "sepdual/sepsys.hpp"

namespace sepdual {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint32_t;

// Bipartition side of an H-graph vertex: nodes (N) carry forbidden stars,
// hubs (M) witness inconsistencies.
enum class Part : std::uint8_t { N, M };

// Every edge joins a node to a hub. `cls` is the class of the edge in the
// partition E(m) = E'(m) ∪ E''(m): 0 for E'(m), 1 for E''(m).
struct HEdge {
  Vertex n = 0;
  Vertex m = 0;
  std::uint8_t cls = 0;
  friend bool operator==(const HEdge&, const HEdge&) = default;
};

struct HGraph {
  std::vector<Part> part;
  std::vector<HEdge> edges;

  std::size_t vertex_count() const { return part.size(); }
  Vertex add_vertex(Part p) {
    part.push_back(p);
    return static_cast<Vertex>(part.size() - 1);
  }
  EdgeIndex add_edge(Vertex n, Vertex m, std::uint8_t cls) {
    edges.push_back({n, m, cls});
    return static_cast<EdgeIndex>(edges.size() - 1);
  }

  // Incident edge indices per vertex, ascending.
  std::vector<std::vector<EdgeIndex>> incidence() const {
    std::vector<std::vector<EdgeIndex>> inc(part.size());
    for (EdgeIndex e = 0; e < edges.size(); ++e) {
      if (edges[e].n < part.size()) inc[edges[e].n].push_back(e);
      if (edges[e].m < part.size() && edges[e].m != edges[e].n) inc[edges[e].m].push_back(e);
    }
    return inc;
  }
  std::vector<Vertex> leaves() const {
    std::vector<Vertex> out;
    const auto inc = incidence();
    for (Vertex v = 0; v < part.size(); ++v)
      if (inc[v].size() == 1) out.push_back(v);
    return out;
  }
  Vertex other_end(EdgeIndex e, Vertex v) const { return edges[e].n == v ? edges[e].m : edges[e].n; }

  friend bool operator==(const HGraph&, const HGraph&) = default;
};

inline std::vector<std::string> validate_hgraph(const HGraph& h) {
  std::vector<std::string> out;
  const std::size_t nv = h.vertex_count();
  if (h.edges.empty()) out.push_back("graph has no edges");
  for (EdgeIndex e = 0; e < h.edges.size(); ++e) {
    const auto& ed = h.edges[e];
    if (ed.n >= nv || ed.m >= nv) {
      out.push_back("edge " + std::to_string(e) + " has an endpoint out of range");
      return out;
    }
    if (h.part[ed.n] != Part::N || h.part[ed.m] != Part::M)
      out.push_back("edge " + std::to_string(e) + " does not join N to M");
    if (ed.cls > 1) out.push_back("edge " + std::to_string(e) + " has class other than E'/E''");
  }
  const auto inc = h.incidence();
  for (Vertex v = 0; v < nv; ++v) {
    if (inc[v].size() == 1 && h.part[v] == Part::M) out.push_back("leaf " + std::to_string(v) + " lies in M");
    if (h.part[v] == Part::M) {
      bool c0 = false, c1 = false;
      for (EdgeIndex e : inc[v]) (h.edges[e].cls == 0 ? c0 : c1) = true;
      if (!c0 || !c1) out.push_back("hub " + std::to_string(v) + " has an empty edge class");
    }
  }
  if (nv > 0) {
    std::vector<bool> seen(nv, false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (EdgeIndex e : inc[v]) {
        const Vertex w = h.other_end(e, v);
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) out.push_back("graph is not connected");
  }
  return out;
}

// Step of a construction trace. Steps are stored in post-order; operands of
// an amalgamation refer to earlier steps and the last step is the root.
struct TraceStep {
  enum class Kind { star, path2, amalgamate };
  Kind kind = Kind::star;
  std::vector<SepId> seps;  // star: the forbidden set; path2: {alpha(n,m), alpha(n',m)}
  SepId cd = kNoSep;        // amalgamate: the separation (C,D)
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
  std::vector<TraceStep> steps;
  friend bool operator==(const Trace&, const Trace&) = default;
};

// An H-graph with alpha on both orientations of every edge:
// to_m[e] = alpha(n,m) and to_n[e] = alpha(m,n).
struct SGraph {
  HGraph h;
  std::vector<SepId> to_m;
  std::vector<SepId> to_n;
  std::optional<Trace> trace;

  // Leaf separation alpha(n,m) of a leaf n.
  SepId leaf_separation(Vertex leaf, const std::vector<std::vector<EdgeIndex>>& inc) const {
    return to_m[inc[leaf].front()];
  }
  bool same_shape(const SGraph& o) const { return h == o.h && to_m == o.to_m && to_n == o.to_n; }
  friend bool operator==(const SGraph&, const SGraph&) = default;
};

// Leaves not rooted in S⁻ are still sound when their incoming singleton star
// is forbidden, or when the leaf separation r is small (r <= r*), because
// every consistent orientation contains such an r.
inline bool leaf_self_justified(const SeparationSystem& sys, const ForbiddenFamily* f, SepId leaf_sep) {
  if (is_small(sys, leaf_sep)) return true;
  return f != nullptr && f->is_member(SepSet(sys.size(), {sys.inverse(leaf_sep)}));
}

inline bool leaf_justified(const SeparationSystem& sys, const SepSet& s_minus, const ForbiddenFamily& f,
                           SepId leaf_sep) {
  return s_minus.contains(leaf_sep) || leaf_self_justified(sys, &f, leaf_sep);
}

inline std::vector<std::string> validate_sgraph(const SGraph& g, const SeparationSystem& sys, const SepSet& s_minus,
                                                const ForbiddenFamily& f) {
  auto out = validate_hgraph(g.h);
  if (!out.empty()) return out;
  const auto& h = g.h;
  if (g.to_m.size() != h.edges.size() || g.to_n.size() != h.edges.size()) {
    out.push_back("alpha is not defined on every oriented edge");
    return out;
  }
  for (EdgeIndex e = 0; e < h.edges.size(); ++e)
    if (g.to_m[e] >= sys.size() || g.to_n[e] >= sys.size()) {
      out.push_back("alpha maps edge " + std::to_string(e) + " outside the system");
      return out;
    }
  for (EdgeIndex e = 0; e < h.edges.size(); ++e)
    if (g.to_n[e] != sys.inverse(g.to_m[e]))
      out.push_back("(i) alpha does not commute with inversion on edge " + std::to_string(e));
  const auto inc = h.incidence();
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    if (h.part[v] != Part::N) continue;
    if (inc[v].size() == 1) {
      const SepId r = g.to_m[inc[v][0]];
      if (!leaf_justified(sys, s_minus, f, r))
        out.push_back("(ii) leaf " + std::to_string(v) + " has separation " + sys.id(r) + " outside S-");
    } else {
      SepSet star(sys.size());
      for (EdgeIndex e : inc[v]) star.insert(g.to_n[e]);
      if (!f.is_member(star)) out.push_back("(iii) star at node " + std::to_string(v) + " is not in F");
    }
  }
  for (Vertex m = 0; m < h.vertex_count(); ++m) {
    if (h.part[m] != Part::M) continue;
    for (EdgeIndex e1 : inc[m])
      for (EdgeIndex e2 : inc[m])
        if (h.edges[e1].cls == 0 && h.edges[e2].cls == 1 && !sys.le(g.to_n[e2], g.to_m[e1]))
          out.push_back("(iv) hub " + std::to_string(m) + " does not witness an inconsistency on edges " +
                        std::to_string(e1) + "," + std::to_string(e2));
  }
  return out;
}

// A walk (edge list of a path or cycle) traverses hub m if it uses an edge
// from each of E'(m) and E''(m).
inline bool traverses(const HGraph& h, std::span<const EdgeIndex> walk, Vertex m) {
  bool on_walk = false, c0 = false, c1 = false;
  for (EdgeIndex e : walk) {
    if (e >= h.edges.size()) throw InvalidInput("walk uses an unknown edge");
    if (h.edges[e].m != m) continue;
    on_walk = true;
    (h.edges[e].cls == 0 ? c0 : c1) = true;
  }
  if (!on_walk) throw PreconditionError("traverses: vertex is not on the walk");
  return c0 && c1;
}

namespace detail {

// Searches for a cycle that traverses every hub on it. Hubs that no cycle can
// traverse are pruned first; whatever survives is searched depth-first.
class TraversingCycleSearch {
 public:
  explicit TraversingCycleSearch(const HGraph& h, std::size_t budget) : h_(h), inc_(h.incidence()), budget_(budget) {
    alive_.assign(h.vertex_count(), true);
    prune();
  }

  std::optional<std::vector<EdgeIndex>> find() {
    for (Vertex s = 0; s < h_.vertex_count(); ++s) {
      if (!alive_[s] || h_.part[s] != Part::N) continue;
      start_ = s;
      on_path_.assign(h_.vertex_count(), false);
      on_path_[s] = true;
      path_.clear();
      for (EdgeIndex e : inc_[s])
        if (edge_alive(e) && dfs_from_node_edge(s, e)) return path_;
    }
    return std::nullopt;
  }

 private:
  bool edge_alive(EdgeIndex e) const { return alive_[h_.edges[e].n] && alive_[h_.edges[e].m]; }

  // Repeatedly drops hubs that no cycle can traverse: a cycle through m uses
  // two edges of one block of the graph, so m is droppable when no block
  // holds edges of both E'(m) and E''(m).
  void prune() {
    bool changed = true;
    while (changed) {
      changed = false;
      const auto block = edge_blocks();
      for (Vertex m = 0; m < h_.vertex_count(); ++m) {
        if (!alive_[m] || h_.part[m] != Part::M) continue;
        bool traversable = false;
        for (EdgeIndex e : inc_[m]) {
          if (!edge_alive(e) || h_.edges[e].cls != 0) continue;
          for (EdgeIndex f : inc_[m])
            if (edge_alive(f) && h_.edges[f].cls == 1 && block[e] == block[f]) traversable = true;
          if (traversable) break;
        }
        if (!traversable) {
          alive_[m] = false;
          changed = true;
        }
      }
    }
  }

  // Block (biconnected component) label of every live edge; iterative Tarjan.
  std::vector<std::size_t> edge_blocks() const {
    const std::size_t nv = h_.vertex_count();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> block(h_.edges.size(), kNone), disc(nv, kNone), low(nv, 0);
    std::vector<EdgeIndex> estack;
    struct Frame {
      Vertex v;
      std::size_t parent_edge;
      std::size_t next;
    };
    std::vector<Frame> frames;
    std::size_t clock = 0, blocks = 0;
    for (Vertex r = 0; r < nv; ++r) {
      if (!alive_[r] || disc[r] != kNone) continue;
      disc[r] = low[r] = clock++;
      frames.push_back({r, kNone, 0});
      while (!frames.empty()) {
        Frame& f = frames.back();
        const Vertex v = f.v;
        if (f.next < inc_[v].size()) {
          const EdgeIndex e = inc_[v][f.next++];
          if (!edge_alive(e) || e == f.parent_edge) continue;
          const Vertex w = h_.other_end(e, v);
          if (disc[w] == kNone) {
            estack.push_back(e);
            disc[w] = low[w] = clock++;
            frames.push_back({w, e, 0});
          } else if (disc[w] < disc[v]) {
            estack.push_back(e);
            low[v] = std::min(low[v], disc[w]);
          }
          continue;
        }
        const std::size_t pe = f.parent_edge;
        frames.pop_back();
        if (frames.empty()) break;
        const Vertex u = frames.back().v;
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          while (true) {
            const EdgeIndex top = estack.back();
            estack.pop_back();
            block[top] = blocks;
            if (top == pe) break;
          }
          ++blocks;
        }
      }
    }
    return block;
  }

  void tick() {
    if (++steps_ > budget_) throw BudgetExceeded("cycle search exceeded its step budget");
  }

  // Path currently ends at node `n` (on path); try leaving through edge e.
  bool dfs_from_node_edge(Vertex n, EdgeIndex e) {
    (void)n;
    tick();
    const Vertex m = h_.edges[e].m;
    if (on_path_[m]) return false;
    on_path_[m] = true;
    path_.push_back(e);
    const std::uint8_t leave_cls = h_.edges[e].cls ^ 1U;
    for (EdgeIndex f : inc_[m]) {
      if (f == e || !edge_alive(f) || h_.edges[f].cls != leave_cls) continue;
      const Vertex w = h_.edges[f].n;
      if (w == start_ && path_.size() >= 1) {
        path_.push_back(f);
        return true;
      }
      if (w < start_ || on_path_[w]) continue;
      on_path_[w] = true;
      path_.push_back(f);
      for (EdgeIndex g : inc_[w])
        if (g != f && edge_alive(g) && dfs_from_node_edge(w, g)) return true;
      path_.pop_back();
      on_path_[w] = false;
    }
    path_.pop_back();
    on_path_[m] = false;
    return false;
  }

  const HGraph& h_;
  std::vector<std::vector<EdgeIndex>> inc_;
  std::vector<bool> alive_;
  std::vector<bool> on_path_;
  std::vector<EdgeIndex> path_;
  Vertex start_ = 0;
  std::size_t steps_ = 0;
  std::size_t budget_;
};

}  // namespace detail

inline constexpr std::size_t kDefaultCycleBudget = std::size_t{1} << 26;

// A cycle (as edge list) traversing every hub it contains, if one exists.
inline std::optional<std::vector<EdgeIndex>> find_traversing_cycle(const HGraph& h,
                                                                  std::size_t budget = kDefaultCycleBudget) {
  return detail::TraversingCycleSearch(h, budget).find();
}

inline bool leaf_edges_alone_in_class(const HGraph& h) {
  const auto inc = h.incidence();
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    if (h.part[v] != Part::N || inc[v].size() != 1) continue;
    const HEdge& leaf = h.edges[inc[v][0]];
    for (EdgeIndex f : inc[leaf.m])
      if (f != inc[v][0] && h.edges[f].cls == leaf.cls) return false;
  }
  return true;
}

inline bool is_cusped(const HGraph& h) { return leaf_edges_alone_in_class(h) && !find_traversing_cycle(h); }

// ---------------------------------------------------------------------------
// Sink lemma

// Edge directions: toward_m[e] is true iff edge e points from its node to
// its hub.
using EdgeDirections = std::vector<bool>;

struct SinkResult {
  enum class Kind { node_sink, witness_hub };
  Kind kind = Kind::node_sink;
  Vertex vertex = 0;
  friend bool operator==(const SinkResult&, const SinkResult&) = default;
};

// Checks a claimed sink result by local inspection.
inline bool check_sink_result(const HGraph& h, const EdgeDirections& dir, const SinkResult& r) {
  if (r.vertex >= h.vertex_count()) return false;
  const auto inc = h.incidence();
  if (r.kind == SinkResult::Kind::node_sink) {
    if (h.part[r.vertex] != Part::N) return false;
    return std::none_of(inc[r.vertex].begin(), inc[r.vertex].end(), [&](EdgeIndex e) { return dir[e]; });
  }
  if (h.part[r.vertex] != Part::M) return false;
  bool in0 = false, in1 = false;
  for (EdgeIndex e : inc[r.vertex])
    if (dir[e]) (h.edges[e].cls == 0 ? in0 : in1) = true;
  return in0 && in1;
}

// The conclusion of the sink lemma, checked exhaustively over all vertices.
inline bool sink_conclusion_holds(const HGraph& h, const EdgeDirections& dir) {
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    const SinkResult r{h.part[v] == Part::N ? SinkResult::Kind::node_sink : SinkResult::Kind::witness_hub, v};
    if (check_sink_result(h, dir, r)) return true;
  }
  return false;
}

// Follows a maximal forward path Q that starts at a node and traverses every
// hub it passes through; its end yields a node with all edges inward or a hub
// with inward edges in both classes. Start is the least node with an outgoing
// edge, extensions take the least admissible edge.
inline SinkResult find_sink(const HGraph& h, const EdgeDirections& dir) {
  if (dir.size() != h.edges.size()) throw InvalidInput("find_sink: direction vector has wrong length");
  if (!validate_hgraph(h).empty()) throw PreconditionError("find_sink: not an H-graph");
  if (!is_cusped(h)) throw PreconditionError("find_sink: graph is not cusped");
  const auto inc = h.incidence();
  auto outgoing_from_node = [&](EdgeIndex e) { return static_cast<bool>(dir[e]); };

  std::optional<Vertex> start;
  for (Vertex v = 0; v < h.vertex_count() && !start; ++v)
    if (h.part[v] == Part::N && std::any_of(inc[v].begin(), inc[v].end(), outgoing_from_node)) start = v;
  if (!start) {
    for (Vertex v = 0; v < h.vertex_count(); ++v)
      if (h.part[v] == Part::N) return {SinkResult::Kind::node_sink, v};
  }

  std::vector<bool> on_q(h.vertex_count(), false);
  std::vector<EdgeIndex> entry(h.vertex_count(), 0);  // edge by which Q entered a hub
  Vertex end = *start;
  on_q[end] = true;
  while (true) {
    std::optional<EdgeIndex> next;
    if (h.part[end] == Part::N) {
      for (EdgeIndex e : inc[end])
        if (dir[e] && !on_q[h.edges[e].m]) {
          next = e;
          break;
        }
      if (!next) break;
      const Vertex m = h.edges[*next].m;
      entry[m] = *next;
      on_q[m] = true;
      end = m;
    } else {
      const std::uint8_t leave_cls = h.edges[entry[end]].cls ^ 1U;
      for (EdgeIndex e : inc[end])
        if (h.edges[e].cls == leave_cls && !dir[e] && !on_q[h.edges[e].n]) {
          next = e;
          break;
        }
      if (!next) break;
      end = h.edges[*next].n;
      on_q[end] = true;
    }
  }

  if (h.part[end] == Part::N) {
    bool has_out = false;
    for (EdgeIndex e : inc[end]) {
      if (!dir[e]) continue;
      has_out = true;
      const Vertex m = h.edges[e].m;
      if (on_q[m] && h.edges[entry[m]].cls != h.edges[e].cls) return {SinkResult::Kind::witness_hub, m};
    }
    if (!has_out) return {SinkResult::Kind::node_sink, end};
  } else {
    const std::uint8_t other = h.edges[entry[end]].cls ^ 1U;
    for (EdgeIndex e : inc[end])
      if (h.edges[e].cls == other && dir[e]) return {SinkResult::Kind::witness_hub, end};
  }
  throw PreconditionError("find_sink: maximal path closes a traversing cycle");
}

// Directions induced on H by a full orientation O: edge nm points n -> m iff
// alpha(n,m) ∈ O.
inline EdgeDirections induced_orientation(const SGraph& g, const SeparationSystem& sys, const SepSet& o) {
  require_antisymmetric(sys, o);
  EdgeDirections dir(g.h.edges.size());
  for (EdgeIndex e = 0; e < g.h.edges.size(); ++e) {
    if (o.contains(g.to_m[e]))
      dir[e] = true;
    else if (o.contains(g.to_n[e]))
      dir[e] = false;
    else
      throw PreconditionError("induced_orientation: orientation misses " + sys.id(g.to_m[e]));
  }
  return dir;
}

// ---------------------------------------------------------------------------
// Construction

// The k-star on N with every edge subdivided by a hub. Vertex 0 is the centre;
// leaf i is vertex 2i+1 and its hub 2i+2. Leaf edges are class E', centre
// edges class E''.
inline HGraph subdivided_star(std::size_t k) {
  HGraph h;
  const Vertex t = h.add_vertex(Part::N);
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex s = h.add_vertex(Part::N);
    const Vertex m = h.add_vertex(Part::M);
    h.add_edge(s, m, 0);
    h.add_edge(t, m, 1);
  }
  return h;
}

struct HMerge {
  HGraph h;
  // For each new edge: which operand (0 or 1) and its edge index there.
  std::vector<std::pair<int, EdgeIndex>> origin;
};

// Removes leaves l1 from h1 and l2 from h2 and identifies all their
// neighbours into one new hub (the last vertex), with edges from h1 in E'
// and edges from h2 in E''.
inline HMerge amalgamate_h(const HGraph& h1, const std::vector<Vertex>& l1, const HGraph& h2,
                           const std::vector<Vertex>& l2) {
  if (l1.empty() || l2.empty()) throw PreconditionError("amalgamation needs a non-empty leaf set on both sides");
  HMerge out;
  std::vector<Vertex> new_index;
  auto take = [&](const HGraph& h, const std::vector<Vertex>& leaves, int which) {
    const auto inc = h.incidence();
    std::vector<bool> dropped(h.vertex_count(), false), merged(h.vertex_count(), false);
    for (Vertex l : leaves) {
      if (l >= h.vertex_count() || h.part[l] != Part::N || inc[l].size() != 1)
        throw PreconditionError("amalgamation leaf is not a leaf node");
      const HEdge& le = h.edges[inc[l][0]];
      for (EdgeIndex f : inc[le.m])
        if (f != inc[l][0] && h.edges[f].cls == le.cls)
          throw PreconditionError("amalgamation leaf edge is not alone in its class");
      dropped[l] = true;
      merged[le.m] = true;
    }
    new_index.assign(h.vertex_count(), 0);
    for (Vertex v = 0; v < h.vertex_count(); ++v)
      if (!dropped[v] && !merged[v]) new_index[v] = out.h.add_vertex(h.part[v]);
    std::vector<std::pair<EdgeIndex, bool>> kept;  // (edge, attaches to merged hub)
    for (EdgeIndex e = 0; e < h.edges.size(); ++e) {
      const HEdge& ed = h.edges[e];
      if (dropped[ed.n]) continue;
      kept.emplace_back(e, merged[ed.m]);
    }
    return std::make_tuple(kept, new_index, which);
  };
  auto [kept1, idx1, w1] = take(h1, l1, 0);
  auto [kept2, idx2, w2] = take(h2, l2, 1);
  const Vertex hub = out.h.add_vertex(Part::M);
  bool any1 = false, any2 = false;
  for (auto [e, to_hub] : kept1) {
    const HEdge& ed = h1.edges[e];
    out.h.add_edge(idx1[ed.n], to_hub ? hub : idx1[ed.m], to_hub ? std::uint8_t{0} : ed.cls);
    out.origin.emplace_back(0, e);
    any1 |= to_hub;
  }
  for (auto [e, to_hub] : kept2) {
    const HEdge& ed = h2.edges[e];
    out.h.add_edge(idx2[ed.n], to_hub ? hub : idx2[ed.m], to_hub ? std::uint8_t{1} : ed.cls);
    out.origin.emplace_back(1, e);
    any2 |= to_hub;
  }
  if (!any1 || !any2) throw PreconditionError("amalgamation hub would have an empty edge class");
  return out;
}

// (S1): subdivided star over a forbidden set {r_1..r_n} with
// alpha(s_i, s'_i) = alpha(s'_i, t) = r_i. n = 1 gives the 2-path whose centre
// is a leaf justified by the forbidden singleton.
inline SGraph from_star_tree(const SeparationSystem& sys, const std::vector<SepId>& seps) {
  if (seps.empty()) throw InvalidInput("from_star_tree: empty forbidden set");
  auto sorted = seps;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInput("from_star_tree: repeated separation");
  SGraph g;
  g.h = subdivided_star(seps.size());
  for (SepId r : seps) {
    const SepId ri = sys.inverse(r);
    g.to_m.push_back(r);  // alpha(s_i, s'_i)
    g.to_n.push_back(ri);
    g.to_m.push_back(ri);  // alpha(t, s'_i)
    g.to_n.push_back(r);
  }
  g.trace = Trace{{TraceStep{TraceStep::Kind::star, seps, kNoSep, 0, 0}}};
  return g;
}

// The path n - m - n' with alpha(n,m) = s and alpha(n',m) = r, witnessing that
// r and s point away from each other (r* <= s).
inline SGraph inconsistency_path(const SeparationSystem& sys, SepId s, SepId r) {
  if (!sys.le(sys.inverse(r), s)) throw PreconditionError("inconsistency_path: separations are not inconsistent");
  SGraph g;
  const Vertex n = g.h.add_vertex(Part::N);
  const Vertex m = g.h.add_vertex(Part::M);
  const Vertex n2 = g.h.add_vertex(Part::N);
  g.h.add_edge(n, m, 0);
  g.h.add_edge(n2, m, 1);
  g.to_m = {s, r};
  g.to_n = {sys.inverse(s), sys.inverse(r)};
  g.trace = Trace{{TraceStep{TraceStep::Kind::path2, {s, r}, kNoSep, 0, 0}}};
  return g;
}

// (S2): amalgamates the leaves of g1 with leaf separation (D,C) with the leaves
// of g2 with leaf separation (C,D) = cd. Afterwards neither cd nor cd* may
// remain a leaf separation, except at leaves justified on their own (forbidden
// singleton or small separation, see leaf_self_justified).
inline SGraph amalgamate(const SGraph& g1, const SGraph& g2, SepId cd, const SeparationSystem& sys,
                         const ForbiddenFamily* f = nullptr) {
  const SepId dc = sys.inverse(cd);
  auto collect = [](const SGraph& g, SepId sep) {
    std::vector<Vertex> out;
    const auto inc = g.h.incidence();
    for (Vertex v = 0; v < g.h.vertex_count(); ++v)
      if (g.h.part[v] == Part::N && inc[v].size() == 1 && g.to_m[inc[v][0]] == sep) out.push_back(v);
    return out;
  };
  const auto l1 = collect(g1, dc);
  const auto l2 = collect(g2, cd);
  if (l1.empty()) throw PreconditionError("amalgamate: first operand has no leaf with separation " + sys.id(dc));
  if (l2.empty()) throw PreconditionError("amalgamate: second operand has no leaf with separation " + sys.id(cd));
  auto merged = amalgamate_h(g1.h, l1, g2.h, l2);
  SGraph g;
  g.h = std::move(merged.h);
  for (auto [which, e] : merged.origin) {
    const SGraph& src = which == 0 ? g1 : g2;
    g.to_m.push_back(src.to_m[e]);
    g.to_n.push_back(src.to_n[e]);
  }
  const auto inc = g.h.incidence();
  for (Vertex v = 0; v < g.h.vertex_count(); ++v) {
    if (g.h.part[v] != Part::N || inc[v].size() != 1) continue;
    const SepId r = g.to_m[inc[v][0]];
    if ((r == cd || r == dc) && !leaf_self_justified(sys, f, r))
      throw PreconditionError("amalgamate: " + sys.id(r) + " survives as a leaf separation");
  }
  if (g1.trace && g2.trace) {
    Trace t = *g1.trace;
    const auto offset = static_cast<std::uint32_t>(t.steps.size());
    for (auto step : g2.trace->steps) {
      if (step.kind == TraceStep::Kind::amalgamate) {
        step.left += offset;
        step.right += offset;
      }
      t.steps.push_back(std::move(step));
    }
    t.steps.push_back(TraceStep{TraceStep::Kind::amalgamate, {}, cd, offset - 1,
                                static_cast<std::uint32_t>(t.steps.size() - 1)});
    g.trace = std::move(t);
  }
  return g;
}

struct TraceCheck {
  bool ok = true;
  std::optional<std::size_t> failed_step;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Replays the construction trace: each star must be a member of F, each
// 2-path must witness an inconsistency, each amalgamation must meet its
// preconditions, and the result must reproduce g exactly.
inline TraceCheck verify_trace(const SGraph& g, const SeparationSystem& sys, const ForbiddenFamily& f) {
  if (!g.trace || g.trace->steps.empty()) return {false, std::nullopt, "no construction trace"};
  const auto& steps = g.trace->steps;
  std::vector<SGraph> built;
  std::vector<bool> used(steps.size(), false);
  auto fail = [](std::size_t i, std::string why) { return TraceCheck{false, i, std::move(why)}; };
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& st = steps[i];
    try {
      for (SepId r : st.seps)
        if (r >= sys.size()) return fail(i, "separation out of range");
      switch (st.kind) {
        case TraceStep::Kind::star:
          if (st.seps.empty()) return fail(i, "empty star");
          if (!f.is_member(SepSet::of(sys.size(), st.seps))) return fail(i, "star is not in F");
          built.push_back(from_star_tree(sys, st.seps));
          break;
        case TraceStep::Kind::path2:
          if (st.seps.size() != 2) return fail(i, "2-path needs two separations");
          built.push_back(inconsistency_path(sys, st.seps[0], st.seps[1]));
          break;
        case TraceStep::Kind::amalgamate:
          if (st.left >= i || st.right >= i || st.left == st.right) return fail(i, "operand does not precede step");
          if (used[st.left] || used[st.right]) return fail(i, "operand used twice");
          if (st.cd >= sys.size()) return fail(i, "separation out of range");
          used[st.left] = used[st.right] = true;
          built.push_back(amalgamate(built[st.left], built[st.right], st.cd, sys, &f));
          break;
      }
    } catch (const Error& ex) {
      return fail(i, ex.what());
    }
  }
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!used[i]) return fail(i, "step is not used by the root");
  if (!built.back().same_shape(g)) return fail(steps.size() - 1, "replay does not reproduce the graph");
  if (!(built.back().trace == g.trace)) return fail(steps.size() - 1, "replay trace differs");
  return {};
}

}  // namespace sepdual
