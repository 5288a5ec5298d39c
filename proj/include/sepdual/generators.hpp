#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sepdual/families.hpp"
#include "sepdual/graphsep.hpp"
#include "sepdual/sepsys.hpp"
#include "sepdual/sgraph.hpp"

// Random instances for property campaigns. Everything is driven by a seeded
// std::mt19937_64 so campaigns are reproducible.
namespace sepdual::gen {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }
inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// True if the relation is antisymmetric (so the closure is a partial order).
inline bool is_poset(const SeparationSystem& sys) {
  for (SepId r = 0; r < sys.size(); ++r)
    for (SepId s = r + 1; s < sys.size(); ++s)
      if (sys.le(r, s) && sys.le(s, r)) return false;
  return true;
}

// Abstract system with `pairs` inverse pairs x<i>/x<i>* and random order
// generators, closed and rejected until the closure is a partial order.
inline SeparationSystem random_abstract_system(Rng& rng, int pairs, double density = 0.15) {
  std::vector<SeparationSystem::PairSpec> members;
  std::vector<std::string> ids;
  for (int i = 0; i < pairs; ++i) {
    const std::string x = "x" + std::to_string(i), xi = x + "*";
    members.push_back({x, xi});
    members.push_back({xi, x});
    ids.push_back(x);
    ids.push_back(xi);
  }
  for (int attempt = 0;; ++attempt) {
    std::vector<std::pair<std::string, std::string>> le;
    const double d = density / (1.0 + attempt / 8.0);
    for (const auto& r : ids)
      for (const auto& s : ids)
        if (r != s && coin(rng, d)) le.emplace_back(r, s);
    auto sys = SeparationSystem::abstract(members, le);
    if (is_poset(sys)) return sys;
  }
}

// Set system over a ground set of n elements with up to `pairs` random
// separations (A,B), A ∪ B = V.
inline SeparationSystem random_set_system(Rng& rng, int n, int pairs) {
  std::vector<std::string> ground;
  for (int v = 0; v < n; ++v) ground.push_back(std::to_string(v));
  std::vector<SeparationSystem::SidesSpec> seps;
  std::vector<SetSides> used;
  for (int i = 0, tries = 0; i < pairs && tries < 50 * pairs; ++tries) {
    SetSides s;
    for (int v = 0; v < n; ++v) {
      const int where = uniform(rng, 0, 4);  // A only, B only, or both (less often)
      if (where <= 1) s.a.insert(v);
      if (where >= 2 && where <= 3) s.b.insert(v);
      if (where == 4) {
        s.a.insert(v);
        s.b.insert(v);
      }
    }
    if (s.a == s.b) continue;
    if (std::find(used.begin(), used.end(), s) != used.end() ||
        std::find(used.begin(), used.end(), s.inverse()) != used.end())
      continue;
    used.push_back(s);
    seps.push_back({"s" + std::to_string(i), s});
    ++i;
  }
  return SeparationSystem::from_sides(ground, seps);
}

// Up to max_sets random non-empty sets of at most max_size members.
inline ForbiddenFamily random_family(Rng& rng, const SeparationSystem& sys, int max_sets, int max_size) {
  std::vector<SepSet> sets;
  const int count = uniform(rng, 0, max_sets);
  for (int i = 0; i < count; ++i) {
    SepSet s(sys.size());
    const int size = uniform(rng, 1, max_size);
    for (int j = 0; j < size; ++j) s.insert(static_cast<SepId>(uniform(rng, 0, static_cast<int>(sys.size()) - 1)));
    sets.push_back(s);
  }
  return explicit_family(std::move(sets));
}

// Orients each pair with probability p, in a random direction.
inline SepSet random_partial_orientation(Rng& rng, const SeparationSystem& sys, double p) {
  SepSet out(sys.size());
  for (SepId r : free_pairs(sys, out))
    if (coin(rng, p)) out.insert(coin(rng, 0.5) ? r : sys.inverse(r));
  return out;
}

// A uniformly random consistent full orientation, if one exists.
inline std::optional<SepSet> random_consistent_orientation(Rng& rng, const SeparationSystem& sys) {
  std::vector<SepSet> all;
  for_each_orientation(sys, sys.empty_set(), [&](const SepSet& o) {
    if (!find_inconsistency(sys, o)) all.push_back(o);
    return true;
  });
  if (all.empty()) return std::nullopt;
  return all[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(all.size()) - 1))];
}

// Leaves whose edge is alone in its class, i.e. the leaves (P2) may use.
inline std::vector<Vertex> amalgamable_leaves(const HGraph& h) {
  const auto inc = h.incidence();
  std::vector<Vertex> out;
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    if (h.part[v] != Part::N || inc[v].size() != 1) continue;
    const HEdge& e = h.edges[inc[v][0]];
    bool alone = true;
    for (EdgeIndex f : inc[e.m])
      if (f != inc[v][0] && h.edges[f].cls == e.cls) alone = false;
    if (alone) out.push_back(v);
  }
  return out;
}

// A constructible H-graph: subdivided k-stars (2 <= k <= 4) glued by random
// (P2) amalgamations of random non-empty leaf sets.
inline HGraph random_constructible_hgraph(Rng& rng, int max_stars = 6) {
  std::vector<HGraph> pool;
  const int stars = uniform(rng, 1, max_stars);
  for (int i = 0; i < stars; ++i) pool.push_back(subdivided_star(static_cast<std::size_t>(uniform(rng, 2, 4))));
  auto pick_leaves = [&](const HGraph& h) {
    auto cand = amalgamable_leaves(h);
    std::shuffle(cand.begin(), cand.end(), rng);
    cand.resize(static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(cand.size()))));
    return cand;
  };
  while (pool.size() > 1) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 2));
    if (j >= i) ++j;
    if (amalgamable_leaves(pool[i]).empty() || amalgamable_leaves(pool[j]).empty()) {
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(amalgamable_leaves(pool[i]).empty() ? i : j));
      continue;
    }
    HGraph merged = amalgamate_h(pool[i], pick_leaves(pool[i]), pool[j], pick_leaves(pool[j])).h;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
    pool.push_back(std::move(merged));
  }
  return pool.front();
}

inline EdgeDirections random_directions(Rng& rng, const HGraph& h) {
  EdgeDirections d(h.edges.size());
  for (std::size_t e = 0; e < d.size(); ++e) d[e] = coin(rng, 0.5);
  return d;
}

// Erdős–Rényi graph G(n, p).
inline SimpleGraph random_graph(Rng& rng, int n, double p) {
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng, p)) g.add_edge(u, v);
  return g;
}

}  // namespace sepdual::gen
