#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sepdual/families.hpp"
#include "sepdual/graphsep.hpp"
#include "sepdual/sepsys.hpp"
#include "sepdual/sgraph.hpp"

namespace sepdual::fixtures {

struct Problem {
  SeparationSystem sys;
  SepSet s_minus;
  ForbiddenFamily f;
};

// Two crossing pairs (A1,B1),(A2,B2) and (A'1,B'1),(A'2,B'2) with
// (Ai,Bi) < (A'j,B'j) for all i, j; S⁻ = {(A1,B1), (B'1,A'1)};
// F = { {(A1,B1),(B'2,A'2)}, {(A2,B2),(B'1,A'1)} }.
inline Problem ex41() {
  const std::vector<SeparationSystem::PairSpec> pairs = {
      {"A1B1", "B1A1"},     {"B1A1", "A1B1"},     {"A2B2", "B2A2"},     {"B2A2", "A2B2"},
      {"Ap1Bp1", "Bp1Ap1"}, {"Bp1Ap1", "Ap1Bp1"}, {"Ap2Bp2", "Bp2Ap2"}, {"Bp2Ap2", "Ap2Bp2"},
  };
  std::vector<std::pair<std::string, std::string>> le;
  for (const char* i : {"A1B1", "A2B2"})
    for (const char* j : {"Ap1Bp1", "Ap2Bp2"}) le.emplace_back(i, j);
  auto sys = SeparationSystem::abstract(pairs, le);
  auto ids = [&](std::initializer_list<const char*> names) {
    SepSet s(sys.size());
    for (const char* n : names) s.insert(sys.find(n));
    return s;
  };
  SepSet s_minus = ids({"A1B1", "Bp1Ap1"});
  ForbiddenFamily f = explicit_family({ids({"A1B1", "Bp2Ap2"}), ids({"A2B2", "Bp1Ap1"})});
  return {std::move(sys), std::move(s_minus), std::move(f)};
}

// Five separations of a 10-element cycle into an arc A_i = {2i, 2i+1, 2i+2}
// (mod 10) and its complement. Each crosses its two neighbours and is nested
// with the other two. F = all 2-stars of nested separations pointing towards
// each other; S⁻ = ∅.
inline Problem ex42() {
  std::vector<std::string> ground;
  for (int v = 0; v < 10; ++v) ground.push_back(std::to_string(v));
  std::vector<SeparationSystem::SidesSpec> seps;
  for (int i = 0; i < 5; ++i) {
    VertexSet a;
    for (int d = 0; d < 3; ++d) a.insert((2 * i + d) % 10);
    const VertexSet b = VertexSet::full(10) - a;
    seps.push_back({"A" + std::to_string(i + 1), {a, b}});
    seps.push_back({"B" + std::to_string(i + 1), {b, a}});
  }
  auto sys = SeparationSystem::from_sides(ground, seps);
  std::vector<SepSet> stars;
  for (SepId r = 0; r < sys.size(); ++r)
    for (SepId s = r + 1; s < sys.size(); ++s)
      if (s != sys.inverse(r) && sys.le(r, sys.inverse(s))) stars.push_back(SepSet(sys.size(), {r, s}));
  return {sys, sys.empty_set(), explicit_family(std::move(stars))};
}

// An H-graph that satisfies the conclusion of the sink lemma for every edge
// orientation but is not cusped: a 4-cycle a-m1-b-m2 traversing both hubs,
// plus one pendant node in each edge class.
//   vertices: a=0 b=1 x1=2 x2=3 y1=4 y2=5 m1=6 m2=7
inline HGraph fig6() {
  HGraph h;
  for (int i = 0; i < 6; ++i) h.add_vertex(Part::N);
  const Vertex m1 = h.add_vertex(Part::M);
  const Vertex m2 = h.add_vertex(Part::M);
  h.add_edge(0, m1, 0);
  h.add_edge(2, m1, 0);
  h.add_edge(1, m1, 1);
  h.add_edge(3, m1, 1);
  h.add_edge(0, m2, 0);
  h.add_edge(4, m2, 0);
  h.add_edge(1, m2, 1);
  h.add_edge(5, m2, 1);
  return h;
}

inline std::vector<std::vector<std::string>> exjc_k5_names() {
  return {{"vTL", "t1", "t2", "l1", "l2"},
          {"vTR", "t1", "t2", "r1", "r2"},
          {"vBL", "b1", "b2", "l1", "l2"},
          {"vBR", "b1", "b2", "r1", "r2"}};
}

// Twelve vertices: four K5s arranged in a 2x2 grid. Neighbouring K5s share a
// pair of separator vertices (t = top, b = bottom, l = left, r = right), and
// each K5 has one private corner vertex.
inline SimpleGraph exjc_graph() {
  SimpleGraph g(std::vector<std::string>{"vTL", "vTR", "vBL", "vBR", "t1", "t2", "b1", "b2", "l1", "l2", "r1", "r2"});
  for (const auto& k5 : exjc_k5_names()) {
    for (std::size_t i = 0; i < k5.size(); ++i)
      for (std::size_t j = i + 1; j < k5.size(); ++j)
        if (!g.adjacent(g.index(k5[i]), g.index(k5[j]))) g.add_edge(k5[i], k5[j]);
  }
  return g;
}

inline std::vector<VertexSet> exjc_k5s() {
  const SimpleGraph g = exjc_graph();
  std::vector<VertexSet> out;
  for (const auto& k5 : exjc_k5_names()) {
    VertexSet s;
    for (const auto& v : k5) s.insert(g.index(v));
    out.push_back(s);
  }
  return out;
}

inline std::vector<std::string> names() { return {"ex41", "ex42", "fig6", "exjc"}; }

}  // namespace sepdual::fixtures
