#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sepdual/fixtures.hpp"
#include "sepdual/generators.hpp"
#include "sepdual/sepdual.hpp"

using namespace sepdual;

namespace {

// Random connected bipartite multigraph with both classes present at every
// hub; no cusped-ness is implied.
std::optional<HGraph> random_hgraph(gen::Rng& rng, int nodes, int hubs, int extra) {
  HGraph h;
  for (int i = 0; i < nodes; ++i) h.add_vertex(Part::N);
  for (int i = 0; i < hubs; ++i) h.add_vertex(Part::M);
  for (int m = nodes; m < nodes + hubs; ++m) {
    h.add_edge(static_cast<Vertex>(gen::uniform(rng, 0, nodes - 1)), static_cast<Vertex>(m), 0);
    h.add_edge(static_cast<Vertex>(gen::uniform(rng, 0, nodes - 1)), static_cast<Vertex>(m), 1);
  }
  for (int i = 0; i < extra; ++i)
    h.add_edge(static_cast<Vertex>(gen::uniform(rng, 0, nodes - 1)),
               static_cast<Vertex>(gen::uniform(rng, nodes, nodes + hubs - 1)),
               static_cast<std::uint8_t>(gen::uniform(rng, 0, 1)));
  if (!validate_hgraph(h).empty()) return std::nullopt;
  return h;
}

SeparationSystem two_pairs(bool nested) {
  std::vector<std::pair<std::string, std::string>> le;
  if (nested) le.emplace_back("a", "b");
  return SeparationSystem::abstract({{"a", "a*"}, {"a*", "a"}, {"b", "b*"}, {"b*", "b"}}, le);
}

}  // namespace

TEST(HGraph, ValidateReportsProblems) {
  HGraph h;
  EXPECT_FALSE(validate_hgraph(h).empty());
  const Vertex n = h.add_vertex(Part::N);
  const Vertex m = h.add_vertex(Part::M);
  h.add_edge(n, m, 0);
  const auto bad = validate_hgraph(h);
  EXPECT_FALSE(bad.empty());  // leaf hub with one class
  EXPECT_TRUE(validate_hgraph(subdivided_star(3)).empty());
}

TEST(HGraph, SubdividedStarIsCusped) {
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto h = subdivided_star(k);
    EXPECT_TRUE(is_cusped(h));
    EXPECT_EQ(h.leaves().size(), k == 1 ? 2u : k);
  }
}

TEST(HGraph, Fig6SatisfiesSinkConclusionButIsNotCusped) {
  const auto h = fixtures::fig6();
  ASSERT_TRUE(validate_hgraph(h).empty());
  EXPECT_FALSE(is_cusped(h));
  EXPECT_TRUE(find_traversing_cycle(h).has_value());
  for (std::uint32_t mask = 0; mask < (1u << h.edges.size()); ++mask) {
    EdgeDirections d(h.edges.size());
    for (std::size_t e = 0; e < d.size(); ++e) d[e] = (mask >> e) & 1U;
    ASSERT_TRUE(sink_conclusion_holds(h, d));
  }
  EXPECT_THROW(find_sink(h, EdgeDirections(h.edges.size(), true)), PreconditionError);
}

TEST(HGraph, TraversingCycleMatchesOracle) {
  gen::Rng rng(31);
  int with = 0, without = 0;
  for (int t = 0; t < 600; ++t) {
    const auto h = random_hgraph(rng, gen::uniform(rng, 2, 6), gen::uniform(rng, 1, 4), gen::uniform(rng, 0, 5));
    if (!h) continue;
    const auto cyc = find_traversing_cycle(*h);
    ASSERT_EQ(cyc.has_value(), oracle::has_traversing_cycle(*h)) << "trial " << t;
    ++(cyc ? with : without);
  }
  EXPECT_GT(with, 20);
  EXPECT_GT(without, 20);
}

TEST(HGraph, ReturnedCycleTraversesItsHubs) {
  const auto h = fixtures::fig6();
  const auto cyc = *find_traversing_cycle(h);
  for (EdgeIndex e : cyc) {
    EXPECT_TRUE(traverses(h, cyc, h.edges[e].m));
  }
}

TEST(HGraph, ConstructibleGraphsAreCusped) {
  gen::Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const auto h = gen::random_constructible_hgraph(rng);
    ASSERT_TRUE(validate_hgraph(h).empty());
    ASSERT_TRUE(leaf_edges_alone_in_class(h));
    ASSERT_FALSE(oracle::has_traversing_cycle(h));
    ASSERT_TRUE(is_cusped(h));
  }
}

TEST(Sink, FindSinkOnConstructibleGraphs) {
  gen::Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    const auto h = gen::random_constructible_hgraph(rng);
    for (int i = 0; i < 8; ++i) {
      const auto d = gen::random_directions(rng, h);
      const auto r = find_sink(h, d);
      ASSERT_TRUE(check_sink_result(h, d, r));
    }
  }
}

TEST(Sink, WrongLengthRejected) {
  EXPECT_THROW(find_sink(subdivided_star(2), EdgeDirections(1)), InvalidInput);
}

TEST(Construction, StarAndPathTraces) {
  const auto sys = two_pairs(true);
  const auto a = sys.find("a"), b = sys.find("b"), as = sys.find("a*");
  const auto f = explicit_family({SepSet(4, {a, b})});
  const auto star = from_star_tree(sys, {a, b});
  EXPECT_TRUE(verify_trace(star, sys, f));
  EXPECT_FALSE(verify_trace(star, sys, explicit_family({})));
  // a <= b, so {a*, b} point away: (a*)* = a <= b.
  const auto path = inconsistency_path(sys, b, as);
  EXPECT_TRUE(verify_trace(path, sys, f));
  EXPECT_NO_THROW(inconsistency_path(sys, as, b));  // the same pair, read the other way
  EXPECT_THROW(inconsistency_path(sys, a, b), PreconditionError);
}

TEST(Construction, AmalgamationMergesMatchingLeaves) {
  // {a, b} and {a*, b} forbidden: every orientation containing b is caught,
  // which the two stars glued along a witness.
  const auto sys = two_pairs(false);
  const auto a = sys.find("a"), b = sys.find("b"), as = sys.find("a*"), bs = sys.find("b*");
  const auto f = explicit_family({SepSet(4, {a, b}), SepSet(4, {as, b})});
  const auto g1 = from_star_tree(sys, {as, b});
  const auto g2 = from_star_tree(sys, {a, b});
  const auto g = amalgamate(g1, g2, a, sys, &f);
  EXPECT_TRUE(validate_hgraph(g.h).empty());
  EXPECT_TRUE(is_cusped(g.h));
  EXPECT_TRUE(verify_trace(g, sys, f));
  // The remaining leaves both carry b.
  EXPECT_TRUE(validate_sgraph(g, sys, SepSet(4, {b}), f).empty());
  EXPECT_FALSE(validate_sgraph(g, sys, SepSet(4, {bs}), f).empty());
  EXPECT_THROW(amalgamate(g1, g2, b, sys, &f), PreconditionError);
}

TEST(Construction, TraceTamperingDetected) {
  const auto sys = two_pairs(false);
  const auto a = sys.find("a"), b = sys.find("b"), as = sys.find("a*");
  const auto f = explicit_family({SepSet(4, {a, b}), SepSet(4, {as, b})});
  auto g = amalgamate(from_star_tree(sys, {as, b}), from_star_tree(sys, {a, b}), a, sys, &f);
  auto bad = g;
  bad.trace->steps.back().left = bad.trace->steps.back().right;
  EXPECT_FALSE(verify_trace(bad, sys, f));
  bad = g;
  bad.to_m[0] = sys.inverse(bad.to_m[0]);
  EXPECT_FALSE(verify_trace(bad, sys, f));
  bad = g;
  bad.trace.reset();
  EXPECT_FALSE(verify_trace(bad, sys, f));
}

TEST(Construction, InducedOrientationNeedsFullOrientation) {
  const auto sys = two_pairs(false);
  const auto g = from_star_tree(sys, {sys.find("a"), sys.find("b")});
  EXPECT_THROW(induced_orientation(g, sys, SepSet(4, {sys.find("a")})), PreconditionError);
  const auto d = induced_orientation(g, sys, SepSet(4, {sys.find("a"), sys.find("b")}));
  // Every star edge is labelled so that the centre receives inward edges.
  EXPECT_TRUE(check_sink_result(g.h, d, find_sink(g.h, d)));
}
