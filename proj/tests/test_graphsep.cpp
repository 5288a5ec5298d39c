#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "sepdual/fixtures.hpp"
#include "sepdual/generators.hpp"
#include "sepdual/sepdual.hpp"

using namespace sepdual;

namespace {

std::vector<SimpleGraph> corpus(int max_n, std::uint64_t seed) {
  std::vector<SimpleGraph> out;
  for (int n = 1; n <= max_n; ++n) {
    out.push_back(SimpleGraph::path(n));
    out.push_back(SimpleGraph::complete(n));
    if (n >= 3) out.push_back(SimpleGraph::cycle(n));
  }
  gen::Rng rng(seed);
  for (int i = 0; i < 12; ++i) out.push_back(gen::random_graph(rng, gen::uniform(rng, 3, max_n), 0.45));
  return out;
}

std::set<oracle::Sep> as_seps(const SkSystem& sk) {
  std::set<oracle::Sep> out;
  for (SepId r = 0; r < sk.sys.size(); ++r) out.insert({sk.sides(r).a, sk.sides(r).b});
  return out;
}

}  // namespace

TEST(SimpleGraph, RejectsLoopsAndParallelEdges) {
  SimpleGraph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(g.add_edge(0, 1), InvalidInput);
  EXPECT_THROW(g.add_edge(2, 2), InvalidInput);
}

TEST(Sk, MatchesBruteForce) {
  for (const auto& g : corpus(7, 51))
    for (int k = 1; k <= 4; ++k) {
      const auto sk = enumerate_Sk(g, k);
      ASSERT_EQ(as_seps(*sk), oracle::sk(g, k)) << "n=" << g.size() << " k=" << k;
      ASSERT_TRUE(validate_system(sk->sys).empty());
    }
}

TEST(Sk, SmallSeparationsFormSMinus) {
  const auto sk = enumerate_Sk(SimpleGraph::path(4), 2);
  const auto sm = sk_minus(*sk);
  EXPECT_EQ(sm.size(), 5u);  // (∅,V) and the four ({v},V)
  sm.for_each([&](SepId r) { EXPECT_TRUE(is_small(sk->sys, r)); });
}

TEST(Blocks, MatchBruteForce) {
  for (const auto& g : corpus(7, 52))
    for (int k = 1; k <= 4; ++k) ASSERT_EQ(blocks(g, k), oracle::blocks(g, k)) << "n=" << g.size() << " k=" << k;
}

TEST(Blocks, KnownGraphs) {
  for (int n = 4; n <= 7; ++n) {
    const auto c = SimpleGraph::cycle(n);
    ASSERT_EQ(blocks(c, 2).size(), 1u);
    EXPECT_EQ(blocks(c, 2)[0], c.vertices());
    EXPECT_TRUE(blocks(c, 3).empty());
  }
  const auto k5 = SimpleGraph::complete(5);
  ASSERT_EQ(blocks(k5, 5).size(), 1u);
  EXPECT_EQ(blocks(k5, 5)[0], k5.vertices());
  EXPECT_EQ(block_number(k5), 5);
}

TEST(Blocks, RoundTripThroughOrientations) {
  for (const auto& g : corpus(6, 53))
    for (int k = 1; k <= 3; ++k) {
      const auto sk = enumerate_Sk(g, k);
      for (VertexSet b : blocks(g, k)) ASSERT_EQ(block_of_orientation(*sk, orientation_of_block(*sk, b)), b);
    }
}

TEST(Blocks, OrientationOfNonBlockRejected) {
  const auto sk = enumerate_Sk(SimpleGraph::path(4), 2);
  EXPECT_THROW(orientation_of_block(*sk, VertexSet::single(0) | VertexSet::single(3)), PreconditionError);
}

TEST(Profiles, MatchBruteForceOnTinyGraphs) {
  for (const auto& g : corpus(5, 54))
    for (int k = 1; k <= 3; ++k) {
      const auto sk = enumerate_Sk(g, k);
      if (free_pairs(sk->sys, sk_minus(*sk)).size() > 14) continue;
      bool exists = false;
      for (const auto& o : oracle::orientations(sk->sys, sk_minus(*sk)))
        if (oracle::is_profile(*sk, o)) exists = true;
      const auto p = has_profile(*sk);
      ASSERT_EQ(p.has_value(), exists) << "n=" << g.size() << " k=" << k;
      if (p) {
        ASSERT_TRUE(oracle::is_profile(*sk, *p));
      }
    }
}

TEST(Corners, CornerAndNesting) {
  const auto g = SimpleGraph::path(5);  // 0-1-2-3-4
  auto vs = [](std::initializer_list<int> xs) {
    VertexSet s;
    for (int x : xs) s.insert(x);
    return s;
  };
  const SetSides r{vs({0, 1}), vs({1, 2, 3, 4})};
  const SetSides s{vs({3, 4}), vs({0, 1, 2, 3})};
  const auto c = corner(g, r, s, 3);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->a, vs({0, 1, 3, 4}));
  EXPECT_EQ(c->b, vs({1, 2, 3}));
  EXPECT_FALSE(corner(g, r, s, 2).has_value());
  EXPECT_TRUE(sides_nested(r, s));
}

TEST(Uncross, ViolatingTriplesHaveAnUncrossedVariant) {
  for (const auto& g : corpus(6, 55))
    for (int k = 2; k <= 3; ++k) {
      const auto sk = enumerate_Sk(g, k);
      OrientationSearchOptions opt;
      for (const auto& o : OrientationSearch(sk->sys, opt).all(sk_minus(*sk), 2000))
        for (const auto& t : pk_violations(*sk, o)) {
          const std::array<SetSides, 3> triple{sk->sides(t[0]), sk->sides(t[1]), sk->sides(t[2])};
          if (sides_nested(triple[0], triple[1])) continue;
          const auto u = uncross(g, triple, k);
          ASSERT_TRUE(u.first_in_sk || u.second_in_sk);
        }
    }
}

TEST(Uncross, PreconditionsChecked) {
  const auto g = SimpleGraph::path(3);
  const SetSides x{VertexSet::single(0), g.vertices()};
  EXPECT_THROW(uncross(g, {x, x, x}, 2), PreconditionError);
}

TEST(Families, BkAndPkMembership) {
  const auto g = fixtures::exjc_graph();
  const auto sk = enumerate_Sk(g, 5);
  const auto bk = bk_family(sk);
  const auto k5s = fixtures::exjc_k5s();
  // the orientation towards a K5 avoids B_5; the K5's own orientation is a profile
  for (VertexSet b : k5s) {
    const auto o = orientation_of_block(*sk, b);
    EXPECT_FALSE(bk.contains_subset(o));
    EXPECT_TRUE(pk_violations(*sk, o).empty());
    EXPECT_FALSE(pk_family(sk).contains_subset(o));
  }
}

TEST(ExampleGraph, BlocksAndProfiles) {
  const auto g = fixtures::exjc_graph();
  auto k5s = fixtures::exjc_k5s();
  std::sort(k5s.begin(), k5s.end());
  EXPECT_EQ(blocks(g, 5), k5s);
  EXPECT_TRUE(blocks(g, 6).empty());
  EXPECT_EQ(block_number(g), 5);
  EXPECT_TRUE(has_profile(*enumerate_Sk(g, 5)).has_value());
  EXPECT_FALSE(has_profile(*enumerate_Sk(g, 6)).has_value());
}
