#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "sepdual/generators.hpp"
#include "sepdual/sepdual.hpp"

using namespace sepdual;

namespace {

SeparationSystem chain() {
  // a <= b <= c, closed under reversal by the loader.
  return SeparationSystem::abstract({{"a", "a*"}, {"a*", "a"}, {"b", "b*"}, {"b*", "b"}, {"c", "c*"}, {"c*", "c"}},
                                    {{"a", "b"}, {"b", "c"}});
}

}  // namespace

TEST(SeparationSystem, AbstractClosure) {
  const auto sys = chain();
  EXPECT_EQ(sys.size(), 6u);
  EXPECT_TRUE(le(sys, sys.find("a"), sys.find("c")));
  EXPECT_TRUE(le(sys, sys.find("c*"), sys.find("a*")));
  EXPECT_FALSE(le(sys, sys.find("c"), sys.find("a")));
  EXPECT_TRUE(validate_system(sys).empty());
  EXPECT_THROW(sys.find("zzz"), InvalidInput);
}

TEST(SeparationSystem, DuplicateIdRejected) {
  EXPECT_THROW(SeparationSystem::abstract({{"a", "b"}, {"b", "a"}, {"a", "b"}}, {}), InvalidInput);
}

TEST(SeparationSystem, DanglingInverseReported) {
  const auto sys = SeparationSystem::abstract({{"a", "b"}}, {});
  const auto bad = validate_system(sys);
  ASSERT_FALSE(bad.empty());
  EXPECT_EQ(bad.front().kind, "symmetry");
}

TEST(SeparationSystem, SetSystemOrderFromSides) {
  // Ground {0,1,2}: ({0},{0,1,2}) <= ({0,1},{1,2}).
  SetSides small{VertexSet::single(0), VertexSet::full(3)};
  SetSides mid{VertexSet::single(0) | VertexSet::single(1), VertexSet::single(1) | VertexSet::single(2)};
  const auto sys = SeparationSystem::from_sides({"x", "y", "z"}, {{"s", small}, {"m", mid}});
  EXPECT_EQ(sys.size(), 4u);
  EXPECT_TRUE(le(sys, sys.find("s"), sys.find("m")));
  EXPECT_TRUE(is_small(sys, sys.find("s")));
  EXPECT_FALSE(is_small(sys, sys.find("s*")));
  EXPECT_TRUE(is_nested(sys, sys.find("s"), sys.find("m*")));
  EXPECT_TRUE(validate_system(sys).empty());
}

TEST(Consistency, CoSmallSingletonIsInconsistent) {
  SetSides small{VertexSet::single(0), VertexSet::full(3)};
  const auto sys = SeparationSystem::from_sides({"x", "y", "z"}, {{"s", small}});
  EXPECT_TRUE(is_consistent(sys, SepSet(sys.size(), {sys.find("s")})));
  EXPECT_FALSE(is_consistent(sys, SepSet(sys.size(), {sys.find("s*")})));
}

TEST(Consistency, PointingAwayIsInconsistent) {
  const auto sys = chain();
  // a < b: {a*, b} point away from each other.
  EXPECT_FALSE(is_consistent(sys, SepSet(sys.size(), {sys.find("a*"), sys.find("b")})));
  EXPECT_TRUE(is_consistent(sys, SepSet(sys.size(), {sys.find("a"), sys.find("b")})));
  // a star: a <= b*? no, but {a, b*} is a chain pointing the same way.
  EXPECT_TRUE(is_consistent(sys, SepSet(sys.size(), {sys.find("a"), sys.find("b*")})) ==
              oracle::consistent(sys, SepSet(sys.size(), {sys.find("a"), sys.find("b*")})));
}

TEST(Consistency, NonAntisymmetricRejected) {
  const auto sys = chain();
  EXPECT_THROW(is_consistent(sys, SepSet(sys.size(), {sys.find("a"), sys.find("a*")})), InvalidInput);
}

TEST(Consistency, MatchesOracleOnRandomSystems) {
  gen::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const auto sys = gen::random_abstract_system(rng, gen::uniform(rng, 1, 5), 0.2);
    for (const auto& o : enumerate_orientations(sys, sys.empty_set()))
      ASSERT_EQ(is_consistent(sys, o), oracle::consistent(sys, o));
  }
}

TEST(Consistency, SetSystemsMatchOracle) {
  gen::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const auto sys = gen::random_set_system(rng, gen::uniform(rng, 2, 6), gen::uniform(rng, 1, 5));
    ASSERT_TRUE(validate_system(sys).empty());
    for (const auto& o : enumerate_orientations(sys, sys.empty_set()))
      ASSERT_EQ(is_consistent(sys, o), oracle::consistent(sys, o));
  }
}

TEST(Orientations, CountAndExtension) {
  gen::Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const auto sys = gen::random_abstract_system(rng, gen::uniform(rng, 1, 6));
    const auto base = gen::random_partial_orientation(rng, sys, 0.4);
    const auto all = enumerate_orientations(sys, base);
    const auto m = free_pairs(sys, base).size();
    ASSERT_EQ(all.size(), std::size_t{1} << m);
    std::set<std::vector<SepId>> distinct;
    for (const auto& o : all) {
      ASSERT_TRUE(base.subset_of(o));
      ASSERT_TRUE(is_full(sys, o));
      ASSERT_TRUE(is_antisymmetric(sys, o));
      distinct.insert(o.ids());
    }
    ASSERT_EQ(distinct.size(), all.size());
  }
}

TEST(Orientations, NonAntisymmetricBaseRejected) {
  const auto sys = chain();
  EXPECT_THROW(enumerate_orientations(sys, SepSet(sys.size(), {sys.find("b"), sys.find("b*")})), InvalidInput);
}
