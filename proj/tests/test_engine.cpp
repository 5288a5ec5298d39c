#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sepdual/fixtures.hpp"
#include "sepdual/generators.hpp"
#include "sepdual/sepdual.hpp"

using namespace sepdual;

TEST(Decide, Ex41HasWitness) {
  const auto p = fixtures::ex41();
  const auto v = decide(p.sys, p.s_minus, p.f);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(verify_verdict(v, p.sys, p.s_minus, p.f));
  EXPECT_FALSE(brute_force_decide(p.sys, p.s_minus, p.f).has_value());
  EXPECT_EQ(enumerate_orientations(p.sys, p.s_minus).size(), 4u);
}

TEST(Decide, Ex41WeakDualityHasUniqueOrientation) {
  const auto p = fixtures::ex41();
  const auto all = brute_force_all(p.sys, p.s_minus, p.f, false);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_FALSE(is_consistent(p.sys, all[0]));
  const auto o = search_orientation(p.sys, p.s_minus, p.f, false);
  ASSERT_TRUE(o.has_value());
  EXPECT_EQ(o->ids(), all[0].ids());
}

TEST(Decide, Ex42HasWitnessAndNoTreeWitness) {
  const auto p = fixtures::ex42();
  EXPECT_TRUE(brute_force_all(p.sys, p.s_minus, p.f).empty());
  EXPECT_EQ(enumerate_orientations(p.sys, p.s_minus).size(), 32u);
  const auto v = decide(p.sys, p.s_minus, p.f);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(validate_sgraph(*v.witness, p.sys, p.s_minus, p.f).empty());
  EXPECT_TRUE(is_cusped(v.witness->h));
  EXPECT_TRUE(verify_trace(*v.witness, p.sys, p.f));
  EXPECT_FALSE(tree_witness_search(p.sys, p.s_minus, p.f, {12, true}).has_value());
  EXPECT_FALSE(tree_witness_search(p.sys, p.s_minus, p.f, {12, false}).has_value());
}

TEST(Decide, Ex41TreeWitnessOnlyWhenHubsMayWitnessInconsistency) {
  const auto p = fixtures::ex41();
  EXPECT_FALSE(tree_witness_search(p.sys, p.s_minus, p.f, {12, false}).has_value());
  const auto t = tree_witness_search(p.sys, p.s_minus, p.f, {12, true});
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(validate_sgraph(*t, p.sys, p.s_minus, p.f).empty());
  EXPECT_TRUE(is_cusped(t->h));
}

TEST(Decide, TreeWitnessFoundForStar) {
  const auto sys = SeparationSystem::abstract({{"a", "a*"}, {"a*", "a"}, {"b", "b*"}, {"b*", "b"}}, {});
  const auto a = sys.find("a"), b = sys.find("b");
  const auto f = explicit_family({SepSet(4, {a, b}), SepSet(4, {sys.inverse(a)}), SepSet(4, {sys.inverse(b)})});
  const auto t = tree_witness_search(sys, sys.empty_set(), f, {12, false});
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(validate_sgraph(*t, sys, sys.empty_set(), f).empty());
}

TEST(Decide, AgreesWithOracleOnRandomAbstractInstances) {
  gen::Rng rng(41);
  int w = 0, o = 0;
  for (int t = 0; t < 400; ++t) {
    const auto sys = gen::random_abstract_system(rng, gen::uniform(rng, 1, 6));
    const auto f = gen::random_family(rng, sys, 7, 3);
    const auto s_minus = gen::random_partial_orientation(rng, sys, 0.2);
    const auto v = decide(sys, s_minus, f);
    ASSERT_EQ(v.orientation.has_value(), oracle::has_good_orientation(sys, s_minus, f.sets())) << "trial " << t;
    ASSERT_TRUE(verify_verdict(v, sys, s_minus, f)) << *verdict_violation(v, sys, s_minus, f);
    ++(v.orientation ? o : w);
  }
  EXPECT_GT(o, 40);
  EXPECT_GT(w, 40);
}

TEST(Decide, AgreesWithOracleOnRandomSetSystems) {
  gen::Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const auto sys = gen::random_set_system(rng, gen::uniform(rng, 2, 6), gen::uniform(rng, 1, 5));
    const auto f = gen::random_family(rng, sys, 5, 3);
    const auto v = decide(sys, sys.empty_set(), f);
    ASSERT_EQ(v.orientation.has_value(), oracle::has_good_orientation(sys, sys.empty_set(), f.sets()));
    ASSERT_TRUE(verify_verdict(v, sys, sys.empty_set(), f));
  }
}

TEST(Decide, WitnessAndGoodOrientationNeverCoexist) {
  // Soundness: on every witness, every full orientation extending S⁻ induces
  // directions with a sink, and that orientation is inconsistent or meets F.
  gen::Rng rng(43);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const auto sys = gen::random_abstract_system(rng, gen::uniform(rng, 1, 5));
    const auto f = gen::random_family(rng, sys, 7, 3);
    const auto v = decide(sys, sys.empty_set(), f);
    if (!v.witness) continue;
    for (const auto& o : enumerate_orientations(sys, sys.empty_set())) {
      const auto d = induced_orientation(*v.witness, sys, o);
      ASSERT_TRUE(check_sink_result(v.witness->h, d, find_sink(v.witness->h, d)));
      ASSERT_FALSE(oracle::consistent(sys, o) && oracle::avoids(o, f.sets()));
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Decide, RejectsBadInput) {
  const auto sys = SeparationSystem::abstract({{"a", "a*"}, {"a*", "a"}}, {});
  EXPECT_THROW(decide(sys, sys.empty_set(), explicit_family({sys.empty_set()})), InvalidInput);
  EXPECT_THROW(decide(sys, SepSet(2, {0, 1}), explicit_family({})), InvalidInput);
}

TEST(Decide, BudgetIsReported) {
  const auto p = fixtures::ex42();
  DecideOptions opt;
  opt.max_states = 2;
  EXPECT_THROW(decide(p.sys, p.s_minus, p.f, opt), BudgetExceeded);
}

TEST(Verify, DetectsBrokenVerdicts) {
  const auto p = fixtures::ex41();
  const auto v = decide(p.sys, p.s_minus, p.f);
  // wrong family
  EXPECT_FALSE(verify_verdict(v, p.sys, p.s_minus, explicit_family({})));
  // tampered labels
  auto bad = v;
  bad.witness->to_m[0] = p.sys.inverse(bad.witness->to_m[0]);
  EXPECT_FALSE(verify_verdict(bad, p.sys, p.s_minus, p.f));
  // an inconsistent orientation offered as the answer
  DualityVerdict o;
  o.orientation = brute_force_all(p.sys, p.s_minus, p.f, false).front();
  EXPECT_FALSE(verify_verdict(o, p.sys, p.s_minus, p.f));
  // both branches
  DualityVerdict both = v;
  both.orientation = o.orientation;
  EXPECT_FALSE(verify_verdict(both, p.sys, p.s_minus, p.f));
}
