#include <gtest/gtest.h>

#include "sepdual/cli.hpp"
#include "sepdual/fixtures.hpp"
#include "sepdual/generators.hpp"
#include "sepdual/sepdual.hpp"

using namespace sepdual;
using io::json;

TEST(Io, SystemRoundTrip) {
  for (const auto& p : {fixtures::ex41(), fixtures::ex42()}) {
    const auto doc = io::system_to_json(p.sys);
    const auto back = io::system_from_json(doc);
    EXPECT_EQ(io::system_to_json(back), doc);
    EXPECT_EQ(back.size(), p.sys.size());
  }
}

TEST(Io, RejectsBadSystems) {
  EXPECT_THROW(io::system_from_json({{"kind", "nope"}}), InvalidInput);
  EXPECT_THROW(io::system_from_json({{"kind", "abstract"}, {"pairs", {{"a", "a"}}}}), InvalidInput);
  // a <= b <= a after closure
  EXPECT_THROW(io::system_from_json(
                   {{"kind", "abstract"}, {"pairs", {{"a", "a*"}, {"b", "b*"}}}, {"le", {{"a", "b"}, {"b", "a"}}}}),
               InvalidInput);
  EXPECT_THROW(io::system_from_json({{"kind", "abstract"}, {"pairs", {{"a", "a*"}}}, {"le", {{"a", "q"}}}}),
               InvalidInput);
}

TEST(Io, WitnessRoundTrip) {
  gen::Rng rng(61);
  int witnesses = 0;
  for (int t = 0; t < 200; ++t) {
    const auto sys = gen::random_abstract_system(rng, gen::uniform(rng, 1, 5));
    const auto f = gen::random_family(rng, sys, 6, 3);
    const auto v = decide(sys, sys.empty_set(), f);
    const auto doc = io::verdict_to_json(sys, v);
    const auto back = io::verdict_from_json(sys, doc);
    ASSERT_EQ(io::verdict_to_json(sys, back), doc);
    if (v.witness) {
      ASSERT_TRUE(*back.witness == *v.witness);
      ++witnesses;
    }
  }
  EXPECT_GT(witnesses, 20);
}

TEST(Io, ParallelEdgesSurviveRoundTrip) {
  HGraph h;
  const Vertex a = h.add_vertex(Part::N), b = h.add_vertex(Part::N), m = h.add_vertex(Part::M);
  h.add_edge(a, m, 0);
  h.add_edge(a, m, 1);
  h.add_edge(b, m, 0);
  const auto doc = io::hgraph_to_json(h);
  EXPECT_TRUE(doc["split"]["m2"]["E2"].get<std::vector<std::string>>() == std::vector<std::string>{"n0#1"});
  EXPECT_TRUE(io::hgraph_from_json(doc) == h);
}

TEST(Io, HGraphNeedsCompleteSplit) {
  auto doc = io::hgraph_to_json(fixtures::fig6());
  doc["split"]["m6"]["E1"] = json::array();
  EXPECT_THROW(io::hgraph_from_json(doc), InvalidInput);
}

TEST(Io, Graph6) {
  EXPECT_EQ(io::to_graph6(SimpleGraph::complete(3)), "Bw");
  EXPECT_EQ(io::to_graph6(SimpleGraph::path(2)), "A_");
  const auto g = io::parse_graph6(">>graph6<<Bw\n");
  EXPECT_EQ(g.edges().size(), 3u);
  gen::Rng rng(62);
  for (int t = 0; t < 50; ++t) {
    const auto r = gen::random_graph(rng, gen::uniform(rng, 1, 20), 0.3);
    ASSERT_EQ(io::parse_graph6(io::to_graph6(r)).edges(), r.edges());
  }
  EXPECT_THROW(io::parse_graph6("Bww"), InvalidInput);
  EXPECT_THROW(io::parse_graph6(""), InvalidInput);
}

TEST(Io, GraphInstance) {
  const auto doc = cli::fixture("exjc");
  const auto inst = io::instance_from_json(doc);
  ASSERT_TRUE(inst.sk != nullptr);
  EXPECT_EQ(inst.s_minus.ids(), sk_minus(*inst.sk).ids());
  auto bad = doc;
  bad["family"]["k"] = 4;
  EXPECT_THROW(io::instance_from_json(bad), InvalidInput);
}

TEST(Cli, DecideExitCodes) {
  EXPECT_EQ(cli::run_decide(cli::fixture("ex41")).code, cli::exit_code::witness);
  EXPECT_EQ(cli::run_decide(cli::fixture("ex42")).code, cli::exit_code::witness);
  const auto weak = cli::run_decide(cli::fixture("ex41"), {true});
  EXPECT_EQ(weak.code, cli::exit_code::ok);
  EXPECT_EQ(weak.doc["verdict"], "orientation");
  EXPECT_EQ(cli::run_decide(cli::fixture("exjc")).code, cli::exit_code::ok);
  EXPECT_EQ(cli::run_decide(json{{"system", 1}}).code, cli::exit_code::invalid_input);
  cli::DecideFlags tight;
  tight.max_states = 2;
  EXPECT_EQ(cli::run_decide(cli::fixture("ex42"), tight).code, cli::exit_code::budget);
}

TEST(Cli, EmittedVerdictsVerify) {
  for (const char* name : {"ex41", "ex42", "exjc"}) {
    const auto inst = cli::fixture(name);
    const auto r = cli::run_decide(inst);
    EXPECT_EQ(cli::run_verify(r.doc, inst).code, cli::exit_code::ok) << name;
    if (r.doc.contains("witness")) {
      EXPECT_EQ(cli::run_verify(r.doc["witness"], inst).code, cli::exit_code::ok);
    }
  }
}

TEST(Cli, VerifyRejectsCorruptedWitness) {
  const auto inst = cli::fixture("ex41");
  auto doc = cli::run_decide(inst).doc;
  auto corrupted = doc;
  auto& alpha = corrupted["witness"]["alpha"];
  const std::string key = alpha.begin().key();
  const std::string val = alpha.begin().value();
  const std::string other = val == "A1B1" ? "B1A1" : "A1B1";
  alpha[key] = other;
  const auto r = cli::run_verify(corrupted, inst);
  EXPECT_EQ(r.code, cli::exit_code::verify_failed);
  EXPECT_TRUE(r.doc.contains("violation"));
  auto wrong_f = inst;
  wrong_f["family"]["sets"] = json::array({json::array({"A1B1", "Bp2Ap2"})});
  EXPECT_EQ(cli::run_verify(doc, wrong_f).code, cli::exit_code::verify_failed);
}

TEST(Cli, BlocksAndProfiles) {
  const auto g = io::graph_to_json(fixtures::exjc_graph());
  const auto b5 = cli::run_blocks(g, 5);
  EXPECT_EQ(b5.code, 0);
  EXPECT_EQ(b5.doc["count"], 4);
  EXPECT_EQ(cli::run_blocks(g, 6).doc["count"], 0);
  EXPECT_EQ(cli::run_profiles(g, 6).doc["exists"], false);
  EXPECT_EQ(cli::run_profiles(g, 5).doc["exists"], true);
  const auto k5 = cli::run_blocks(io::graph_to_json(SimpleGraph::complete(5)), 5);
  ASSERT_EQ(k5.doc["count"], 1);
  EXPECT_EQ(k5.doc["blocks"][0].size(), 5u);
  EXPECT_EQ(cli::run_blocks(g, 0).code, cli::exit_code::invalid_input);
}

TEST(Cli, EnumerateFixturesSelftest) {
  const auto e = cli::run_enumerate(cli::fixture("ex42"), true);
  EXPECT_EQ(e.doc["count"], 10);
  EXPECT_TRUE(e.doc["orientations"].empty());
  EXPECT_EQ(cli::run_fixtures(std::nullopt).doc["fixtures"].size(), 4u);
  EXPECT_EQ(cli::run_fixtures("nope").code, cli::exit_code::invalid_input);
  const auto st = cli::run_selftest(5, 100);
  EXPECT_EQ(st.code, 0);
  EXPECT_EQ(st.doc["ok"], true);
}
