#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sepdual/engine.hpp"
#include "sepdual/error.hpp"
#include "sepdual/fixtures.hpp"
#include "sepdual/generators.hpp"
#include "sepdual/graphsep.hpp"
#include "sepdual/io.hpp"

// Subcommand handlers. Each returns an exit code and a JSON document; the
// executable in tools/ only parses arguments and moves documents in and out.
namespace sepdual::cli {

using json = nlohmann::json;

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int invalid_input = 2;
inline constexpr int budget = 3;
inline constexpr int witness = 10;
}  // namespace exit_code

struct Result {
  int code = exit_code::ok;
  json doc;
};

// Maps library exceptions onto exit codes.
inline Result guarded(const std::function<Result()>& fn) {
  try {
    return fn();
  } catch (const BudgetExceeded& e) {
    return {exit_code::budget, {{"error", "budget"}, {"message", e.what()}}};
  } catch (const InvalidInput& e) {
    return {exit_code::invalid_input, {{"error", "invalid-input"}, {"message", e.what()}}};
  } catch (const PreconditionError& e) {
    return {exit_code::invalid_input, {{"error", "invalid-input"}, {"message", e.what()}}};
  } catch (const json::exception& e) {
    return {exit_code::invalid_input, {{"error", "invalid-input"}, {"message", e.what()}}};
  } catch (const Error& e) {
    return {exit_code::verify_failed, {{"error", "internal"}, {"message", e.what()}}};
  }
}

struct DecideFlags {
  bool ignore_consistency = false;
  std::size_t max_states = std::size_t{1} << 22;
};

inline Result run_decide(const json& instance, const DecideFlags& flags = {}) {
  return guarded([&] {
    const auto inst = io::instance_from_json(instance);
    if (flags.ignore_consistency) {
      // Weak duality: only look for an F-avoiding orientation.
      require_engine_input(inst.sys, inst.s_minus, inst.f);
      auto o = search_orientation(inst.sys, inst.s_minus, inst.f, false, flags.max_states);
      if (o)
        return Result{exit_code::ok,
                      {{"verdict", "orientation"}, {"mode", "weak"}, {"orientation", io::sepset_to_json(inst.sys, *o)}}};
      return Result{exit_code::witness, {{"verdict", "none"}, {"mode", "weak"}}};
    }
    DecideOptions opt;
    opt.max_states = flags.max_states;
    const auto v = decide(inst.sys, inst.s_minus, inst.f, opt);
    return Result{v.orientation ? exit_code::ok : exit_code::witness, io::verdict_to_json(inst.sys, v)};
  });
}

inline json names_of(const SimpleGraph& g, VertexSet s) {
  json out = json::array();
  s.for_each([&](int v) { out.push_back(g.name(v)); });
  return out;
}

inline Result run_blocks(const json& graph, int k) {
  return guarded([&] {
    if (k < 1) throw InvalidInput("k must be positive");
    const auto g = io::graph_from_json(graph);
    json list = json::array();
    for (VertexSet b : blocks(g, k)) list.push_back(names_of(g, b));
    return Result{exit_code::ok, {{"k", k}, {"count", list.size()}, {"blocks", list}, {"block_number", block_number(g)}}};
  });
}

inline Result run_profiles(const json& graph, int k) {
  return guarded([&] {
    if (k < 1) throw InvalidInput("k must be positive");
    const auto sk = enumerate_Sk(io::graph_from_json(graph), k);
    const auto p = has_profile(*sk);
    json doc = {{"k", k}, {"exists", p.has_value()}};
    doc["profile"] = p ? io::sepset_to_json(sk->sys, *p) : json(nullptr);
    return Result{exit_code::ok, doc};
  });
}

// Accepts a verdict document, or a bare witness.
inline Result run_verify(const json& document, const json& instance) {
  return guarded([&] {
    const auto inst = io::instance_from_json(instance);
    DualityVerdict v;
    if (document.is_object() && document.contains("verdict"))
      v = io::verdict_from_json(inst.sys, document);
    else
      v.witness = io::witness_from_json(inst.sys, document);
    if (auto bad = verdict_violation(v, inst.sys, inst.s_minus, inst.f))
      return Result{exit_code::verify_failed, {{"ok", false}, {"violation", *bad}}};
    return Result{exit_code::ok, {{"ok", true}}};
  });
}

// The members of the instance's system; with `orientations`, also every
// consistent F-avoiding orientation extending S⁻.
inline Result run_enumerate(const json& instance, bool orientations, std::size_t limit = 4096) {
  return guarded([&] {
    const auto inst = io::instance_from_json(instance);
    json seps = json::array();
    for (SepId r = 0; r < inst.sys.size(); ++r) {
      json entry = {{"id", inst.sys.id(r)}, {"inverse", inst.sys.id(inst.sys.inverse(r))}};
      if (inst.sk) {
        entry["order"] = (inst.sys.sides(r)->a & inst.sys.sides(r)->b).size();
        entry["proper"] = inst.sk->is_proper(r);
      }
      seps.push_back(entry);
    }
    json doc = {{"count", seps.size()}, {"separations", seps}};
    if (orientations) {
      OrientationSearchOptions opt;
      opt.avoid = &inst.f;
      json list = json::array();
      for (const auto& o : OrientationSearch(inst.sys, opt).all(inst.s_minus, limit))
        list.push_back(io::sepset_to_json(inst.sys, o));
      doc["orientations"] = list;
    }
    return Result{exit_code::ok, doc};
  });
}

// Built-in fixtures as documents. ex41/ex42/exjc are decide instances; fig6
// is a bare H-graph.
inline json fixture(const std::string& name) {
  auto problem_doc = [](const fixtures::Problem& p) {
    return json{{"system", io::system_to_json(p.sys)},
                {"s_minus", io::sepset_to_json(p.sys, p.s_minus)},
                {"family", io::family_to_json(p.sys, p.f)}};
  };
  if (name == "ex41") return problem_doc(fixtures::ex41());
  if (name == "ex42") return problem_doc(fixtures::ex42());
  if (name == "fig6") return io::hgraph_to_json(fixtures::fig6());
  if (name == "exjc")
    return {{"system", io::graph_to_json(fixtures::exjc_graph())},
            {"k", 5},
            {"s_minus", {{"kind", "small"}, {"k", 5}}},
            {"family", {{"kind", "blocks"}}}};
  throw InvalidInput("unknown fixture '" + name + "'");
}

inline Result run_fixtures(const std::optional<std::string>& name) {
  return guarded([&] {
    if (!name) return Result{exit_code::ok, {{"fixtures", fixtures::names()}}};
    return Result{exit_code::ok, fixture(*name)};
  });
}

// Randomized dichotomy campaign: decide against the brute-force oracle.
inline Result run_selftest(std::uint64_t seed, int trials) {
  return guarded([&] {
    gen::Rng rng(seed);
    int orientations = 0, witnesses = 0;
    for (int t = 0; t < trials; ++t) {
      const auto sys = gen::random_abstract_system(rng, gen::uniform(rng, 1, 6));
      const auto f = gen::random_family(rng, sys, 6, 3);
      SepSet s_minus = gen::random_partial_orientation(rng, sys, 0.2);
      const auto fail = [&](const std::string& why) {
        return Result{exit_code::verify_failed,
                      {{"ok", false}, {"trial", t}, {"seed", seed}, {"message", why},
                       {"instance", {{"system", io::system_to_json(sys)},
                                     {"s_minus", io::sepset_to_json(sys, s_minus)},
                                     {"family", io::family_to_json(sys, f)}}}}};
      };
      if (f.is_member(sys.empty_set())) continue;
      const auto v = decide(sys, s_minus, f);
      const bool oracle = brute_force_decide(sys, s_minus, f).has_value();
      if (v.orientation.has_value() != oracle) return fail("decide disagrees with brute force");
      if (!verify_verdict(v, sys, s_minus, f)) return fail("verdict does not verify");
      ++(v.orientation ? orientations : witnesses);
    }
    return Result{exit_code::ok,
                  {{"ok", true}, {"seed", seed}, {"trials", trials}, {"orientations", orientations}, {"witnesses", witnesses}}};
  });
}

}  // namespace sepdual::cli
