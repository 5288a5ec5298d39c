#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sepdual/cli.hpp"

using sepdual::cli::json;
using sepdual::cli::Result;

namespace {

// "-" reads standard input.
json read_json(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw sepdual::InvalidInput("cannot open " + path);
  return json::parse(in);
}

// A graph is given as JSON ({"vertices","edges"}) or as a graph6 string.
json read_graph(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw sepdual::InvalidInput("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j = json::parse(text);
    return j.contains("system") ? j.at("system") : j;
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return sepdual::io::graph_to_json(sepdual::io::parse_graph6(text.substr(first, last - first + 1)));
}

int emit(const Result& r, const std::string& out) {
  const std::string text = r.doc.dump(2);
  if (out.empty() || out == "-") {
    (r.code == sepdual::cli::exit_code::invalid_input || r.code == sepdual::cli::exit_code::budget ? std::cerr
                                                                                                     : std::cout)
        << text << "\n";
  } else {
    std::ofstream(out) << text << "\n";
  }
  return r.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separation-system duality: orientations versus S-graph witnesses"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("-o,--output", out, "Write the result document here instead of standard output");

  auto* decide = app.add_subcommand("decide", "Find an F-avoiding orientation or a witness that none exists");
  std::string instance_path;
  sepdual::cli::DecideFlags flags;
  decide->add_option("instance", instance_path, "Instance JSON file ('-' for stdin)")->required();
  decide->add_flag("--ignore-consistency", flags.ignore_consistency,
                   "Only require F-avoidance (no witness is built in this mode)");
  decide->add_option("--max-states", flags.max_states, "Search budget");

  auto* blocks = app.add_subcommand("blocks", "List the k-blocks of a graph");
  auto* profiles = app.add_subcommand("profiles", "Find a k-profile of a graph");
  std::string graph_path;
  int k = 0;
  for (auto* sub : {blocks, profiles}) {
    sub->add_option("graph", graph_path, "Graph as JSON or graph6 ('-' for stdin)")->required();
    sub->add_option("-k", k, "Order bound")->required();
  }

  auto* verify = app.add_subcommand("verify", "Check a verdict or witness against an instance");
  std::string witness_path;
  verify->add_option("witness", witness_path, "Verdict or witness JSON")->required();
  verify->add_option("instance", instance_path, "Instance JSON")->required();

  auto* enumerate = app.add_subcommand("enumerate", "List the separations (and orientations) of an instance");
  bool with_orientations = false;
  enumerate->add_option("instance", instance_path, "Instance JSON file ('-' for stdin)")->required();
  enumerate->add_flag("--orientations", with_orientations, "Also list consistent F-avoiding orientations");

  auto* fixtures = app.add_subcommand("fixtures", "List built-in fixtures, or print one");
  std::string fixture_name;
  fixtures->add_option("name", fixture_name, "Fixture name");

  auto* selftest = app.add_subcommand("selftest", "Randomized check of decide against brute force");
  std::uint64_t seed = 1;
  int trials = 200;
  selftest->add_option("--seed", seed, "Random seed");
  selftest->add_option("--trials", trials, "Number of random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sepdual::cli::exit_code::invalid_input;
  }

  namespace cli = sepdual::cli;
  Result r;
  if (*decide) {
    r = cli::guarded([&] { return cli::run_decide(read_json(instance_path), flags); });
  } else if (*blocks) {
    r = cli::guarded([&] { return cli::run_blocks(read_graph(graph_path), k); });
  } else if (*profiles) {
    r = cli::guarded([&] { return cli::run_profiles(read_graph(graph_path), k); });
  } else if (*verify) {
    r = cli::guarded([&] { return cli::run_verify(read_json(witness_path), read_json(instance_path)); });
  } else if (*enumerate) {
    r = cli::guarded([&] { return cli::run_enumerate(read_json(instance_path), with_orientations); });
  } else if (*fixtures) {
    r = cli::run_fixtures(fixture_name.empty() ? std::nullopt : std::optional<std::string>(fixture_name));
  } else {
    r = cli::run_selftest(seed, trials);
  }
  return emit(r, out);
}
