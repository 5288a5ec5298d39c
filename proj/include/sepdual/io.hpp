#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sepdual/engine.hpp"
#include "sepdual/error.hpp"
#include "sepdual/families.hpp"
#include "sepdual/graphsep.hpp"
#include "sepdual/sepsys.hpp"
#include "sepdual/sgraph.hpp"

namespace sepdual::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string str(const json& j, const char* what) {
  if (!j.is_string()) throw InvalidInput(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Separation systems and sets of separations

inline json system_to_json(const SeparationSystem& sys) {
  if (sys.is_set_system()) {
    json seps = json::array();
    for (SepId r = 0; r < sys.size(); ++r) {
      json a = json::array(), b = json::array();
      sys.sides(r)->a.for_each([&](int v) { a.push_back(sys.ground_names()[v]); });
      sys.sides(r)->b.for_each([&](int v) { b.push_back(sys.ground_names()[v]); });
      seps.push_back({{"id", sys.id(r)}, {"A", a}, {"B", b}});
    }
    return {{"kind", "sets"}, {"ground", sys.ground_names()}, {"separations", seps}};
  }
  json pairs = json::array(), le = json::array();
  for (SepId r = 0; r < sys.size(); ++r)
    if (sys.inverse(r) != kNoSep && r < sys.inverse(r)) pairs.push_back({sys.id(r), sys.id(sys.inverse(r))});
  for (auto [r, s] : sys.order_pairs())
    if (r != s) le.push_back({sys.id(r), sys.id(s)});
  return {{"kind", "abstract"}, {"pairs", pairs}, {"le", le}};
}

inline SeparationSystem system_from_json(const json& j) {
  const std::string kind = detail::str(detail::field(j, "kind"), "system kind");
  if (kind == "abstract") {
    std::vector<SeparationSystem::PairSpec> members;
    for (const auto& p : detail::array(detail::field(j, "pairs"), "pairs")) {
      if (!p.is_array() || p.size() != 2) throw InvalidInput("each pair must be [id, inverse_id]");
      const auto r = detail::str(p[0], "separation id"), s = detail::str(p[1], "separation id");
      if (r == s) throw InvalidInput("separation " + r + " cannot be its own inverse");
      members.push_back({r, s});
      members.push_back({s, r});
    }
    std::vector<std::pair<std::string, std::string>> le;
    if (j.contains("le"))
      for (const auto& p : detail::array(j.at("le"), "le")) {
        if (!p.is_array() || p.size() != 2) throw InvalidInput("each order pair must be [r, s]");
        le.emplace_back(detail::str(p[0], "separation id"), detail::str(p[1], "separation id"));
      }
    auto sys = SeparationSystem::abstract(members, le);
    for (SepId r = 0; r < sys.size(); ++r)
      for (SepId t = r + 1; t < sys.size(); ++t)
        if (sys.le(r, t) && sys.le(t, r))
          throw InvalidInput("order is not antisymmetric: " + sys.id(r) + " and " + sys.id(t));
    return sys;
  }
  if (kind == "sets") {
    std::vector<std::string> ground;
    for (const auto& v : detail::array(detail::field(j, "ground"), "ground")) ground.push_back(detail::str(v, "element"));
    auto index = [&](const json& name) {
      const auto n = detail::str(name, "element");
      const auto it = std::find(ground.begin(), ground.end(), n);
      if (it == ground.end()) throw InvalidInput("unknown ground element '" + n + "'");
      return static_cast<int>(it - ground.begin());
    };
    std::vector<SeparationSystem::SidesSpec> seps;
    for (const auto& s : detail::array(detail::field(j, "separations"), "separations")) {
      SetSides sides;
      for (const auto& v : detail::array(detail::field(s, "A"), "A")) sides.a.insert(index(v));
      for (const auto& v : detail::array(detail::field(s, "B"), "B")) sides.b.insert(index(v));
      seps.push_back({detail::str(detail::field(s, "id"), "separation id"), sides});
    }
    return SeparationSystem::from_sides(ground, seps);
  }
  throw InvalidInput("unknown system kind '" + kind + "'");
}

inline json sepset_to_json(const SeparationSystem& sys, const SepSet& s) {
  json out = json::array();
  s.for_each([&](SepId r) { out.push_back(sys.id(r)); });
  return out;
}

inline SepSet sepset_from_json(const SeparationSystem& sys, const json& j) {
  SepSet out(sys.size());
  for (const auto& id : detail::array(j, "separation list")) out.insert(sys.find(detail::str(id, "separation id")));
  return out;
}

inline json family_to_json(const SeparationSystem& sys, const ForbiddenFamily& f) {
  json sets = json::array();
  for (const auto& s : f.sets()) sets.push_back(sepset_to_json(sys, s));
  return {{"kind", "explicit"}, {"sets", sets}};
}

// ---------------------------------------------------------------------------
// Graphs

inline json graph_to_json(const SimpleGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.name(u), g.name(v)});
  return {{"kind", "graph"}, {"vertices", g.names()}, {"edges", edges}};
}

inline SimpleGraph graph_from_json(const json& j) {
  std::vector<std::string> names;
  for (const auto& v : detail::array(detail::field(j, "vertices"), "vertices")) names.push_back(detail::str(v, "vertex"));
  SimpleGraph g(names);
  for (const auto& e : detail::array(detail::field(j, "edges"), "edges")) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("each edge must be [u, v]");
    g.add_edge(detail::str(e[0], "vertex"), detail::str(e[1], "vertex"));
  }
  return g;
}

// graph6, for graphs with fewer than 63 vertices.
inline SimpleGraph parse_graph6(std::string_view s) {
  if (!s.empty() && s.back() == '\n') s.remove_suffix(1);
  if (s.starts_with(">>graph6<<")) s.remove_prefix(10);
  if (s.empty() || s[0] < 63 || s[0] > 125) throw InvalidInput("graph6: bad header");
  const int n = s[0] - 63;
  if (n >= 63) throw InvalidInput("graph6: graphs with 63 or more vertices are not supported");
  SimpleGraph g(n);
  std::size_t bit = 0;
  const std::size_t need = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - (n > 0 ? 1 : 0)) / 2;
  if (s.size() != 1 + (need + 5) / 6) throw InvalidInput("graph6: wrong length");
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u, ++bit) {
      const int c = s[1 + bit / 6] - 63;
      if (c < 0 || c > 63) throw InvalidInput("graph6: bad character");
      if ((c >> (5 - bit % 6)) & 1) g.add_edge(u, v);
    }
  return g;
}

inline std::string to_graph6(const SimpleGraph& g) {
  const int n = g.size();
  if (n >= 63) throw InvalidInput("graph6: graphs with 63 or more vertices are not supported");
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0, filled = 0;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
      if (++filled == 6) {
        out += static_cast<char>(63 + acc);
        acc = filled = 0;
      }
    }
  if (filled > 0) out += static_cast<char>(63 + (acc << (6 - filled)));
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses. Vertices are named n<i> / m<i> by index; a repeated edge between
// the same two vertices is told apart by a #k suffix on the neighbour token.

inline std::string vertex_name(const HGraph& h, Vertex v) { return (h.part[v] == Part::N ? "n" : "m") + std::to_string(v); }

namespace detail {

// Occurrence index of each edge among the edges joining the same two vertices.
inline std::vector<int> parallel_rank(const HGraph& h) {
  std::map<std::pair<Vertex, Vertex>, int> seen;
  std::vector<int> out;
  for (const auto& e : h.edges) out.push_back(seen[{e.n, e.m}]++);
  return out;
}

inline std::string suffix(int rank) { return rank == 0 ? "" : "#" + std::to_string(rank); }

}  // namespace detail

inline json hgraph_to_json(const HGraph& h) {
  json n = json::array(), m = json::array(), edges = json::array(), split = json::object();
  for (Vertex v = 0; v < h.vertex_count(); ++v) (h.part[v] == Part::N ? n : m).push_back(vertex_name(h, v));
  const auto rank = detail::parallel_rank(h);
  for (Vertex v = 0; v < h.vertex_count(); ++v)
    if (h.part[v] == Part::M) split[vertex_name(h, v)] = {{"E1", json::array()}, {"E2", json::array()}};
  for (EdgeIndex e = 0; e < h.edges.size(); ++e) {
    const auto& ed = h.edges[e];
    edges.push_back({vertex_name(h, ed.n), vertex_name(h, ed.m)});
    split[vertex_name(h, ed.m)][ed.cls == 0 ? "E1" : "E2"].push_back(vertex_name(h, ed.n) + detail::suffix(rank[e]));
  }
  return {{"N", n}, {"M", m}, {"edges", edges}, {"split", split}};
}

namespace detail {

// Vertex names from an H-graph document, listed by vertex index. Canonical
// names n<i>/m<i> fix the index; otherwise N vertices come first, then M.
struct NamedParts {
  std::vector<std::string> names;
  std::vector<Part> parts;
};

inline NamedParts named_parts(const json& j) {
  std::vector<std::pair<std::string, Part>> listed;
  for (const auto& v : array(field(j, "N"), "N")) listed.emplace_back(str(v, "vertex"), Part::N);
  for (const auto& v : array(field(j, "M"), "M")) listed.emplace_back(str(v, "vertex"), Part::M);
  std::vector<int> num;
  for (const auto& [name, part] : listed) {
    const char want = part == Part::N ? 'n' : 'm';
    if (name.size() < 2 || name.size() > 7 || name[0] != want ||
        !std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c) != 0; }))
      break;
    num.push_back(std::stoi(name.substr(1)));
  }
  bool canonical = num.size() == listed.size();
  if (canonical) {
    std::vector<int> sorted = num;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != static_cast<int>(i)) canonical = false;
  }
  NamedParts out;
  out.names.resize(listed.size());
  out.parts.resize(listed.size());
  for (std::size_t i = 0; i < listed.size(); ++i) {
    const auto v = canonical ? static_cast<std::size_t>(num[i]) : i;
    out.names[v] = listed[i].first;
    out.parts[v] = listed[i].second;
  }
  return out;
}

}  // namespace detail

inline HGraph hgraph_from_json(const json& j) {
  const auto np = detail::named_parts(j);
  HGraph h;
  h.part = np.parts;
  std::map<std::string, Vertex> index;
  for (Vertex v = 0; v < np.names.size(); ++v)
    if (!index.emplace(np.names[v], v).second) throw InvalidInput("duplicate vertex '" + np.names[v] + "'");
  auto lookup = [&](const json& name) {
    const auto n = detail::str(name, "vertex");
    const auto it = index.find(n);
    if (it == index.end()) throw InvalidInput("unknown vertex '" + n + "'");
    return it->second;
  };
  const json& split = detail::field(j, "split");
  std::map<std::pair<Vertex, Vertex>, int> seen;
  for (const auto& e : detail::array(detail::field(j, "edges"), "edges")) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("each edge must be [n, m]");
    Vertex a = lookup(e[0]), b = lookup(e[1]);
    if (h.part[a] == Part::M) std::swap(a, b);
    if (h.part[a] != Part::N || h.part[b] != Part::M) throw InvalidInput("edge does not join N to M");
    const std::string tok = np.names[a] + detail::suffix(seen[{a, b}]++);
    const std::string& hub = np.names[b];
    if (!split.contains(hub)) throw InvalidInput("split is missing hub '" + hub + "'");
    const json& cls = split.at(hub);
    auto has = [&](const char* key) {
      if (!cls.contains(key)) return false;
      const auto& list = detail::array(cls.at(key), key);
      return std::find(list.begin(), list.end(), json(tok)) != list.end();
    };
    const bool in1 = has("E1"), in2 = has("E2");
    if (in1 == in2) throw InvalidInput("edge " + tok + "-" + hub + " must be in exactly one of E1, E2");
    h.add_edge(a, b, in1 ? 0 : 1);
  }
  return h;
}

inline json trace_to_json(const SeparationSystem& sys, const Trace& t) {
  json out = json::array();
  for (const auto& st : t.steps) {
    switch (st.kind) {
      case TraceStep::Kind::star:
      case TraceStep::Kind::path2: {
        json seps = json::array();
        for (SepId r : st.seps) seps.push_back(sys.id(r));
        out.push_back({{"op", st.kind == TraceStep::Kind::star ? "star" : "path2"}, {"seps", seps}});
        break;
      }
      case TraceStep::Kind::amalgamate:
        out.push_back({{"op", "amalgamate"}, {"cd", sys.id(st.cd)}, {"left", st.left}, {"right", st.right}});
        break;
    }
  }
  return out;
}

inline Trace trace_from_json(const SeparationSystem& sys, const json& j) {
  Trace t;
  for (const auto& st : detail::array(j, "trace")) {
    const auto op = detail::str(detail::field(st, "op"), "trace op");
    TraceStep step;
    if (op == "star" || op == "path2") {
      step.kind = op == "star" ? TraceStep::Kind::star : TraceStep::Kind::path2;
      for (const auto& id : detail::array(detail::field(st, "seps"), "seps"))
        step.seps.push_back(sys.find(detail::str(id, "separation id")));
    } else if (op == "amalgamate") {
      step.kind = TraceStep::Kind::amalgamate;
      step.cd = sys.find(detail::str(detail::field(st, "cd"), "separation id"));
      const int l = detail::integer(detail::field(st, "left"), "left");
      const int r = detail::integer(detail::field(st, "right"), "right");
      if (l < 0 || r < 0) throw InvalidInput("trace operand index is negative");
      step.left = static_cast<std::uint32_t>(l);
      step.right = static_cast<std::uint32_t>(r);
    } else {
      throw InvalidInput("unknown trace op '" + op + "'");
    }
    t.steps.push_back(std::move(step));
  }
  return t;
}

inline json witness_to_json(const SeparationSystem& sys, const SGraph& g) {
  json out = hgraph_to_json(g.h);
  json alpha = json::object();
  const auto rank = detail::parallel_rank(g.h);
  for (EdgeIndex e = 0; e < g.h.edges.size(); ++e) {
    const auto n = vertex_name(g.h, g.h.edges[e].n), m = vertex_name(g.h, g.h.edges[e].m);
    const auto sfx = detail::suffix(rank[e]);
    alpha[n + "->" + m + sfx] = sys.id(g.to_m[e]);
    alpha[m + "->" + n + sfx] = sys.id(g.to_n[e]);
  }
  out["alpha"] = alpha;
  if (g.trace) out["trace"] = trace_to_json(sys, *g.trace);
  return out;
}

inline SGraph witness_from_json(const SeparationSystem& sys, const json& j) {
  SGraph g;
  g.h = hgraph_from_json(j);
  const json& alpha = detail::field(j, "alpha");
  const auto by_index = detail::named_parts(j).names;
  const auto rank = detail::parallel_rank(g.h);
  auto get = [&](const std::string& key) {
    if (!alpha.contains(key)) throw InvalidInput("alpha is not defined on " + key);
    return sys.find(detail::str(alpha.at(key), "separation id"));
  };
  for (EdgeIndex e = 0; e < g.h.edges.size(); ++e) {
    const auto& n = by_index[g.h.edges[e].n];
    const auto& m = by_index[g.h.edges[e].m];
    const auto sfx = detail::suffix(rank[e]);
    g.to_m.push_back(get(n + "->" + m + sfx));
    g.to_n.push_back(get(m + "->" + n + sfx));
  }
  if (j.contains("trace")) g.trace = trace_from_json(sys, j.at("trace"));
  return g;
}

// ---------------------------------------------------------------------------
// Verdicts

inline json verdict_to_json(const SeparationSystem& sys, const DualityVerdict& v) {
  if (v.orientation) return {{"verdict", "orientation"}, {"orientation", sepset_to_json(sys, *v.orientation)}};
  return {{"verdict", "witness"}, {"witness", witness_to_json(sys, *v.witness)}};
}

inline DualityVerdict verdict_from_json(const SeparationSystem& sys, const json& j) {
  const auto kind = detail::str(detail::field(j, "verdict"), "verdict");
  DualityVerdict v;
  if (kind == "orientation")
    v.orientation = sepset_from_json(sys, detail::field(j, "orientation"));
  else if (kind == "witness")
    v.witness = witness_from_json(sys, detail::field(j, "witness"));
  else
    throw InvalidInput("unknown verdict '" + kind + "'");
  return v;
}

// ---------------------------------------------------------------------------
// Instances

struct Instance {
  SeparationSystem sys;
  SepSet s_minus;
  ForbiddenFamily f;
  SkHandle sk;  // set when the system comes from a graph
};

inline Instance instance_from_json(const json& j) {
  Instance inst;
  const json& sj = detail::field(j, "system");
  const auto kind = detail::str(detail::field(sj, "kind"), "system kind");
  if (kind == "graph") {
    const int k = detail::integer(detail::field(j, "k"), "k");
    inst.sk = enumerate_Sk(graph_from_json(sj), k);
    inst.sys = inst.sk->sys;
  } else {
    inst.sys = system_from_json(sj);
    if (auto bad = validate_system(inst.sys); !bad.empty())
      throw InvalidInput("invalid system (" + bad.front().kind + "): " + bad.front().detail);
  }

  inst.s_minus = inst.sys.empty_set();
  if (j.contains("s_minus")) {
    const json& sm = j.at("s_minus");
    if (sm.is_array()) {
      inst.s_minus = sepset_from_json(inst.sys, sm);
    } else {
      if (detail::str(detail::field(sm, "kind"), "s_minus kind") != "small") throw InvalidInput("unknown s_minus kind");
      if (!inst.sys.is_set_system()) throw InvalidInput("s_minus 'small' needs a set system");
      const int k = detail::integer(detail::field(sm, "k"), "k");
      for (SepId r = 0; r < inst.sys.size(); ++r)
        if (inst.sys.sides(r)->b == inst.sys.ground() && inst.sys.sides(r)->a.size() < k) inst.s_minus.insert(r);
    }
    require_antisymmetric(inst.sys, inst.s_minus);
  }

  const json& fj = detail::field(j, "family");
  const auto fkind = detail::str(detail::field(fj, "kind"), "family kind");
  if (fkind == "explicit") {
    std::vector<SepSet> sets;
    for (const auto& s : detail::array(detail::field(fj, "sets"), "sets")) sets.push_back(sepset_from_json(inst.sys, s));
    inst.f = explicit_family(std::move(sets));
  } else if (fkind == "blocks" || fkind == "profiles" || fkind == "uncross") {
    if (!inst.sk) throw InvalidInput("family '" + fkind + "' needs a graph system");
    if (fj.contains("k") && detail::integer(fj.at("k"), "k") != inst.sk->k)
      throw InvalidInput("family k differs from the system's k");
    inst.f = fkind == "blocks" ? bk_family(inst.sk) : fkind == "profiles" ? pk_family(inst.sk) : uncross_family(inst.sk);
  } else {
    throw InvalidInput("unknown family kind '" + fkind + "'");
  }
  return inst;
}

}  // namespace sepdual::io
