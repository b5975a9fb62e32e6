#pragma once

// Test-only reference implementations. They deliberately avoid the library's
// state-graph and subset-scan machinery so they can serve as oracles.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "relayopt/graph.hpp"
#include "relayopt/polynomial.hpp"

namespace oracle {

using relayopt::Polynomial;
using relayopt::Rational;

inline Polynomial p() { return Polynomial::variable(); }
inline Polynomial q() { return Polynomial::one_minus_variable(); }
/// c * p^i * (1-p)^j
inline Polynomial pq(long c, unsigned i, unsigned j) {
  return Rational(c) * (p().pow(i) * q().pow(j));
}

/// Graph from a compact edge list such as {"s1","14"} over one-character labels.
inline relayopt::TwoTerminalGraph tiny_graph(const std::vector<std::string>& edges, std::string s = "s",
                                             std::string r = "r") {
  relayopt::GraphDescription d;
  std::set<std::string> vs{s, r};
  for (const auto& e : edges) {
    d.edges.emplace_back(e.substr(0, 1), e.substr(1, 1));
    vs.insert(e.substr(0, 1));
    vs.insert(e.substr(1, 1));
  }
  d.vertices.assign(vs.begin(), vs.end());
  d.s = s;
  d.r = r;
  return relayopt::TwoTerminalGraph::validate(d);
}

/// Instruction triples from compact strings such as "s14".
inline relayopt::Protocol triples(const relayopt::TwoTerminalGraph& g, const std::vector<std::string>& xs) {
  std::vector<std::array<std::string, 3>> t;
  for (const auto& x : xs) t.push_back({x.substr(0, 1), x.substr(1, 1), x.substr(2, 1)});
  return relayopt::Protocol::from_labels(g, t);
}

/// Labels of every simple s,r-path by plain recursion over label strings.
inline std::vector<std::vector<std::string>> label_paths(const relayopt::TwoTerminalGraph& g) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> path{g.label(g.s())};
  std::function<void()> go = [&] {
    if (path.back() == g.label(g.r())) {
      out.push_back(path);
      return;
    }
    for (const auto& w : g.neighbors(std::string_view(path.back()))) {
      if (std::find(path.begin(), path.end(), w) != path.end()) continue;
      path.push_back(w);
      go();
      path.pop_back();
    }
  };
  go();
  return out;
}

/// Does an A-walk survive on `alive`? Breadth-first search over (previous,
/// current) vertex pairs using std::set, independent of StateGraph.
inline bool walk_survives(const relayopt::TwoTerminalGraph& g, const relayopt::Protocol& a,
                          relayopt::EdgeMask alive) {
  using relayopt::VertexId;
  auto up = [&](VertexId x, VertexId y) {
    auto e = g.edge_id(x, y);
    return e && (alive >> *e & 1U);
  };
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<std::pair<VertexId, VertexId>> todo;
  for (VertexId y : g.neighbors(g.s()))
    if (up(g.s(), y) && seen.insert({g.s(), y}).second) todo.push_back({g.s(), y});
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    if (y == g.r()) return true;
    for (VertexId z : g.neighbors(y)) {
      if (z == x || !up(y, z) || !a.contains({x, y, z})) continue;
      if (seen.insert({y, z}).second) todo.push_back({y, z});
    }
  }
  return false;
}

/// Union-find connectivity of s and r.
inline bool connected(const relayopt::TwoTerminalGraph& g, relayopt::EdgeMask alive) {
  std::vector<relayopt::VertexId> parent(g.vertex_count());
  for (relayopt::VertexId v = 0; v < parent.size(); ++v) parent[v] = v;
  std::function<relayopt::VertexId(relayopt::VertexId)> find = [&](relayopt::VertexId v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (relayopt::EdgeId e = 0; e < g.edge_count(); ++e)
    if (alive >> e & 1U) parent[find(g.edge(e).a)] = find(g.edge(e).b);
  return find(g.s()) == find(g.r());
}

/// Exact probability at p = x that `event` holds, every edge surviving with
/// probability x, by explicit enumeration with rational weights.
template <typename Event>
Rational probability_at(const relayopt::TwoTerminalGraph& g, const Rational& x, Event event) {
  const std::size_t m = g.edge_count();
  Rational total = 0;
  for (relayopt::EdgeMask s = 0; s < (relayopt::EdgeMask{1} << m); ++s) {
    if (!event(s)) continue;
    Rational w = 1;
    for (std::size_t e = 0; e < m; ++e) w *= (s >> e & 1U) ? x : Rational(1 - x);
    total += w;
  }
  return total;
}

}  // namespace oracle
