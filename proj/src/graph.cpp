#include "relayopt/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "relayopt/error.hpp"

namespace relayopt {

TwoTerminalGraph TwoTerminalGraph::validate(const GraphDescription& raw) {
  TwoTerminalGraph g;
  std::set<std::string> declared;
  for (const auto& v : raw.vertices) {
    if (!declared.insert(v).second)
      throw Error(ErrorCode::DuplicateVertex, "vertex '" + v + "' declared twice");
  }
  if (raw.s.empty() || raw.r.empty() || !declared.count(raw.s) || !declared.count(raw.r)) {
    throw Error(ErrorCode::MissingTerminal, "terminals s and r must be declared vertices");
  }
  if (raw.s == raw.r) throw Error(ErrorCode::SameTerminals, "s and r must differ");

  g.labels_.assign(declared.begin(), declared.end());
  auto index = [&](const std::string& label) {
    return static_cast<VertexId>(
        std::lower_bound(g.labels_.begin(), g.labels_.end(), label) - g.labels_.begin());
  };

  std::set<Edge> edges;
  for (const auto& [x, y] : raw.edges) {
    if (x == y) throw Error(ErrorCode::Loop, "loop at vertex '" + x + "'");
    if (!declared.count(x) || !declared.count(y)) {
      throw Error(ErrorCode::DanglingEndpoint,
                  "edge " + x + "-" + y + " has an undeclared endpoint");
    }
    VertexId a = index(x);
    VertexId b = index(y);
    if (a > b) std::swap(a, b);
    if (!edges.insert({a, b}).second)
      throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + x + "-" + y);
  }
  g.edges_.assign(edges.begin(), edges.end());
  g.adjacency_.resize(g.labels_.size());
  g.incident_edge_.resize(g.labels_.size());
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(g.labels_.size());
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    adj[g.edges_[e].a].push_back({g.edges_[e].b, e});
    adj[g.edges_[e].b].push_back({g.edges_[e].a, e});
  }
  for (VertexId v = 0; v < adj.size(); ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    for (auto [w, e] : adj[v]) {
      g.adjacency_[v].push_back(w);
      g.incident_edge_[v].push_back(e);
    }
  }
  g.s_ = index(raw.s);
  g.r_ = index(raw.r);
  return g;
}

std::optional<VertexId> TwoTerminalGraph::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<VertexId>(it - labels_.begin());
}

VertexId TwoTerminalGraph::vertex(std::string_view label) const {
  auto v = find(label);
  if (!v) throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + std::string(label) + "'");
  return *v;
}

std::optional<EdgeId> TwoTerminalGraph::edge_id(VertexId u, VertexId v) const {
  if (u >= adjacency_.size()) return std::nullopt;
  const auto& nb = adjacency_[u];
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident_edge_[u][static_cast<std::size_t>(it - nb.begin())];
}

std::string TwoTerminalGraph::edge_key(EdgeId e) const {
  const Edge& x = edge(e);
  return labels_[x.a] + "-" + labels_[x.b];
}

EdgeId TwoTerminalGraph::edge_from_key(std::string_view key) const {
  // Labels may themselves contain '-', so try every split point.
  for (std::size_t pos = key.find('-'); pos != std::string_view::npos; pos = key.find('-', pos + 1)) {
    auto u = find(key.substr(0, pos));
    auto v = find(key.substr(pos + 1));
    if (u && v) {
      if (auto e = edge_id(*u, *v)) return *e;
    }
  }
  throw Error(ErrorCode::UnknownEdge, "unknown edge '" + std::string(key) + "'");
}

std::vector<std::string> TwoTerminalGraph::neighbors(std::string_view label) const {
  std::vector<std::string> out;
  for (VertexId w : neighbors(vertex(label))) out.push_back(labels_[w]);
  return out;
}

std::vector<int> TwoTerminalGraph::distances_from(VertexId v) const {
  std::vector<int> dist(labels_.size(), -1);
  std::deque<VertexId> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (VertexId y : adjacency_[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

bool TwoTerminalGraph::terminals_connected(EdgeMask alive) const {
  std::vector<char> seen(labels_.size(), 0);
  std::vector<VertexId> stack{s_};
  seen[s_] = 1;
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    if (x == r_) return true;
    for (std::size_t i = 0; i < adjacency_[x].size(); ++i) {
      VertexId y = adjacency_[x][i];
      if (!seen[y] && (alive >> incident_edge_[x][i] & 1U)) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

EdgeMask TwoTerminalGraph::all_edges_mask() const {
  return edges_.size() >= 64 ? ~EdgeMask{0} : ((EdgeMask{1} << edges_.size()) - 1);
}

GraphDescription TwoTerminalGraph::describe() const {
  GraphDescription d;
  d.vertices = labels_;
  for (const auto& e : edges_) d.edges.emplace_back(labels_[e.a], labels_[e.b]);
  d.s = labels_[s_];
  d.r = labels_[r_];
  return d;
}

std::optional<std::string> instruction_violation(const TwoTerminalGraph& g, VertexId u, VertexId v,
                                                 VertexId w) {
  const auto n = g.vertex_count();
  if (u >= n || v >= n || w >= n) return "vertex out of range";
  if (u == w) return "u equals w";
  if (!g.adjacent(u, v)) return g.label(u) + g.label(v) + " is not an edge";
  if (!g.adjacent(v, w)) return g.label(v) + g.label(w) + " is not an edge";
  return std::nullopt;
}

Protocol::Protocol(const TwoTerminalGraph& g, std::vector<Instruction> instructions) {
  for (const auto& x : instructions) {
    if (auto why = instruction_violation(g, x.u, x.v, x.w)) {
      throw Error(ErrorCode::InvalidInstruction, "invalid instruction: " + *why);
    }
  }
  std::sort(instructions.begin(), instructions.end());
  instructions.erase(std::unique(instructions.begin(), instructions.end()), instructions.end());
  items_ = std::move(instructions);
}

Protocol Protocol::from_labels(const TwoTerminalGraph& g,
                               const std::vector<std::array<std::string, 3>>& triples) {
  std::vector<Instruction> xs;
  xs.reserve(triples.size());
  for (const auto& t : triples) xs.push_back({g.vertex(t[0]), g.vertex(t[1]), g.vertex(t[2])});
  return Protocol(g, std::move(xs));
}

Protocol Protocol::trusted(std::vector<Instruction> sorted_unique) {
  Protocol p;
  p.items_ = std::move(sorted_unique);
  return p;
}

bool Protocol::contains(const Instruction& x) const {
  return std::binary_search(items_.begin(), items_.end(), x);
}

bool Protocol::is_subset_of(const Protocol& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

Protocol Protocol::without(const Protocol& removed) const {
  std::vector<Instruction> out;
  std::set_difference(items_.begin(), items_.end(), removed.items_.begin(), removed.items_.end(),
                      std::back_inserter(out));
  return trusted(std::move(out));
}

Protocol Protocol::with(const Protocol& added) const {
  std::vector<Instruction> out;
  std::set_union(items_.begin(), items_.end(), added.items_.begin(), added.items_.end(),
                 std::back_inserter(out));
  return trusted(std::move(out));
}

std::vector<std::array<std::string, 3>> Protocol::to_labels(const TwoTerminalGraph& g) const {
  std::vector<std::array<std::string, 3>> out;
  out.reserve(items_.size());
  for (const auto& x : items_) out.push_back({g.label(x.u), g.label(x.v), g.label(x.w)});
  return out;
}

EdgeProbabilityMap EdgeProbabilityMap::uniform(const TwoTerminalGraph& g) {
  EdgeProbabilityMap m;
  m.per_edge_.assign(g.edge_count(), Polynomial::variable());
  return m;
}

EdgeProbabilityMap::EdgeProbabilityMap(const TwoTerminalGraph& g, std::vector<Polynomial> per_edge)
    : per_edge_(std::move(per_edge)) {
  if (per_edge_.size() != g.edge_count()) {
    throw Error(ErrorCode::InvalidProbability, "probability map does not cover every edge");
  }
  for (EdgeId e = 0; e < per_edge_.size(); ++e) {
    for (int k = 1; k <= 7; ++k) {
      Rational v = per_edge_[e](Rational(k, 8));
      if (v <= 0 || v >= 1) {
        throw Error(ErrorCode::InvalidProbability,
                    "probability of edge " + g.edge_key(e) + " leaves (0,1) at p=" +
                        Rational(k, 8).get_str());
      }
    }
  }
}

bool EdgeProbabilityMap::is_uniform() const {
  const Polynomial p = Polynomial::variable();
  return std::all_of(per_edge_.begin(), per_edge_.end(), [&](const auto& q) { return q == p; });
}

std::vector<Rational> EdgeProbabilityMap::at(const Rational& x) const {
  std::vector<Rational> out;
  out.reserve(per_edge_.size());
  for (const auto& q : per_edge_) out.push_back(q(x));
  return out;
}

TwoTerminalGraph fixture_b0() {
  GraphDescription d;
  d.vertices = {"s", "1", "2", "3", "4", "5", "r"};
  d.edges = {{"s", "1"}, {"s", "2"}, {"1", "3"}, {"1", "4"}, {"2", "3"},
             {"2", "5"}, {"3", "4"}, {"3", "5"}, {"4", "r"}, {"5", "r"}};
  d.s = "s";
  d.r = "r";
  return TwoTerminalGraph::validate(d);
}

TwoTerminalGraph fixture_path(std::size_t k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "a path needs at least 2 vertices");
  GraphDescription d;
  d.s = "s";
  d.r = "r";
  d.vertices.push_back("s");
  for (std::size_t i = 1; i + 1 < k; ++i) d.vertices.push_back(std::to_string(i));
  d.vertices.push_back("r");
  for (std::size_t i = 0; i + 1 < d.vertices.size(); ++i)
    d.edges.emplace_back(d.vertices[i], d.vertices[i + 1]);
  return TwoTerminalGraph::validate(d);
}

}  // namespace relayopt
