#include "relayopt/constructions.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "relayopt/error.hpp"
#include "relayopt/protocol.hpp"

namespace relayopt {

namespace {

// Graph in local numbering: 0 is s, n-1 is r, 1..n-2 are interior. Edge
// pairs keep the order they were produced in, which for series-parallel
// trees is the s-to-r orientation.
struct Local {
  std::size_t n = 2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  bool has_terminal_edge() const {
    const auto r = static_cast<std::uint32_t>(n - 1);
    return std::any_of(edges.begin(), edges.end(), [r](auto e) {
      return (e.first == 0 && e.second == r) || (e.first == r && e.second == 0);
    });
  }
};

Local to_local(const TwoTerminalGraph& g) {
  Local out;
  out.n = g.vertex_count();
  std::vector<std::uint32_t> index(g.vertex_count());
  std::uint32_t next = 1;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == g.s())
      index[v] = 0;
    else if (v == g.r())
      index[v] = static_cast<std::uint32_t>(out.n - 1);
    else
      index[v] = next++;
  }
  for (const auto& e : g.edges()) out.edges.emplace_back(index[e.a], index[e.b]);
  return out;
}

std::string local_label(std::size_t i, std::size_t n) {
  if (i == 0) return "s";
  if (i + 1 == n) return "r";
  return std::to_string(i);
}

TwoTerminalGraph from_local(const Local& l) {
  GraphDescription d;
  for (std::size_t i = 0; i < l.n; ++i) d.vertices.push_back(local_label(i, l.n));
  for (auto [a, b] : l.edges) d.edges.emplace_back(local_label(a, l.n), local_label(b, l.n));
  d.s = "s";
  d.r = "r";
  return TwoTerminalGraph::validate(d);
}

Local series_local(const Local& a, const Local& b) {
  Local out;
  out.n = a.n + b.n - 1;
  out.edges = a.edges;
  const auto shift = static_cast<std::uint32_t>(a.n - 1);
  for (auto [u, v] : b.edges) out.edges.emplace_back(u + shift, v + shift);
  return out;
}

Local parallel_local(const Local& a, const Local& b) {
  if (a.has_terminal_edge() && b.has_terminal_edge()) {
    throw Error(ErrorCode::MultiEdge, "parallel join would duplicate the edge sr");
  }
  Local out;
  out.n = a.n + b.n - 2;
  const auto r = static_cast<std::uint32_t>(out.n - 1);
  auto map_a = [&](std::uint32_t v) { return v + 1 == a.n ? r : v; };
  auto map_b = [&](std::uint32_t v) {
    if (v == 0) return std::uint32_t{0};
    if (v + 1 == b.n) return r;
    return static_cast<std::uint32_t>(a.n - 2 + v);
  };
  for (auto [u, v] : a.edges) out.edges.emplace_back(map_a(u), map_a(v));
  for (auto [u, v] : b.edges) out.edges.emplace_back(map_b(u), map_b(v));
  return out;
}

}  // namespace

TwoTerminalGraph series(const TwoTerminalGraph& g1, const TwoTerminalGraph& g2) {
  return from_local(series_local(to_local(g1), to_local(g2)));
}

TwoTerminalGraph parallel(const TwoTerminalGraph& g1, const TwoTerminalGraph& g2) {
  return from_local(parallel_local(to_local(g1), to_local(g2)));
}

struct SPTree::Node {
  Kind kind = Kind::Edge;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
  Local local;
  std::shared_ptr<const TwoTerminalGraph> graph;
  std::vector<std::pair<VertexId, VertexId>> arcs;
  Polynomial rho;
};

SPTree SPTree::finish(std::shared_ptr<Node> node) {
  node->graph = std::make_shared<const TwoTerminalGraph>(from_local(node->local));
  const auto& g = *node->graph;
  for (auto [a, b] : node->local.edges)
    node->arcs.emplace_back(g.vertex(local_label(a, node->local.n)), g.vertex(local_label(b, node->local.n)));
  return SPTree(std::move(node));
}

SPTree::SPTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

SPTree SPTree::edge() {
  auto node = std::make_shared<Node>();
  node->local.edges = {{0, 1}};
  node->rho = Polynomial::variable();
  return finish(node);
}

SPTree SPTree::series(const SPTree& left, const SPTree& right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Series;
  node->left = left.node_;
  node->right = right.node_;
  node->local = series_local(left.node_->local, right.node_->local);
  node->rho = left.node_->rho * right.node_->rho;
  return finish(node);
}

SPTree SPTree::parallel(const SPTree& left, const SPTree& right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Parallel;
  node->left = left.node_;
  node->right = right.node_;
  node->local = parallel_local(left.node_->local, right.node_->local);
  const Polynomial& a = left.node_->rho;
  const Polynomial& b = right.node_->rho;
  node->rho = a + b - a * b;
  return finish(node);
}

SPTree SPTree::path(std::size_t k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "a path needs at least 2 vertices");
  SPTree out = edge();
  for (std::size_t i = 2; i < k; ++i) out = series(out, edge());
  return out;
}

SPTree::Kind SPTree::kind() const { return node_->kind; }

SPTree SPTree::left() const {
  if (!node_->left) throw Error(ErrorCode::InvalidArgument, "a leaf has no children");
  return SPTree(node_->left);
}

SPTree SPTree::right() const {
  if (!node_->right) throw Error(ErrorCode::InvalidArgument, "a leaf has no children");
  return SPTree(node_->right);
}

std::size_t SPTree::edge_count() const { return node_->local.edges.size(); }
const TwoTerminalGraph& SPTree::graph() const { return *node_->graph; }
Polynomial SPTree::rho() const { return node_->rho; }
const std::vector<std::pair<VertexId, VertexId>>& SPTree::arcs() const { return node_->arcs; }

std::map<VertexId, Rational> sp_level_injection(const SPTree& h) {
  const auto& g = h.graph();
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<VertexId>> out(n);
  std::vector<std::size_t> indegree(n, 0);
  for (auto [a, b] : h.arcs()) {
    out[a].push_back(b);
    ++indegree[b];
  }
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::map<VertexId, Rational> level;
  long rank = 0;
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    Rational value(rank++, static_cast<long>(n - 1));
    value.canonicalize();
    level[v] = value;
    for (VertexId w : out[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  return level;
}

Expansion expand(const TwoTerminalGraph& g1, VertexId x, VertexId y, const TwoTerminalGraph& h) {
  auto removed = g1.edge_id(x, y);
  if (!removed) throw Error(ErrorCode::UnknownEdge, "the expanded edge is not in the base graph");
  std::string prefix;
  for (int k = 1;; ++k) {
    prefix = "h" + std::to_string(k) + ".";
    bool clash = std::any_of(g1.labels().begin(), g1.labels().end(),
                             [&](const std::string& l) { return l.rfind(prefix, 0) == 0; });
    if (!clash) break;
  }
  auto h_label = [&](VertexId v) {
    if (v == h.s()) return g1.label(x);
    if (v == h.r()) return g1.label(y);
    return prefix + h.label(v);
  };
  GraphDescription d;
  d.vertices = g1.labels();
  for (VertexId v = 0; v < h.vertex_count(); ++v)
    if (v != h.s() && v != h.r()) d.vertices.push_back(h_label(v));
  for (EdgeId e = 0; e < g1.edge_count(); ++e)
    if (e != *removed) d.edges.emplace_back(g1.label(g1.edge(e).a), g1.label(g1.edge(e).b));
  for (const auto& e : h.edges()) d.edges.emplace_back(h_label(e.a), h_label(e.b));
  d.s = g1.label(g1.s());
  d.r = g1.label(g1.r());

  Expansion exp{g1, x, y, h, TwoTerminalGraph::validate(d), {}, {}};
  for (VertexId v = 0; v < g1.vertex_count(); ++v) exp.base_to_result.push_back(exp.result.vertex(g1.label(v)));
  for (VertexId v = 0; v < h.vertex_count(); ++v) exp.inserted_to_result.push_back(exp.result.vertex(h_label(v)));
  return exp;
}

EdgeProbabilityMap implied_distribution(const Expansion& exp, const EdgeProbabilityMap& prob,
                                        const ScanOptions& opts) {
  const auto& g = exp.result;
  auto image = [&](const std::vector<VertexId>& map, const Edge& e) {
    return *g.edge_id(map[e.a], map[e.b]);
  };
  std::vector<Polynomial> h_values;
  for (const auto& e : exp.inserted.edges()) h_values.push_back(prob[image(exp.inserted_to_result, e)]);
  EdgeProbabilityMap h_prob(exp.inserted, h_values);
  const EdgeId removed = *exp.base.edge_id(exp.x, exp.y);
  std::vector<Polynomial> values;
  for (EdgeId e = 0; e < exp.base.edge_count(); ++e) {
    values.push_back(e == removed ? rho(exp.inserted, h_prob, opts)
                                  : prob[image(exp.base_to_result, exp.base.edge(e))]);
  }
  return EdgeProbabilityMap(exp.base, values);
}

Protocol extend_protocol(const Expansion& exp, const Protocol& a) {
  const auto& b2r = exp.base_to_result;
  const auto& h2r = exp.inserted_to_result;
  auto is_e1 = [&](VertexId u, VertexId v) {
    return (u == exp.x && v == exp.y) || (u == exp.y && v == exp.x);
  };
  // N_H(v) for v in {x, y}, as vertices of the result.
  auto h_neighbors = [&](VertexId v) {
    VertexId hv = v == exp.x ? exp.inserted.s() : exp.inserted.r();
    std::vector<VertexId> out;
    for (VertexId w : exp.inserted.neighbors(hv)) out.push_back(h2r[w]);
    return out;
  };

  std::vector<Instruction> out;
  for (const auto& i : a) {
    if (is_e1(i.u, i.v)) {
      for (VertexId u2 : h_neighbors(i.v)) out.push_back({u2, b2r[i.v], b2r[i.w]});
    } else if (is_e1(i.v, i.w)) {
      for (VertexId w2 : h_neighbors(i.v)) out.push_back({b2r[i.u], b2r[i.v], w2});
    } else {
      out.push_back({b2r[i.u], b2r[i.v], b2r[i.w]});
    }
  }

  bool forward = false, backward = false;
  for (const auto& path : a_paths(exp.base, a)) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (path[i] == exp.x && path[i + 1] == exp.y) forward = true;
      if (path[i] == exp.y && path[i + 1] == exp.x) backward = true;
    }
  }
  if (forward || backward) {
    const Protocol inner = cfp(exp.inserted);
    for (const auto& i : inner) {
      if (forward) out.push_back({h2r[i.u], h2r[i.v], h2r[i.w]});
      if (backward) out.push_back({h2r[i.w], h2r[i.v], h2r[i.u]});
    }
  }
  return Protocol(exp.result, std::move(out));
}

std::pair<TwoTerminalGraph, TwoTerminalGraph> kelmans_compose(const TwoTerminalGraph& f1,
                                                              const TwoTerminalGraph& f2,
                                                              const TwoTerminalGraph& g1,
                                                              const TwoTerminalGraph& g2) {
  return {parallel(series(f1, g1), series(g2, f2)), parallel(series(f1, g2), series(g1, f2))};
}

std::pair<SPTree, SPTree> kelmans_compose(const SPTree& f1, const SPTree& f2, const SPTree& g1,
                                          const SPTree& g2) {
  return {SPTree::parallel(SPTree::series(f1, g1), SPTree::series(g2, f2)),
          SPTree::parallel(SPTree::series(f1, g2), SPTree::series(g1, f2))};
}

Polynomial delta_rho(const TwoTerminalGraph& g, const TwoTerminalGraph& h, const ScanOptions& opts) {
  return rho(g, EdgeProbabilityMap::uniform(g), opts) - rho(h, EdgeProbabilityMap::uniform(h), opts);
}

Polynomial delta_rho(const SPTree& g, const SPTree& h) { return g.rho() - h.rho(); }

std::optional<Profile> profile(const Polynomial& f) {
  if (f.is_zero()) return std::nullopt;
  return roots_in_unit_interval(f);
}

std::pair<SPTree, SPTree> build_crossing_pair(const std::vector<int>& m) {
  for (int x : m)
    if (x < 1) throw Error(ErrorCode::InvalidArgument, "profile entries must be positive");
  // Edge counts of a composed pair are the sum over all four operands, so the
  // guard can be checked before anything is built.
  auto guard = [](std::size_t edges) {
    if (edges > kMaxGeneratedEdges) {
      throw Error(ErrorCode::GuardExceeded, "crossing pair would exceed " + std::to_string(kMaxGeneratedEdges) +
                                                " edges (" + std::to_string(edges) + ")");
    }
  };
  const std::size_t t = m.size();
  std::optional<std::pair<SPTree, SPTree>> result;
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t k = t + 1 - i;
    const std::pair<SPTree, SPTree> base{SPTree::path(k), SPTree::parallel(SPTree::path(k + 1), SPTree::path(k + 1))};
    std::pair<SPTree, SPTree> power = base;
    for (int j = 1; j < m[i]; ++j) {
      guard(power.first.edge_count() + power.second.edge_count() + base.first.edge_count() +
            base.second.edge_count());
      power = kelmans_compose(power.first, power.second, base.first, base.second);
    }
    if (result) {
      guard(result->first.edge_count() + result->second.edge_count() + power.first.edge_count() +
            power.second.edge_count());
      result = kelmans_compose(result->first, result->second, power.first, power.second);
    } else {
      guard(std::max(power.first.edge_count(), power.second.edge_count()));
      result = power;
    }
  }
  if (!result) return {SPTree::edge(), SPTree::edge()};
  return *result;
}

TwoTerminalGraph build_breakpoint_graph(const std::vector<int>& m) {
  for (int x : m)
    if (x % 2 == 0) throw Error(ErrorCode::EvenOrder, "breakpoint orders must be odd");
  auto [h1, h2] = build_crossing_pair(m);
  const TwoTerminalGraph b0 = fixture_b0();
  Expansion first = expand(b0, b0.vertex("s"), b0.vertex("1"), h1.graph());
  const TwoTerminalGraph& g1 = first.result;
  Expansion second = expand(g1, g1.vertex("s"), g1.vertex("2"), h2.graph());
  return second.result;
}

}  // namespace relayopt
