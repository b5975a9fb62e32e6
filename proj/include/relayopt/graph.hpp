#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relayopt/polynomial.hpp"

namespace relayopt {

/// Index of a vertex in a TwoTerminalGraph. Indices follow the lexicographic
/// order of the vertex labels, so comparing ids compares labels.
using VertexId = std::uint32_t;
/// Index of an edge; edges are sorted by their canonical (sorted) label pair.
using EdgeId = std::uint32_t;
/// Bit set of edge ids; bit e set means edge e is present.
using EdgeMask = std::uint64_t;

struct Edge {
  VertexId a;  // a < b
  VertexId b;
  auto operator<=>(const Edge&) const = default;
};

/// Raw, unvalidated description of a graph as read from a file.
struct GraphDescription {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string s;
  std::string r;
};

/// Undirected simple graph with a distinguished sender s and receiver r.
/// Immutable once built.
class TwoTerminalGraph {
 public:
  /// Validates and canonicalizes; throws Error with a specific code for
  /// loops, duplicate edges, missing or equal terminals and dangling
  /// endpoints.
  static TwoTerminalGraph validate(const GraphDescription& raw);

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  VertexId s() const { return s_; }
  VertexId r() const { return r_; }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<VertexId> find(std::string_view label) const;
  /// Throws Error(UnknownVertex).
  VertexId vertex(std::string_view label) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::optional<EdgeId> edge_id(VertexId u, VertexId v) const;
  bool adjacent(VertexId u, VertexId v) const { return edge_id(u, v).has_value(); }
  /// Canonical "u-v" key with lexicographically ordered endpoints.
  std::string edge_key(EdgeId e) const;
  /// Parses a "u-v" key in either endpoint order; throws Error(UnknownEdge).
  EdgeId edge_from_key(std::string_view key) const;

  /// Sorted neighbor list.
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
  /// Neighbor labels of the vertex with the given label; throws on unknown.
  std::vector<std::string> neighbors(std::string_view label) const;

  /// BFS distances from v; unreachable vertices get -1.
  std::vector<int> distances_from(VertexId v) const;
  bool terminals_connected(EdgeMask alive) const;
  EdgeMask all_edges_mask() const;

  GraphDescription describe() const;
  friend bool operator==(const TwoTerminalGraph& a, const TwoTerminalGraph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_ && a.s_ == b.s_ && a.r_ == b.r_;
  }

 private:
  TwoTerminalGraph() = default;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::vector<EdgeId>> incident_edge_;  // parallel to adjacency_
  VertexId s_ = 0;
  VertexId r_ = 0;
};

/// Ordered triple uvw: "if v receives the message from u, forward it to w".
struct Instruction {
  VertexId u;
  VertexId v;
  VertexId w;
  auto operator<=>(const Instruction&) const = default;
};

/// Reason a triple is not an instruction of the graph, or nullopt if valid.
std::optional<std::string> instruction_violation(const TwoTerminalGraph& g, VertexId u, VertexId v,
                                                 VertexId w);

/// A set of instructions for one host graph, kept sorted and duplicate free.
class Protocol {
 public:
  Protocol() = default;
  /// Validates every instruction against g; throws Error(InvalidInstruction).
  Protocol(const TwoTerminalGraph& g, std::vector<Instruction> instructions);
  /// Label-based construction.
  static Protocol from_labels(const TwoTerminalGraph& g,
                              const std::vector<std::array<std::string, 3>>& triples);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(const Instruction& x) const;
  const std::vector<Instruction>& instructions() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool is_subset_of(const Protocol& other) const;
  Protocol without(const Protocol& removed) const;
  Protocol with(const Protocol& added) const;

  std::vector<std::array<std::string, 3>> to_labels(const TwoTerminalGraph& g) const;

  friend bool operator==(const Protocol&, const Protocol&) = default;
  friend auto operator<=>(const Protocol& a, const Protocol& b) { return a.items_ <=> b.items_; }

 private:
  static Protocol trusted(std::vector<Instruction> sorted_unique);
  std::vector<Instruction> items_;
};

/// Per-edge survival probabilities as polynomials in the global variable p.
class EdgeProbabilityMap {
 public:
  EdgeProbabilityMap() = default;
  /// Every edge survives with probability p.
  static EdgeProbabilityMap uniform(const TwoTerminalGraph& g);
  /// Checks each assignment on the grid {1/8, ..., 7/8}: values must lie in
  /// (0, 1). This is a necessary condition only. Throws Error(InvalidProbability).
  EdgeProbabilityMap(const TwoTerminalGraph& g, std::vector<Polynomial> per_edge);

  const Polynomial& operator[](EdgeId e) const { return per_edge_.at(e); }
  std::size_t size() const { return per_edge_.size(); }
  const std::vector<Polynomial>& values() const { return per_edge_; }
  /// True when every edge carries exactly p.
  bool is_uniform() const;
  /// Evaluates every edge at p = x.
  std::vector<Rational> at(const Rational& x) const;

 private:
  std::vector<Polynomial> per_edge_;
};

/// The graph B0: vertices s,1,2,3,4,5,r with edges s1,s2,13,14,23,25,34,35,4r,5r.
TwoTerminalGraph fixture_b0();
/// Path s - 1 - ... - r on k vertices (k >= 2).
TwoTerminalGraph fixture_path(std::size_t k);

}  // namespace relayopt
