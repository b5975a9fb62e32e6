#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "relayopt/graph.hpp"
#include "relayopt/polynomial.hpp"
#include "relayopt/reliability.hpp"
#include "relayopt/roots.hpp"

namespace relayopt {

/// Series composition: r1 and s2 become one vertex. Vertices are relabelled
/// s, 1, 2, ..., r (interior of G1, join vertex, interior of G2).
TwoTerminalGraph series(const TwoTerminalGraph& g1, const TwoTerminalGraph& g2);
/// Parallel composition: s1 = s2 and r1 = r2. Throws Error(MultiEdge) when
/// both operands contain the edge sr.
TwoTerminalGraph parallel(const TwoTerminalGraph& g1, const TwoTerminalGraph& g2);

/// Construction tree of a series-parallel graph, with its realized graph.
/// Immutable; subtrees are shared.
class SPTree {
 public:
  enum class Kind { Edge, Series, Parallel };

  static SPTree edge();
  static SPTree series(const SPTree& left, const SPTree& right);
  /// Throws Error(MultiEdge) when both sides are single edges.
  static SPTree parallel(const SPTree& left, const SPTree& right);
  /// Path on k >= 2 vertices.
  static SPTree path(std::size_t k);

  Kind kind() const;
  SPTree left() const;
  SPTree right() const;
  std::size_t edge_count() const;
  const TwoTerminalGraph& graph() const;
  /// rho at constant p via the series/parallel recursion.
  Polynomial rho() const;
  /// Edges of graph() oriented from the s side to the r side.
  const std::vector<std::pair<VertexId, VertexId>>& arcs() const;

 private:
  struct Node;
  explicit SPTree(std::shared_ptr<const Node> node);
  static SPTree finish(std::shared_ptr<Node> node);
  std::shared_ptr<const Node> node_;
};

/// Injective f: V(H) -> [0,1], strictly increasing along every s,r-path.
std::map<VertexId, Rational> sp_level_injection(const SPTree& h);

/// G1 with edge xy replaced by H (s_H -> x, r_H -> y).
struct Expansion {
  TwoTerminalGraph base;
  VertexId x;
  VertexId y;
  TwoTerminalGraph inserted;
  TwoTerminalGraph result;
  std::vector<VertexId> base_to_result;      // indexed by base vertex
  std::vector<VertexId> inserted_to_result;  // indexed by inserted vertex
};

/// Interior vertices of H receive labels "h<k>.<label>" for the smallest k
/// that no base label already uses. Throws Error(UnknownEdge) if xy is
/// missing.
Expansion expand(const TwoTerminalGraph& g1, VertexId x, VertexId y, const TwoTerminalGraph& h);

/// p1(e) = p(e) off the replaced edge, p1(xy) = rho(H, p restricted to H).
EdgeProbabilityMap implied_distribution(const Expansion& exp, const EdgeProbabilityMap& prob,
                                        const ScanOptions& opts = {});

/// Corresponding instructions I(A) plus A_H chosen by the directions in which
/// A-paths of G1 traverse xy.
Protocol extend_protocol(const Expansion& exp, const Protocol& a);

/// H1 = (F1∘G1)||(G2∘F2), H2 = (F1∘G2)||(G1∘F2).
std::pair<TwoTerminalGraph, TwoTerminalGraph> kelmans_compose(const TwoTerminalGraph& f1,
                                                              const TwoTerminalGraph& f2,
                                                              const TwoTerminalGraph& g1,
                                                              const TwoTerminalGraph& g2);
std::pair<SPTree, SPTree> kelmans_compose(const SPTree& f1, const SPTree& f2, const SPTree& g1,
                                          const SPTree& g2);

/// rho(G) - rho(H) at constant p.
Polynomial delta_rho(const TwoTerminalGraph& g, const TwoTerminalGraph& h, const ScanOptions& opts = {});
Polynomial delta_rho(const SPTree& g, const SPTree& h);

using Profile = std::vector<RootWithMultiplicity>;
/// Roots in (0,1) with multiplicities; nullopt for the zero polynomial.
std::optional<Profile> profile(const Polynomial& f);

/// Largest realized graph accepted by the generators.
inline constexpr std::size_t kMaxGeneratedEdges = 64;

/// Series-parallel pair whose rho difference has profile m (increasing
/// roots). Uses the pairs (P_k, P_{k+1}||P_{k+1}), each composed with itself.
/// The empty profile yields two single edges.
std::pair<SPTree, SPTree> build_crossing_pair(const std::vector<int>& m);

/// B0 expanded at s1 by H1 and at s2 by H2, with (H1, H2) the crossing pair
/// for m. Every entry of m must be odd.
TwoTerminalGraph build_breakpoint_graph(const std::vector<int>& m);

}  // namespace relayopt
