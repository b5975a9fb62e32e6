#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "relayopt/graph.hpp"

namespace relayopt {

/// Vertex sequence v0, ..., vk. A path additionally has distinct vertices.
using Walk = std::vector<VertexId>;

using StateId = std::uint32_t;

/// Ordered adjacent pair (from, to): "the message is travelling along the
/// edge from `from` to `to`".
struct State {
  VertexId from;
  VertexId to;
  auto operator<=>(const State&) const = default;
};

/// Directed graph on ordered edge traversals. (u,v) -> (v,w) iff uvw is in
/// the protocol; initial states leave s, accepting states enter r. A-walks
/// are exactly the state paths from an initial to an accepting state, and
/// closed trails are exactly the directed cycles.
class StateGraph {
 public:
  StateGraph(const TwoTerminalGraph& g, const Protocol& a);

  std::size_t size() const { return states_.size(); }
  const State& state(StateId id) const { return states_[id]; }
  /// State for the traversal u -> v; uv must be an edge.
  StateId id(VertexId u, VertexId v) const;
  static EdgeId edge_of(StateId id) { return id / 2; }

  const std::vector<StateId>& successors(StateId id) const { return succ_[id]; }
  const std::vector<StateId>& predecessors(StateId id) const { return pred_[id]; }
  bool is_initial(StateId id) const { return states_[id].from == g_->s(); }
  bool is_accepting(StateId id) const { return states_[id].to == g_->r(); }

  /// Lexicographic rank of a state by its (from, to) labels.
  std::uint32_t rank(StateId id) const { return rank_[id]; }
  /// State ids in lexicographic order.
  const std::vector<StateId>& by_rank() const { return order_; }

  std::vector<char> reachable_from_initial() const;
  std::vector<char> reaching_accepting() const;
  /// States lying on some A-walk.
  std::vector<char> useful() const;

  const TwoTerminalGraph& graph() const { return *g_; }

 private:
  const TwoTerminalGraph* g_;
  std::vector<State> states_;
  std::vector<std::vector<StateId>> succ_;
  std::vector<std::vector<StateId>> pred_;
  std::vector<std::uint32_t> rank_;
  std::vector<StateId> order_;
};

/// Closed trail given as its cyclic sequence of states, starting from the
/// lexicographically smallest state.
using EssentialCircuit = std::vector<State>;

/// All simple s,r-paths in lexicographic order.
std::vector<Walk> enumerate_sr_paths(const TwoTerminalGraph& g);

/// Instructions contained in a walk.
std::vector<Instruction> instructions_in(const Walk& walk);
/// Edge set of a walk.
EdgeMask edges_of(const TwoTerminalGraph& g, const Walk& walk);

/// Complete forwarding protocol: instructions lying on some s,r-path.
Protocol cfp(const TwoTerminalGraph& g);

/// s,r-paths all of whose instructions belong to A.
std::vector<Walk> a_paths(const TwoTerminalGraph& g, const Protocol& a);

/// Instructions of A lying on some A-walk.
Protocol essential_instructions(const TwoTerminalGraph& g, const Protocol& a);
/// Instructions of A lying on some A-path.
Protocol strongly_essential_instructions(const TwoTerminalGraph& g, const Protocol& a);

struct FinitenessResult {
  bool finite = true;
  EssentialCircuit witness;  // empty when finite
};

/// A is finite iff its essential transitions form an acyclic state graph.
FinitenessResult is_finite(const TwoTerminalGraph& g, const Protocol& a);

/// Every elementary cycle among essential transitions, once each up to
/// rotation, sorted. Throws Error(GuardExceeded) past `limit` cycles.
std::vector<EssentialCircuit> essential_circuits(const TwoTerminalGraph& g, const Protocol& a,
                                                 std::size_t limit = 1'000'000);

/// All A-walks in lexicographic order. Throws Error(InfiniteProtocol) when A
/// is not finite and Error(GuardExceeded) past `limit` walks.
std::vector<Walk> a_walks(const TwoTerminalGraph& g, const Protocol& a,
                          std::size_t limit = 5'000'000);

/// Chronological loop erasure of an s,r-walk; the result is an s,r-path whose
/// edges all lie on the walk.
Walk loop_erase(const Walk& walk);

/// Strongly essential partial forwarding protocol A' dominating a finite A:
/// loop-erase every A-walk, collect the instructions of the extracted paths,
/// and repeat on the result until it stops growing.
Protocol spfp_reduce(const TwoTerminalGraph& g, const Protocol& a);

/// Instructions contained in some s,r-path of length <= max_length.
Protocol bounded_protocol(const TwoTerminalGraph& g, std::size_t max_length);

}  // namespace relayopt
