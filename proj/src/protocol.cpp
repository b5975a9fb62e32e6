#include "relayopt/protocol.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "relayopt/error.hpp"

namespace relayopt {

StateGraph::StateGraph(const TwoTerminalGraph& g, const Protocol& a) : g_(&g) {
  const std::size_t m = g.edge_count();
  states_.resize(2 * m);
  for (EdgeId e = 0; e < m; ++e) {
    states_[2 * e] = {g.edge(e).a, g.edge(e).b};
    states_[2 * e + 1] = {g.edge(e).b, g.edge(e).a};
  }
  order_.resize(states_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(),
            [&](StateId x, StateId y) { return states_[x] < states_[y]; });
  rank_.resize(states_.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) rank_[order_[i]] = i;

  succ_.resize(states_.size());
  pred_.resize(states_.size());
  for (const auto& x : a) {
    if (instruction_violation(g, x.u, x.v, x.w)) {
      throw Error(ErrorCode::InvalidInstruction, "protocol is not bound to this graph");
    }
    StateId from = id(x.u, x.v);
    StateId to = id(x.v, x.w);
    succ_[from].push_back(to);
    pred_[to].push_back(from);
  }
  auto by_rank = [&](StateId x, StateId y) { return rank_[x] < rank_[y]; };
  for (auto& v : succ_) std::sort(v.begin(), v.end(), by_rank);
  for (auto& v : pred_) std::sort(v.begin(), v.end(), by_rank);
}

StateId StateGraph::id(VertexId u, VertexId v) const {
  auto e = g_->edge_id(u, v);
  if (!e) throw Error(ErrorCode::UnknownEdge, "no edge " + g_->label(u) + "-" + g_->label(v));
  return 2 * *e + (u < v ? 0 : 1);
}

namespace {

std::vector<char> flood(const std::vector<std::vector<StateId>>& adj, std::vector<StateId> seeds) {
  std::vector<char> seen(adj.size(), 0);
  for (StateId x : seeds) seen[x] = 1;
  while (!seeds.empty()) {
    StateId x = seeds.back();
    seeds.pop_back();
    for (StateId y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        seeds.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<char> StateGraph::reachable_from_initial() const {
  std::vector<StateId> seeds;
  for (StateId x = 0; x < size(); ++x)
    if (is_initial(x)) seeds.push_back(x);
  return flood(succ_, std::move(seeds));
}

std::vector<char> StateGraph::reaching_accepting() const {
  std::vector<StateId> seeds;
  for (StateId x = 0; x < size(); ++x)
    if (is_accepting(x)) seeds.push_back(x);
  return flood(pred_, std::move(seeds));
}

std::vector<char> StateGraph::useful() const {
  auto fwd = reachable_from_initial();
  auto bwd = reaching_accepting();
  for (std::size_t i = 0; i < fwd.size(); ++i) fwd[i] = fwd[i] && bwd[i];
  return fwd;
}

std::vector<Instruction> instructions_in(const Walk& walk) {
  std::vector<Instruction> out;
  for (std::size_t i = 1; i + 1 < walk.size(); ++i) out.push_back({walk[i - 1], walk[i], walk[i + 1]});
  return out;
}

EdgeMask edges_of(const TwoTerminalGraph& g, const Walk& walk) {
  EdgeMask mask = 0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    auto e = g.edge_id(walk[i - 1], walk[i]);
    if (!e) throw Error(ErrorCode::UnknownEdge, "walk uses a non-edge");
    mask |= EdgeMask{1} << *e;
  }
  return mask;
}

namespace {

// DFS over simple s,r-paths; `allowed(u, v, w)` filters each extension.
template <typename Allowed>
std::vector<Walk> simple_paths(const TwoTerminalGraph& g, std::size_t max_length, Allowed allowed) {
  std::vector<Walk> out;
  Walk path{g.s()};
  std::vector<char> on_path(g.vertex_count(), 0);
  on_path[g.s()] = 1;
  std::function<void()> extend = [&]() {
    VertexId v = path.back();
    if (v == g.r()) {
      out.push_back(path);
      return;
    }
    if (path.size() - 1 >= max_length) return;
    for (VertexId w : g.neighbors(v)) {
      if (on_path[w]) continue;
      if (path.size() >= 2 && !allowed(path[path.size() - 2], v, w)) continue;
      on_path[w] = 1;
      path.push_back(w);
      extend();
      path.pop_back();
      on_path[w] = 0;
    }
  };
  extend();
  return out;
}

Protocol instructions_of_walks(const TwoTerminalGraph& g, const std::vector<Walk>& walks) {
  std::vector<Instruction> all;
  for (const auto& w : walks) {
    auto xs = instructions_in(w);
    all.insert(all.end(), xs.begin(), xs.end());
  }
  return Protocol(g, std::move(all));
}

EssentialCircuit rotate_canonical(std::vector<State> cycle) {
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  return cycle;
}

}  // namespace

std::vector<Walk> enumerate_sr_paths(const TwoTerminalGraph& g) {
  return simple_paths(g, g.vertex_count(), [](VertexId, VertexId, VertexId) { return true; });
}

Protocol cfp(const TwoTerminalGraph& g) { return instructions_of_walks(g, enumerate_sr_paths(g)); }

std::vector<Walk> a_paths(const TwoTerminalGraph& g, const Protocol& a) {
  return simple_paths(g, g.vertex_count(),
                      [&](VertexId u, VertexId v, VertexId w) { return a.contains({u, v, w}); });
}

Protocol essential_instructions(const TwoTerminalGraph& g, const Protocol& a) {
  StateGraph sg(g, a);
  auto fwd = sg.reachable_from_initial();
  auto bwd = sg.reaching_accepting();
  std::vector<Instruction> out;
  for (const auto& x : a) {
    if (fwd[sg.id(x.u, x.v)] && bwd[sg.id(x.v, x.w)]) out.push_back(x);
  }
  return Protocol(g, std::move(out));
}

Protocol strongly_essential_instructions(const TwoTerminalGraph& g, const Protocol& a) {
  return instructions_of_walks(g, a_paths(g, a));
}

FinitenessResult is_finite(const TwoTerminalGraph& g, const Protocol& a) {
  StateGraph sg(g, a);
  auto useful = sg.useful();
  enum : char { White, Grey, Black };
  std::vector<char> colour(sg.size(), White);
  std::vector<StateId> stack;
  FinitenessResult result;

  std::function<bool(StateId)> visit = [&](StateId x) {
    colour[x] = Grey;
    stack.push_back(x);
    for (StateId y : sg.successors(x)) {
      if (!useful[y]) continue;
      if (colour[y] == Grey) {
        auto start = std::find(stack.begin(), stack.end(), y);
        std::vector<State> cycle;
        for (auto it = start; it != stack.end(); ++it) cycle.push_back(sg.state(*it));
        result.finite = false;
        result.witness = rotate_canonical(std::move(cycle));
        return true;
      }
      if (colour[y] == White && visit(y)) return true;
    }
    stack.pop_back();
    colour[x] = Black;
    return false;
  };
  for (StateId x : sg.by_rank()) {
    if (useful[x] && colour[x] == White && visit(x)) break;
  }
  return result;
}

std::vector<EssentialCircuit> essential_circuits(const TwoTerminalGraph& g, const Protocol& a,
                                                 std::size_t limit) {
  // Johnson's elementary-cycle enumeration over useful states, processed in
  // rank order so every cycle is reported from its smallest state.
  StateGraph sg(g, a);
  auto useful = sg.useful();
  const std::size_t n = sg.size();
  std::vector<EssentialCircuit> out;
  std::vector<char> blocked(n, 0);
  std::vector<std::set<StateId>> blocked_by(n);
  std::vector<StateId> stack;

  std::function<void(StateId)> unblock = [&](StateId u) {
    blocked[u] = 0;
    auto pending = std::move(blocked_by[u]);
    blocked_by[u].clear();
    for (StateId w : pending)
      if (blocked[w]) unblock(w);
  };

  for (StateId start : sg.by_rank()) {
    if (!useful[start]) continue;
    const std::uint32_t floor = sg.rank(start);
    std::fill(blocked.begin(), blocked.end(), 0);
    for (auto& b : blocked_by) b.clear();

    std::function<bool(StateId)> circuit = [&](StateId v) {
      bool found = false;
      stack.push_back(v);
      blocked[v] = 1;
      for (StateId w : sg.successors(v)) {
        if (!useful[w] || sg.rank(w) < floor) continue;
        if (w == start) {
          EssentialCircuit c;
          for (StateId x : stack) c.push_back(sg.state(x));
          out.push_back(std::move(c));
          if (out.size() > limit) throw Error(ErrorCode::GuardExceeded, "too many essential circuits");
          found = true;
        } else if (!blocked[w] && circuit(w)) {
          found = true;
        }
      }
      if (found) {
        unblock(v);
      } else {
        for (StateId w : sg.successors(v)) {
          if (useful[w] && sg.rank(w) >= floor) blocked_by[w].insert(v);
        }
      }
      stack.pop_back();
      return found;
    };
    circuit(start);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Walk> a_walks(const TwoTerminalGraph& g, const Protocol& a, std::size_t limit) {
  if (!is_finite(g, a).finite) throw Error(ErrorCode::InfiniteProtocol, "protocol is not finite");
  StateGraph sg(g, a);
  auto useful = sg.useful();
  std::vector<Walk> out;
  Walk walk{g.s()};
  std::function<void(StateId)> extend = [&](StateId x) {
    walk.push_back(sg.state(x).to);
    if (sg.is_accepting(x)) {
      out.push_back(walk);
      if (out.size() > limit) throw Error(ErrorCode::GuardExceeded, "too many A-walks");
    }
    for (StateId y : sg.successors(x))
      if (useful[y]) extend(y);
    walk.pop_back();
  };
  for (StateId x : sg.by_rank())
    if (useful[x] && sg.is_initial(x)) extend(x);
  return out;
}

Walk loop_erase(const Walk& walk) {
  Walk path;
  std::vector<std::size_t> position;
  for (VertexId v : walk) {
    if (v >= position.size()) position.resize(v + 1, SIZE_MAX);
    if (position[v] != SIZE_MAX) {
      for (std::size_t i = position[v] + 1; i < path.size(); ++i) position[path[i]] = SIZE_MAX;
      path.resize(position[v] + 1);
    } else {
      position[v] = path.size();
      path.push_back(v);
    }
  }
  return path;
}

Protocol spfp_reduce(const TwoTerminalGraph& g, const Protocol& a) {
  auto step = [&](const Protocol& current) {
    std::vector<Walk> erased;
    for (const auto& w : a_walks(g, current)) erased.push_back(loop_erase(w));
    return instructions_of_walks(g, erased);
  };
  Protocol reduced = step(a);
  while (true) {
    Protocol next = step(reduced);
    if (next == reduced) return reduced;
    reduced = std::move(next);
  }
}

Protocol bounded_protocol(const TwoTerminalGraph& g, std::size_t max_length) {
  if (max_length < 1) throw Error(ErrorCode::InvalidArgument, "path length bound must be >= 1");
  return instructions_of_walks(
      g, simple_paths(g, max_length, [](VertexId, VertexId, VertexId) { return true; }));
}

}  // namespace relayopt
