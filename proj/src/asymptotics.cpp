#include "relayopt/asymptotics.hpp"

#include "relayopt/error.hpp"
#include "relayopt/protocol.hpp"

namespace relayopt {

PathCensus path_census(const TwoTerminalGraph& g) {
  PathCensus out;
  for (const auto& path : enumerate_sr_paths(g)) ++out.d[path.size() - 1];
  if (out.d.empty()) throw Error(ErrorCode::InvalidArgument, "s and r are not connected");
  out.k = out.d.begin()->first;
  return out;
}

CutCensus cut_census(const TwoTerminalGraph& g, const ScanOptions& opts) {
  // Survivor sets of size i that disconnect correspond to failure sets of
  // size m - i.
  const auto counts =
      count_by_size(g, [&g](EdgeMask alive) { return !g.terminals_connected(alive); }, opts);
  const std::size_t m = g.edge_count();
  CutCensus out;
  for (std::size_t i = 0; i <= m; ++i)
    if (counts[i] != 0) out.c[m - i] = counts[i];
  out.e = out.c.begin()->first;  // removing every edge always disconnects
  return out;
}

NearZero near_zero_expansion(const TwoTerminalGraph& g) {
  const PathCensus census = path_census(g);
  NearZero out;
  out.k = census.k;
  out.d_k = census.d.at(census.k);
  auto next = census.d.find(census.k + 1);
  out.d_k1 = next == census.d.end() ? 0 : next->second;
  out.protocol = bounded_protocol(g, census.k + 1);
  if (!is_finite(g, out.protocol).finite) {
    throw Error(ErrorCode::InfiniteProtocol, "bounded protocol A^(k+1) is not finite");
  }
  return out;
}

NearOne near_one_expansion(const TwoTerminalGraph& g, const ScanOptions& opts) {
  const CutCensus census = cut_census(g, opts);
  return {census.e, census.c.at(census.e)};
}

int robustness(const TwoTerminalGraph& g, const Protocol& a, const ScanOptions& opts) {
  if (!is_finite(g, a).finite) throw Error(ErrorCode::InfiniteProtocol, "robustness needs a finite protocol");
  const WalkTester tester(g, a);
  const auto failures = count_by_size(
      g, [&](EdgeMask alive) { return g.terminals_connected(alive) && !tester.admits(alive); }, opts);
  const int m = static_cast<int>(g.edge_count());
  // The largest failing survivor set gives the smallest failing removal.
  for (int alive = m; alive >= 0; --alive)
    if (failures[static_cast<std::size_t>(alive)] != 0) return m - alive - 1;
  return m;
}

}  // namespace relayopt
