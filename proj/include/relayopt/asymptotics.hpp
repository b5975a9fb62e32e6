#pragma once

#include <cstddef>
#include <cstdint>
#include <map>

#include "relayopt/graph.hpp"
#include "relayopt/reliability.hpp"

namespace relayopt {

/// Shortest s,r distance k and d[j] = number of s,r-paths of length j.
struct PathCensus {
  std::size_t k = 0;
  std::map<std::size_t, std::uint64_t> d;
};

/// Minimum cut size e and c[j] = number of j-edge sets whose removal
/// disconnects s from r (zero entries omitted).
struct CutCensus {
  std::size_t e = 0;
  std::map<std::size_t, std::uint64_t> c;
};

/// Throws Error(InvalidArgument) when s and r are disconnected.
PathCensus path_census(const TwoTerminalGraph& g);
CutCensus cut_census(const TwoTerminalGraph& g, const ScanOptions& opts = {});

struct NearZero {
  std::size_t k = 0;
  std::uint64_t d_k = 0;
  std::uint64_t d_k1 = 0;
  /// Instructions on s,r-paths of length at most k+1; always finite.
  Protocol protocol;
};

/// Head of rho_hat near p = 0: d_k p^k + d_{k+1} p^{k+1} + O(p^{k+2}).
NearZero near_zero_expansion(const TwoTerminalGraph& g);

struct NearOne {
  std::size_t e = 0;
  std::uint64_t c_e = 0;
};

/// Head of rho_hat near p = 1: 1 - c_e q^e + O(q^{e+1}) with q = 1 - p.
NearOne near_one_expansion(const TwoTerminalGraph& g, const ScanOptions& opts = {});

/// Largest k <= m such that every failure set of at most k edges that keeps
/// s and r connected still leaves an A-walk; -1 if A has no A-walk on G
/// itself while s,r are connected. Throws Error(InfiniteProtocol) for
/// infinite A.
int robustness(const TwoTerminalGraph& g, const Protocol& a, const ScanOptions& opts = {});

}  // namespace relayopt
