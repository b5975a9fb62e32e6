#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "relayopt/graph.hpp"
#include "relayopt/polynomial.hpp"
#include "relayopt/protocol.hpp"

namespace relayopt {

/// Hard ceiling for exhaustive subset scans: the compact state machine keeps
/// all 2m traversal states in one 64-bit word.
inline constexpr std::size_t kMaxScanEdges = 32;

struct ScanOptions {
  /// Worker threads; 0 means RELAYOPT_THREADS from the environment, else 1.
  unsigned threads = 0;
  /// Resource guard on |E(G)| for 2^m scans.
  std::size_t max_edges = 24;
};

unsigned resolve_threads(unsigned requested);

/// Answers "does some A-walk survive?" for edge subsets with bit-parallel
/// reachability over the traversal states.
class WalkTester {
 public:
  WalkTester(const TwoTerminalGraph& g, const Protocol& a);
  bool admits(EdgeMask alive) const;

 private:
  std::vector<std::uint64_t> succ_;
  std::uint64_t initial_ = 0;
  std::uint64_t accepting_ = 0;
};

/// True iff some A-walk uses only edges of `alive`.
bool subset_admits_walk(const TwoTerminalGraph& g, const Protocol& a, EdgeMask alive);

enum class SpectrumFlavor { Walk, Path };

/// counts[i] = number of i-edge subsets that contain an A-walk (Walk flavour)
/// or the edge set of an A-path (Path flavour).
struct SurvivalSpectrum {
  std::vector<std::uint64_t> counts;
  SpectrumFlavor flavor = SpectrumFlavor::Walk;
};

SurvivalSpectrum walk_spectrum(const TwoTerminalGraph& g, const Protocol& a,
                               const ScanOptions& opts = {});
SurvivalSpectrum path_spectrum(const TwoTerminalGraph& g, const Protocol& a,
                               const ScanOptions& opts = {});

/// sum_i a_i p^i (1-p)^(m-i)
Polynomial polynomial_from_spectrum(const SurvivalSpectrum& spectrum);

/// Counts subsets of each size satisfying `pred`, scanning all 2^m subsets.
std::vector<std::uint64_t> count_by_size(const TwoTerminalGraph& g,
                                         const std::function<bool(EdgeMask)>& pred,
                                         const ScanOptions& opts = {});

/// Exact probability that the surviving edge set satisfies `pred` when edge e
/// survives independently with probability prob[e]. Edges with identical
/// probability polynomials are pooled, so the scan only tallies how many
/// survivors fall in each pool.
Polynomial survival_probability(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                                const std::function<bool(EdgeMask)>& pred,
                                const ScanOptions& opts = {});

/// Probability that some A-walk survives.
Polynomial rho_A(const TwoTerminalGraph& g, const Protocol& a, const EdgeProbabilityMap& prob,
                 const ScanOptions& opts = {});
/// Probability that the edge set of some A-path survives.
Polynomial rho_prime_A(const TwoTerminalGraph& g, const Protocol& a, const EdgeProbabilityMap& prob,
                       const ScanOptions& opts = {});
/// Same quantity as rho_prime_A by inclusion-exclusion over the A-paths
/// (at most 20 paths).
Polynomial rho_prime_inclusion_exclusion(const TwoTerminalGraph& g, const Protocol& a,
                                         const EdgeProbabilityMap& prob);
/// Two-terminal reliability, computed as rho_A of the complete forwarding
/// protocol.
Polynomial rho(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob, const ScanOptions& opts = {});
/// Two-terminal reliability by direct connectivity of each subset.
Polynomial rho_connectivity(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                            const ScanOptions& opts = {});

/// Guard check shared by all scans; throws Error(GuardExceeded).
void check_scan_size(const TwoTerminalGraph& g, const ScanOptions& opts);

}  // namespace relayopt
