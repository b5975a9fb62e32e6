#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "relayopt/graph.hpp"
#include "relayopt/polynomial.hpp"
#include "relayopt/protocol.hpp"

namespace relayopt {

/// Per-trial cap on counted copies.
inline constexpr std::uint64_t kMaxCopiesPerTrial = 1'000'000;

struct TrialReport {
  std::uint64_t trials = 0;
  std::uint64_t deliveries = 0;
  Rational estimate;
  double std_error = 0.0;
  /// copies received by r -> number of trials; present for finite protocols.
  std::optional<std::map<std::uint64_t, std::uint64_t>> copies;

  bool operator==(const TrialReport&) const = default;
};

struct SimulationOptions {
  unsigned threads = 0;
  /// Throw Error(InfiniteProtocol) instead of omitting copies.
  bool require_copies = false;
};

/// Number of surviving A-walks for each survivor set, by path counting over
/// the acyclic useful part of the state graph. Requires a finite protocol.
class CopyCounter {
 public:
  CopyCounter(const TwoTerminalGraph& g, const Protocol& a);
  /// Throws Error(GuardExceeded) past kMaxCopiesPerTrial.
  std::uint64_t count(EdgeMask alive) const;

 private:
  std::vector<StateId> order_;  // reverse topological order of useful states
  std::vector<std::vector<StateId>> succ_;
  std::vector<char> accepting_;
  std::vector<StateId> initial_;
};

/// Keyed hash deciding whether `edge` survives in trial `trial`: the
/// survivor sets of distinct trials are independent and do not depend on the
/// order in which trials run.
std::uint64_t trial_hash(std::uint64_t seed, std::uint64_t trial, std::uint64_t edge);

/// Edge survival mask of one trial at constant probability p0.
EdgeMask sample_survivors(const TwoTerminalGraph& g, const Rational& p0, std::uint64_t seed,
                          std::uint64_t trial);

/// Monte Carlo estimate of rho_A(G, p0). Requires 0 < p0 < 1.
TrialReport simulate(const TwoTerminalGraph& g, const Protocol& a, const Rational& p0,
                     std::uint64_t trials, std::uint64_t seed, const SimulationOptions& opts = {});

/// Expected number of copies r receives: the sum over A-walks of the
/// probability that all of the walk's distinct edges survive.
Polynomial expected_copies(const TwoTerminalGraph& g, const Protocol& a, const EdgeProbabilityMap& prob);

}  // namespace relayopt
