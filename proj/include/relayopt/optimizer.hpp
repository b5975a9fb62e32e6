#pragma once

#include <cstddef>
#include <vector>

#include "relayopt/graph.hpp"
#include "relayopt/polynomial.hpp"
#include "relayopt/reliability.hpp"
#include "relayopt/roots.hpp"

namespace relayopt {

struct OptimizerOptions {
  ScanOptions scan;
  /// Guard on the removal-set search (subsets tested) and on the number of
  /// essential circuits enumerated.
  std::size_t max_candidates = std::size_t{1} << 20;
};

struct DiscrepancyReport {
  Protocol removed;
  Polynomial d;
  bool finite = false;
};

/// d_I = rho - rho_{A*-I}. Throws Error(NotInCfp) unless I is a subset of A*.
DiscrepancyReport discrepancy(const TwoTerminalGraph& g, const Protocol& removed,
                              const EdgeProbabilityMap& prob, const ScanOptions& opts = {});

/// Probability of the union of the events Z_x (x in I): some s,r-path through
/// instruction x survives while no (A*-I)-walk does. Equals d_I.
Polynomial discrepancy_by_events(const TwoTerminalGraph& g, const Protocol& removed,
                                 const EdgeProbabilityMap& prob, const ScanOptions& opts = {});

/// Instructions of A* lying on at least one essential circuit of A*.
Protocol circuit_borne_instructions(const TwoTerminalGraph& g, std::size_t circuit_limit = 1'000'000);

/// Inclusion-minimal I drawn from the circuit-borne instructions with A*-I
/// finite, in increasing size and then lexicographic order. {∅} when A* is
/// already finite.
std::vector<Protocol> minimal_removal_sets(const TwoTerminalGraph& g, const OptimizerOptions& opts = {});

struct Candidate {
  Protocol removed;
  Polynomial rho;
};

/// rho_{A*-I} for every minimal removal set I.
std::vector<Candidate> candidate_protocols(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                                           const OptimizerOptions& opts = {});

struct PointOptimum {
  Rational value;
  Polynomial poly;
  Protocol removed;
};

/// max over minimal removal sets of rho_{A*-I}(p0); ties go to the
/// lexicographically least removal set.
PointOptimum rho_hat_at(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob, const Rational& p0,
                        const OptimizerOptions& opts = {});

/// Independent oracle: max of rho_A(p0) over every finite A ⊆ A*.
/// Requires |A*| <= 22.
Rational brute_force_rho_hat(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                             const Rational& p0, const ScanOptions& opts = {});

struct Breakpoint {
  AlgebraicNumber point;
  /// Root multiplicity of the difference of the two adjacent pieces.
  int order = 0;
};

struct Piece {
  Polynomial poly;
  Protocol removed;
};

/// pieces[i] is valid between breakpoints[i-1] and breakpoints[i], with 0 and
/// 1 as the outer ends; pieces.size() == breakpoints.size() + 1.
struct PiecewiseReliability {
  std::vector<Breakpoint> breakpoints;
  std::vector<Piece> pieces;
};

/// Exact upper envelope on (0,1). Candidates with identical polynomials
/// collapse onto the first occurrence.
PiecewiseReliability upper_envelope(const std::vector<Candidate>& candidates);

PiecewiseReliability rho_hat_piecewise(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                                       const OptimizerOptions& opts = {});
inline PiecewiseReliability rho_hat_piecewise(const TwoTerminalGraph& g,
                                              const OptimizerOptions& opts = {}) {
  return rho_hat_piecewise(g, EdgeProbabilityMap::uniform(g), opts);
}

/// rho - rho_hat, on the same breakpoints as rho_hat_piecewise.
PiecewiseReliability min_discrepancy(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                                     const OptimizerOptions& opts = {});

/// True iff no breakpoint lies in the punctured neighbourhood of a/b of
/// radius (3b)^(-edge_count).
bool breakpoint_free_check(PiecewiseReliability& pw, std::size_t edge_count, long a, long b);
bool breakpoint_free_check(const TwoTerminalGraph& g, long a, long b, const OptimizerOptions& opts = {});

/// The optimal finite SPFP associated with a winning removal set.
Protocol optimal_protocol(const TwoTerminalGraph& g, const Protocol& removed);

}  // namespace relayopt
