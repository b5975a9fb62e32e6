#pragma once

// JSON encodings of graphs, protocols, polynomials and reports. Rationals are
// always written as "a/b" strings (or integers as "n").

#include <json.hpp>

#include "relayopt/asymptotics.hpp"
#include "relayopt/constructions.hpp"
#include "relayopt/graph.hpp"
#include "relayopt/optimizer.hpp"
#include "relayopt/protocol.hpp"
#include "relayopt/reliability.hpp"
#include "relayopt/simulator.hpp"

namespace relayopt {

using Json = nlohmann::ordered_json;

/// Parses text; malformed input becomes Error(Parse).
Json parse_json(std::string_view text);

struct GraphDocument {
  TwoTerminalGraph graph;
  EdgeProbabilityMap prob;
};

/// {"vertices":[...],"edges":[[u,v],...],"s":..,"r":..,"prob":{"default":..,"overrides":{"u-v":..}}};
/// "prob" is optional and defaults to p on every edge.
GraphDocument graph_from_json(const Json& j);
/// The "prob" block is written only for non-uniform maps.
Json graph_to_json(const TwoTerminalGraph& g, const EdgeProbabilityMap* prob = nullptr);

Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j);
/// Ascending coefficient strings.
Json polynomial_to_json(const Polynomial& f);
Polynomial polynomial_from_json(const Json& j);
/// "p", a rational string, or a coefficient array.
Polynomial probability_from_json(const Json& j);
Json probability_to_json(const Polynomial& f);

/// {"instructions":[[u,v,w],...]}
Protocol protocol_from_json(const TwoTerminalGraph& g, const Json& j);
Json protocol_to_json(const TwoTerminalGraph& g, const Protocol& a);
/// Bare array of label triples.
Json instructions_to_json(const TwoTerminalGraph& g, const Protocol& a);

Json walks_to_json(const TwoTerminalGraph& g, const std::vector<Walk>& walks);
Json circuit_to_json(const TwoTerminalGraph& g, const EssentialCircuit& c);
Json spectrum_to_json(const SurvivalSpectrum& s);
/// ["lo","hi"]
Json interval_to_json(const AlgebraicNumber& x);
Json piecewise_to_json(const TwoTerminalGraph& g, const PiecewiseReliability& pw);
Json profile_to_json(const std::optional<Profile>& profile);

Json sptree_to_json(const SPTree& t);
SPTree sptree_from_json(const Json& j);

Json path_census_to_json(const PathCensus& c);
Json cut_census_to_json(const CutCensus& c);
Json trial_report_to_json(const TrialReport& r);

}  // namespace relayopt
