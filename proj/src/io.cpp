#include "relayopt/io.hpp"

#include "relayopt/error.hpp"

namespace relayopt {

namespace {

template <typename F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

std::string point_to_string(const AlgebraicNumber& x) {
  if (x.is_rational()) return to_string(x.lo);
  return to_string(x.lo) + ".." + to_string(x.hi);
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

Json rational_to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
  return guarded("rational", [&] {
    if (j.is_number_integer()) return Rational(j.get<long>());
    return parse_rational(j.get<std::string>());
  });
}

Json polynomial_to_json(const Polynomial& f) { return f.to_strings(); }

Polynomial polynomial_from_json(const Json& j) {
  return guarded("polynomial", [&] {
    if (!j.is_array()) throw Error(ErrorCode::Parse, "polynomial must be a coefficient array");
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return Polynomial(std::move(c));
  });
}

Polynomial probability_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "p") return Polynomial::variable();
  if (j.is_array()) return polynomial_from_json(j);
  return Polynomial::constant(rational_from_json(j));
}

Json probability_to_json(const Polynomial& f) {
  if (f == Polynomial::variable()) return "p";
  if (f.degree() <= 0) return to_string(f.coefficient(0));
  return polynomial_to_json(f);
}

GraphDocument graph_from_json(const Json& j) {
  return guarded("graph", [&] {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "graph must be a JSON object");
    GraphDescription d;
    d.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::Parse, "each edge must be a pair of labels");
      d.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    d.s = j.at("s").get<std::string>();
    d.r = j.at("r").get<std::string>();
    auto g = TwoTerminalGraph::validate(d);
    if (!j.contains("prob")) return GraphDocument{g, EdgeProbabilityMap::uniform(g)};
    const Json& prob = j.at("prob");
    Polynomial fallback = prob.contains("default") ? probability_from_json(prob.at("default")) : Polynomial::variable();
    std::vector<Polynomial> values(g.edge_count(), fallback);
    if (prob.contains("overrides")) {
      for (const auto& [key, value] : prob.at("overrides").items()) values[g.edge_from_key(key)] = probability_from_json(value);
    }
    return GraphDocument{g, EdgeProbabilityMap(g, std::move(values))};
  });
}

Json graph_to_json(const TwoTerminalGraph& g, const EdgeProbabilityMap* prob) {
  Json j;
  j["vertices"] = g.labels();
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({g.label(e.a), g.label(e.b)});
  j["edges"] = edges;
  j["s"] = g.label(g.s());
  j["r"] = g.label(g.r());
  if (prob && !prob->is_uniform()) {
    Json overrides = Json::object();
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if ((*prob)[e] != Polynomial::variable()) overrides[g.edge_key(e)] = probability_to_json((*prob)[e]);
    j["prob"] = {{"default", "p"}, {"overrides", overrides}};
  }
  return j;
}

Protocol protocol_from_json(const TwoTerminalGraph& g, const Json& j) {
  return guarded("protocol", [&] {
    const Json& list = j.is_object() ? j.at("instructions") : j;
    std::vector<std::array<std::string, 3>> triples;
    for (const auto& x : list) {
      if (!x.is_array() || x.size() != 3) throw Error(ErrorCode::Parse, "each instruction must be a label triple");
      triples.push_back({x[0].get<std::string>(), x[1].get<std::string>(), x[2].get<std::string>()});
    }
    return Protocol::from_labels(g, triples);
  });
}

Json instructions_to_json(const TwoTerminalGraph& g, const Protocol& a) {
  Json out = Json::array();
  for (const auto& t : a.to_labels(g)) out.push_back(t);
  return out;
}

Json protocol_to_json(const TwoTerminalGraph& g, const Protocol& a) {
  return {{"instructions", instructions_to_json(g, a)}};
}

Json walks_to_json(const TwoTerminalGraph& g, const std::vector<Walk>& walks) {
  Json out = Json::array();
  for (const auto& w : walks) {
    Json labels = Json::array();
    for (VertexId v : w) labels.push_back(g.label(v));
    out.push_back(labels);
  }
  return out;
}

Json circuit_to_json(const TwoTerminalGraph& g, const EssentialCircuit& c) {
  Json out = Json::array();
  for (const auto& st : c) out.push_back({g.label(st.from), g.label(st.to)});
  return out;
}

Json spectrum_to_json(const SurvivalSpectrum& s) { return s.counts; }

Json interval_to_json(const AlgebraicNumber& x) { return {to_string(x.lo), to_string(x.hi)}; }

Json piecewise_to_json(const TwoTerminalGraph& g, const PiecewiseReliability& pw) {
  Json breakpoints = Json::array();
  for (const auto& b : pw.breakpoints) {
    breakpoints.push_back({{"interval", interval_to_json(b.point)},
                           {"poly", polynomial_to_json(b.point.poly)},
                           {"order", b.order}});
  }
  Json pieces = Json::array();
  for (std::size_t i = 0; i < pw.pieces.size(); ++i) {
    pieces.push_back({{"from", i == 0 ? std::string("0") : point_to_string(pw.breakpoints[i - 1].point)},
                      {"to", i == pw.breakpoints.size() ? std::string("1") : point_to_string(pw.breakpoints[i].point)},
                      {"poly", polynomial_to_json(pw.pieces[i].poly)},
                      {"removed", instructions_to_json(g, pw.pieces[i].removed)}});
  }
  return {{"breakpoints", breakpoints}, {"pieces", pieces}};
}

Json profile_to_json(const std::optional<Profile>& profile) {
  if (!profile) return nullptr;
  Json out = Json::array();
  for (const auto& r : *profile)
    out.push_back({{"interval", interval_to_json(r.root)}, {"multiplicity", r.multiplicity}});
  return out;
}

Json sptree_to_json(const SPTree& t) {
  if (t.kind() == SPTree::Kind::Edge) return {{"edge", true}};
  return {{"op", t.kind() == SPTree::Kind::Series ? "series" : "parallel"},
          {"left", sptree_to_json(t.left())},
          {"right", sptree_to_json(t.right())}};
}

SPTree sptree_from_json(const Json& j) {
  return guarded("series-parallel tree", [&]() -> SPTree {
    if (j.contains("edge")) return SPTree::edge();
    const std::string op = j.at("op").get<std::string>();
    SPTree left = sptree_from_json(j.at("left"));
    SPTree right = sptree_from_json(j.at("right"));
    if (op == "series") return SPTree::series(left, right);
    if (op == "parallel") return SPTree::parallel(left, right);
    throw Error(ErrorCode::Parse, "unknown composition '" + op + "'");
  });
}

Json path_census_to_json(const PathCensus& c) {
  Json d = Json::object();
  for (auto [len, n] : c.d) d[std::to_string(len)] = n;
  return {{"k", c.k}, {"d", d}};
}

Json cut_census_to_json(const CutCensus& c) {
  Json counts = Json::object();
  for (auto [size, n] : c.c) counts[std::to_string(size)] = n;
  return {{"e", c.e}, {"c", counts}};
}

Json trial_report_to_json(const TrialReport& r) {
  Json j{{"trials", r.trials},
         {"deliveries", r.deliveries},
         {"estimate", rational_to_json(r.estimate)},
         {"stderr", r.std_error}};
  if (r.copies) {
    Json h = Json::object();
    for (auto [k, n] : *r.copies) h[std::to_string(k)] = n;
    j["copies"] = h;
  }
  return j;
}

}  // namespace relayopt
