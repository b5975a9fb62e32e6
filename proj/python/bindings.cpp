#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "relayopt/error.hpp"
#include "relayopt/io.hpp"

namespace py = pybind11;
using namespace relayopt;

namespace {

// Everything crosses the boundary as JSON text; the Python layer converts to dicts.
std::string dump(const Json& j) { return j.dump(); }

GraphDocument load(const std::string& graph) { return graph_from_json(parse_json(graph)); }

Protocol load_protocol(const TwoTerminalGraph& g, const std::optional<std::string>& protocol) {
  return protocol ? protocol_from_json(g, parse_json(*protocol)) : cfp(g);
}

ScanOptions scan(unsigned threads, std::size_t max_edges) { return ScanOptions{threads, max_edges}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact reliability of message-forwarding protocols on two-terminal graphs (JSON-text interface)";

  // Owned for the life of the interpreter.
  static PyObject* error_type = PyErr_NewException("relayopt._core.RelayoptError", PyExc_ValueError, nullptr);
  m.attr("RelayoptError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      static constexpr const char* kinds[] = {"usage", "domain", "guard"};
      py::object inst = py::handle(error_type)(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      inst.attr("kind") = kinds[static_cast<int>(e.kind())];
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  using Opt = std::optional<std::string>;
  const auto release = py::call_guard<py::gil_scoped_release>();

  m.def("validate", [](const std::string& graph) {
    auto doc = load(graph);
    return dump(graph_to_json(doc.graph, &doc.prob));
  }, py::arg("graph"), release);

  m.def("fixture", [](const std::string& name, std::size_t vertices) {
    if (name == "b0") return dump(graph_to_json(fixture_b0()));
    if (name == "path") return dump(graph_to_json(fixture_path(vertices)));
    throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'");
  }, py::arg("name"), py::arg("vertices") = 3, release);

  m.def("cfp", [](const std::string& graph) {
    auto g = load(graph).graph;
    return dump(protocol_to_json(g, cfp(g)));
  }, py::arg("graph"), release);

  m.def("paths", [](const std::string& graph, const Opt& protocol) {
    auto g = load(graph).graph;
    return dump(walks_to_json(g, protocol ? a_paths(g, load_protocol(g, protocol)) : enumerate_sr_paths(g)));
  }, py::arg("graph"), py::arg("protocol") = py::none(), release);

  m.def("is_finite", [](const std::string& graph, const Opt& protocol) {
    auto g = load(graph).graph;
    auto result = is_finite(g, load_protocol(g, protocol));
    return dump(Json{{"finite", result.finite},
                     {"witness", result.finite ? Json(nullptr) : circuit_to_json(g, result.witness)}});
  }, py::arg("graph"), py::arg("protocol") = py::none(), release);

  m.def("spfp_reduce", [](const std::string& graph, const Opt& protocol) {
    auto g = load(graph).graph;
    return dump(protocol_to_json(g, spfp_reduce(g, load_protocol(g, protocol))));
  }, py::arg("graph"), py::arg("protocol") = py::none(), release);

  m.def("reliability", [](const std::string& graph, const Opt& protocol, bool prime, unsigned threads,
                          std::size_t max_edges) {
    auto doc = load(graph);
    auto a = load_protocol(doc.graph, protocol);
    auto opts = scan(threads, max_edges);
    return dump(polynomial_to_json(prime ? rho_prime_A(doc.graph, a, doc.prob, opts) : rho_A(doc.graph, a, doc.prob, opts)));
  }, py::arg("graph"), py::arg("protocol") = py::none(), py::arg("prime") = false, py::arg("threads") = 0,
     py::arg("max_edges") = 24, release);

  m.def("evaluate", [](const std::string& poly, const std::string& x) {
    return dump(rational_to_json(polynomial_from_json(parse_json(poly))(parse_rational(x))));
  }, py::arg("poly"), py::arg("x"), release);

  m.def("rho_hat_at", [](const std::string& graph, const std::string& p0, unsigned threads, std::size_t max_edges,
                         std::size_t max_candidates) {
    auto doc = load(graph);
    auto best = rho_hat_at(doc.graph, doc.prob, parse_rational(p0),
                           OptimizerOptions{scan(threads, max_edges), max_candidates});
    return dump(Json{{"value", rational_to_json(best.value)},
                     {"poly", polynomial_to_json(best.poly)},
                     {"removed", instructions_to_json(doc.graph, best.removed)}});
  }, py::arg("graph"), py::arg("p0"), py::arg("threads") = 0, py::arg("max_edges") = 24,
     py::arg("max_candidates") = std::size_t{1} << 20, release);

  m.def("rho_hat_piecewise", [](const std::string& graph, unsigned threads, std::size_t max_edges,
                                std::size_t max_candidates) {
    auto doc = load(graph);
    return dump(piecewise_to_json(
        doc.graph, rho_hat_piecewise(doc.graph, doc.prob, OptimizerOptions{scan(threads, max_edges), max_candidates})));
  }, py::arg("graph"), py::arg("threads") = 0, py::arg("max_edges") = 24,
     py::arg("max_candidates") = std::size_t{1} << 20, release);

  m.def("discrepancy", [](const std::string& graph, const std::string& removed, unsigned threads,
                          std::size_t max_edges) {
    auto doc = load(graph);
    auto report = discrepancy(doc.graph, protocol_from_json(doc.graph, parse_json(removed)), doc.prob,
                              scan(threads, max_edges));
    return dump(Json{{"poly", polynomial_to_json(report.d)}, {"finite", report.finite}});
  }, py::arg("graph"), py::arg("removed"), py::arg("threads") = 0, py::arg("max_edges") = 24, release);

  m.def("min_discrepancy", [](const std::string& graph, unsigned threads, std::size_t max_edges,
                              std::size_t max_candidates) {
    auto doc = load(graph);
    return dump(piecewise_to_json(
        doc.graph, min_discrepancy(doc.graph, doc.prob, OptimizerOptions{scan(threads, max_edges), max_candidates})));
  }, py::arg("graph"), py::arg("threads") = 0, py::arg("max_edges") = 24,
     py::arg("max_candidates") = std::size_t{1} << 20, release);

  m.def("series", [](const std::string& a, const std::string& b) {
    return dump(graph_to_json(series(load(a).graph, load(b).graph)));
  }, py::arg("g1"), py::arg("g2"), release);

  m.def("parallel", [](const std::string& a, const std::string& b) {
    return dump(graph_to_json(parallel(load(a).graph, load(b).graph)));
  }, py::arg("g1"), py::arg("g2"), release);

  m.def("expand", [](const std::string& graph, const std::string& u, const std::string& v, const std::string& with) {
    auto g = load(graph).graph;
    auto x = g.find(u);
    auto y = g.find(v);
    if (!x || !y || !g.edge_id(*x, *y)) throw Error(ErrorCode::UnknownEdge, "unknown edge '" + u + "-" + v + "'");
    return dump(graph_to_json(expand(g, *x, *y, load(with).graph).result));
  }, py::arg("graph"), py::arg("u"), py::arg("v"), py::arg("with_graph"), release);

  m.def("crossing_pair", [](const std::vector<int>& multiplicities) {
    auto [h1, h2] = build_crossing_pair(multiplicities);
    const Polynomial d = delta_rho(h1, h2);
    return dump(Json{{"h1", sptree_to_json(h1)},
                     {"h2", sptree_to_json(h2)},
                     {"g1", graph_to_json(h1.graph())},
                     {"g2", graph_to_json(h2.graph())},
                     {"edges", {h1.edge_count(), h2.edge_count()}},
                     {"delta", polynomial_to_json(d)},
                     {"profile", profile_to_json(profile(d))}});
  }, py::arg("profile"), release);

  m.def("breakpoint_graph", [](const std::vector<int>& orders) {
    return dump(graph_to_json(build_breakpoint_graph(orders)));
  }, py::arg("orders"), release);

  m.def("census", [](const std::string& graph, unsigned threads, std::size_t max_edges) {
    auto g = load(graph).graph;
    auto cc = cut_census(g, scan(threads, max_edges));
    Json j = path_census_to_json(path_census(g));
    const Json cuts = cut_census_to_json(cc);
    for (const auto& [k, v] : cuts.items()) j[k] = v;
    j["c_e"] = cc.c.at(cc.e);
    return dump(j);
  }, py::arg("graph"), py::arg("threads") = 0, py::arg("max_edges") = 24, release);

  m.def("near_zero", [](const std::string& graph) {
    auto g = load(graph).graph;
    auto nz = near_zero_expansion(g);
    return dump(Json{{"k", nz.k},
                     {"d", {{std::to_string(nz.k), nz.d_k}, {std::to_string(nz.k + 1), nz.d_k1}}},
                     {"protocol", instructions_to_json(g, nz.protocol)}});
  }, py::arg("graph"), release);

  m.def("near_one", [](const std::string& graph, unsigned threads, std::size_t max_edges) {
    auto no = near_one_expansion(load(graph).graph, scan(threads, max_edges));
    return dump(Json{{"e", no.e}, {"c_e", no.c_e}});
  }, py::arg("graph"), py::arg("threads") = 0, py::arg("max_edges") = 24, release);

  m.def("robustness", [](const std::string& graph, const Opt& protocol, unsigned threads, std::size_t max_edges) {
    auto g = load(graph).graph;
    return robustness(g, load_protocol(g, protocol), scan(threads, max_edges));
  }, py::arg("graph"), py::arg("protocol") = py::none(), py::arg("threads") = 0, py::arg("max_edges") = 24, release);

  m.def("simulate", [](const std::string& graph, const std::string& p0, std::uint64_t trials, std::uint64_t seed,
                       const Opt& protocol, unsigned threads) {
    auto g = load(graph).graph;
    SimulationOptions opts;
    opts.threads = threads;
    return dump(trial_report_to_json(simulate(g, load_protocol(g, protocol), parse_rational(p0), trials, seed, opts)));
  }, py::arg("graph"), py::arg("p"), py::arg("trials"), py::arg("seed"), py::arg("protocol") = py::none(),
     py::arg("threads") = 0, release);
}
