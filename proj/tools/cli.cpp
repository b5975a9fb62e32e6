#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "relayopt/error.hpp"
#include "relayopt/io.hpp"

namespace relayopt::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read '" + path + "'");
  return slurp(f);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

// Graph files may also hold a series-parallel tree.
TwoTerminalGraph graph_or_tree(const Json& j) {
  if (j.is_object() && (j.contains("op") || j.contains("edge"))) return sptree_from_json(j).graph();
  return graph_from_json(j).graph;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 1;
    case ErrorKind::Domain: return 2;
    case ErrorKind::Guard: return 3;
  }
  return 2;
}

void report_error(std::ostream& err, std::string_view code, std::string_view kind, const std::string& message) {
  Json j{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
  err << j.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact reliability toolkit for message-forwarding protocols on two-terminal graphs", "relayopt"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 0;
  std::size_t max_edges = 24;
  std::size_t max_candidates = std::size_t{1} << 20;
  bool quiet = false;
  bool pretty = false;
  std::string graph_path = "-";
  app.add_option("--threads", threads, "Worker threads for subset scans (default: RELAYOPT_THREADS or 1)");
  app.add_option("--max-edges", max_edges, "Refuse 2^m scans beyond this many edges")->check(CLI::Range(1, 32));
  app.add_option("--max-candidates", max_candidates, "Guard on removal-set search");
  app.add_flag("--quiet", quiet, "Suppress progress messages");
  app.add_flag("--pretty", pretty, "Indent JSON output");
  app.add_option("--graph", graph_path, "Graph JSON file ('-' for standard input)");

  // Deferred so every flag is validated before work starts.
  std::function<Json()> action;

  auto scan = [&] { return ScanOptions{threads, max_edges}; };
  auto optimizer = [&] { return OptimizerOptions{scan(), max_candidates}; };
  auto progress = [&](const std::string& message) {
    if (!quiet) err << "relayopt: " << message << '\n';
  };
  auto input = [&] {
    return graph_from_json(parse_json(graph_path == "-" ? slurp(in) : read_file(graph_path)));
  };
  auto load_protocol = [&](const TwoTerminalGraph& g, const std::string& path) {
    return path.empty() ? cfp(g) : protocol_from_json(g, parse_json(read_file(path)));
  };
  auto parse_point = [](const std::string& text) {
    try {
      return parse_rational(text);
    } catch (const Error&) {
      throw UsageError("expected a rational a/b, got '" + text + "'");
    }
  };

  auto* validate = app.add_subcommand("validate", "Check a graph and print it in canonical form");
  validate->callback([&] {
    action = [&] {
      auto doc = input();
      return graph_to_json(doc.graph, &doc.prob);
    };
  });

  app.add_subcommand("cfp", "Complete forwarding protocol")->callback([&] {
    action = [&] { auto g = input().graph; return protocol_to_json(g, cfp(g)); };
  });

  std::string paths_protocol;
  auto* paths = app.add_subcommand("paths", "s,r-paths (or A-paths with --protocol)");
  paths->add_option("--protocol", paths_protocol, "Protocol JSON file");
  paths->callback([&] {
    action = [&] {
      auto g = input().graph;
      return walks_to_json(g, paths_protocol.empty() ? enumerate_sr_paths(g) : a_paths(g, load_protocol(g, paths_protocol)));
    };
  });

  bool witness = false;
  std::string finite_protocol;
  auto* finite = app.add_subcommand("finite", "Decide finiteness of a protocol (default: the CFP)");
  finite->add_flag("--witness", witness, "Report an essential circuit when infinite");
  finite->add_option("--protocol", finite_protocol, "Protocol JSON file");
  finite->callback([&] {
    action = [&] {
      auto g = input().graph;
      auto result = is_finite(g, load_protocol(g, finite_protocol));
      Json j{{"finite", result.finite}};
      if (witness) j["witness"] = result.finite ? Json(nullptr) : circuit_to_json(g, result.witness);
      return j;
    };
  });

  std::string reduce_protocol;
  auto* reduce = app.add_subcommand("spfp-reduce", "Strongly essential protocol dominating a finite protocol");
  reduce->add_option("--protocol", reduce_protocol, "Protocol JSON file (default: the CFP)");
  reduce->callback([&] {
    action = [&] {
      auto g = input().graph;
      return protocol_to_json(g, spfp_reduce(g, load_protocol(g, reduce_protocol)));
    };
  });

  std::string rel_protocol, rel_at;
  bool prime = false;
  auto* reliability = app.add_subcommand("reliability", "Exact rho_A (or rho'_A with --prime)");
  reliability->add_option("--protocol", rel_protocol, "Protocol JSON file (default: the CFP)");
  reliability->add_flag("--prime", prime, "Count only A-paths");
  reliability->add_option("--at", rel_at, "Also evaluate at p = a/b");
  reliability->callback([&] {
    if (!rel_at.empty()) parse_point(rel_at);
    action = [&] {
      auto doc = input();
      auto a = load_protocol(doc.graph, rel_protocol);
      progress("scanning 2^" + std::to_string(doc.graph.edge_count()) + " edge subsets");
      Polynomial f = prime ? rho_prime_A(doc.graph, a, doc.prob, scan()) : rho_A(doc.graph, a, doc.prob, scan());
      Json j{{"poly", polynomial_to_json(f)}};
      if (!rel_at.empty()) j["value"] = rational_to_json(f(parse_point(rel_at)));
      return j;
    };
  });

  std::string hat_at;
  bool piecewise = false;
  auto* rho_hat = app.add_subcommand("rho-hat", "Optimal finite-protocol reliability");
  auto* at_opt = rho_hat->add_option("--at", hat_at, "Evaluate at p = a/b");
  auto* pw_opt = rho_hat->add_flag("--piecewise", piecewise, "Piecewise polynomial over (0,1)");
  at_opt->excludes(pw_opt);
  rho_hat->callback([&] {
    if (hat_at.empty() && !piecewise) throw UsageError("rho-hat needs --at a/b or --piecewise");
    if (!hat_at.empty()) parse_point(hat_at);
    action = [&] {
      auto doc = input();
      progress("searching removal sets");
      if (piecewise) return piecewise_to_json(doc.graph, rho_hat_piecewise(doc.graph, doc.prob, optimizer()));
      auto best = rho_hat_at(doc.graph, doc.prob, parse_point(hat_at), optimizer());
      return Json{{"value", rational_to_json(best.value)},
                  {"poly", polynomial_to_json(best.poly)},
                  {"removed", instructions_to_json(doc.graph, best.removed)}};
    };
  });

  std::string remove_path;
  auto* disc = app.add_subcommand("discrepancy", "rho - rho_{A*-I} for a removal set I");
  disc->add_option("--remove", remove_path, "Protocol JSON file holding I")->required();
  disc->callback([&] {
    action = [&] {
      auto doc = input();
      auto report = discrepancy(doc.graph, load_protocol(doc.graph, remove_path), doc.prob, scan());
      return Json{{"poly", polynomial_to_json(report.d)}, {"finite", report.finite}};
    };
  });

  app.add_subcommand("min-discrepancy", "Piecewise minimum discrepancy rho - rho_hat")->callback([&] {
    action = [&] {
      auto doc = input();
      progress("searching removal sets");
      return piecewise_to_json(doc.graph, min_discrepancy(doc.graph, doc.prob, optimizer()));
    };
  });

  std::string op;
  std::vector<std::string> operands;
  auto* compose = app.add_subcommand("compose", "Series, parallel or Kelmans composition of graph/tree files");
  compose->add_option("--op", op, "series | parallel | kelmans")
      ->required()
      ->check(CLI::IsMember({"series", "parallel", "kelmans"}));
  compose->add_option("files", operands, "Operand files (2, or 4 for kelmans)")->required();
  compose->callback([&] {
    const std::size_t need = op == "kelmans" ? 4 : 2;
    if (operands.size() != need) throw UsageError(op + " needs " + std::to_string(need) + " operand files");
    action = [&] {
      std::vector<Json> docs;
      for (const auto& f : operands) docs.push_back(parse_json(read_file(f)));
      const bool trees = std::all_of(docs.begin(), docs.end(), [](const Json& j) {
        return j.is_object() && (j.contains("op") || j.contains("edge"));
      });
      if (op == "kelmans" && trees) {
        auto [h1, h2] = kelmans_compose(sptree_from_json(docs[0]), sptree_from_json(docs[1]), sptree_from_json(docs[2]),
                                        sptree_from_json(docs[3]));
        return Json{{"h1", sptree_to_json(h1)},
                    {"h2", sptree_to_json(h2)},
                    {"delta", polynomial_to_json(delta_rho(h1, h2))}};
      }
      std::vector<TwoTerminalGraph> gs;
      for (const auto& d : docs) gs.push_back(graph_or_tree(d));
      if (op == "kelmans") {
        auto [h1, h2] = kelmans_compose(gs[0], gs[1], gs[2], gs[3]);
        return Json{{"h1", graph_to_json(h1)},
                    {"h2", graph_to_json(h2)},
                    {"delta", polynomial_to_json(delta_rho(h1, h2, scan()))}};
      }
      return graph_to_json(op == "series" ? series(gs[0], gs[1]) : parallel(gs[0], gs[1]));
    };
  });

  std::string edge_key, with_path;
  auto* expand_cmd = app.add_subcommand("expand", "Replace an edge u-v by a two-terminal graph");
  expand_cmd->add_option("--edge", edge_key, "Edge u-v; u becomes the inserted s, v the inserted r")->required();
  expand_cmd->add_option("--with", with_path, "Graph or tree JSON file to insert")->required();
  expand_cmd->callback([&] {
    action = [&] {
      auto g1 = input().graph;
      auto h = graph_or_tree(parse_json(read_file(with_path)));
      // Orientation follows the key as written, so try each split point.
      for (std::size_t pos = edge_key.find('-'); pos != std::string::npos; pos = edge_key.find('-', pos + 1)) {
        auto x = g1.find(edge_key.substr(0, pos));
        auto y = g1.find(edge_key.substr(pos + 1));
        if (x && y && g1.edge_id(*x, *y)) return graph_to_json(expand(g1, *x, *y, h).result);
      }
      throw Error(ErrorCode::UnknownEdge, "unknown edge '" + edge_key + "'");
    };
  });

  std::string profile_text;
  auto* crossing = app.add_subcommand("crossing-pair", "Series-parallel pair whose rho difference has a given root profile");
  crossing->add_option("--profile", profile_text, "Comma-separated multiplicities, e.g. 1,1,3")->required();
  crossing->callback([&] {
    parse_int_list(profile_text);
    action = [&] {
      auto [h1, h2] = build_crossing_pair(parse_int_list(profile_text));
      const Polynomial d = delta_rho(h1, h2);
      return Json{{"h1", sptree_to_json(h1)},
                  {"h2", sptree_to_json(h2)},
                  {"edges", {h1.edge_count(), h2.edge_count()}},
                  {"delta", polynomial_to_json(d)},
                  {"profile", profile_to_json(profile(d))}};
    };
  });

  std::string orders_text;
  auto* bp = app.add_subcommand("breakpoint-graph", "B0 expanded so that rho_hat has breakpoints of the given orders");
  bp->add_option("--orders", orders_text, "Comma-separated odd orders, e.g. 1,3")->required();
  bp->callback([&] {
    parse_int_list(orders_text);
    action = [&] { return graph_to_json(build_breakpoint_graph(parse_int_list(orders_text))); };
  });

  app.add_subcommand("census", "Path census by length and cut census by size")->callback([&] {
    action = [&] {
      auto g = input().graph;
      auto pc = path_census(g);
      auto cc = cut_census(g, scan());
      Json j = path_census_to_json(pc);
      const Json cuts = cut_census_to_json(cc);
      for (const auto& [k, v] : cuts.items()) j[k] = v;
      j["c_e"] = cc.c.at(cc.e);
      return j;
    };
  });

  app.add_subcommand("near-zero", "Leading terms of rho_hat at p = 0")->callback([&] {
    action = [&] {
      auto g = input().graph;
      auto nz = near_zero_expansion(g);
      return Json{{"k", nz.k},
                  {"d", {{std::to_string(nz.k), nz.d_k}, {std::to_string(nz.k + 1), nz.d_k1}}},
                  {"protocol", instructions_to_json(g, nz.protocol)}};
    };
  });

  app.add_subcommand("near-one", "Leading terms of rho_hat at p = 1, in q = 1 - p")->callback([&] {
    action = [&] {
      auto no = near_one_expansion(input().graph, scan());
      return Json{{"e", no.e}, {"c_e", no.c_e}};
    };
  });

  std::string rob_protocol;
  auto* rob = app.add_subcommand("robustness", "Largest k for which a finite protocol is k-robust");
  rob->add_option("--protocol", rob_protocol, "Protocol JSON file (default: the CFP)");
  rob->callback([&] {
    action = [&] {
      auto g = input().graph;
      return Json{{"robustness", robustness(g, load_protocol(g, rob_protocol), scan())}};
    };
  });

  std::string sim_p, sim_protocol;
  std::uint64_t trials = 0, seed = 0;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo delivery and copy counts at constant p");
  sim->add_option("--p", sim_p, "Edge survival probability a/b")->required();
  sim->add_option("--trials", trials, "Number of trials")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "Seed")->required();
  sim->add_option("--protocol", sim_protocol, "Protocol JSON file (default: the CFP)");
  sim->callback([&] {
    parse_point(sim_p);
    action = [&] {
      auto g = input().graph;
      progress("running " + std::to_string(trials) + " trials");
      SimulationOptions opts;
      opts.threads = threads;
      return trial_report_to_json(simulate(g, load_protocol(g, sim_protocol), parse_point(sim_p), trials, seed, opts));
    };
  });

  std::string fixture_name;
  std::size_t fixture_k = 3;
  auto* fixture = app.add_subcommand("fixture", "Emit a built-in graph: b0 or path");
  fixture->add_option("name", fixture_name, "b0 | path")->required()->check(CLI::IsMember({"b0", "path"}));
  fixture->add_option("--vertices", fixture_k, "Vertex count for path")->check(CLI::Range(2, 64));
  fixture->callback([&] {
    action = [&] { return graph_to_json(fixture_name == "b0" ? fixture_b0() : fixture_path(fixture_k)); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", "usage", e.what());
    return 1;
  } catch (const UsageError& e) {
    report_error(err, "usage", "usage", e.what());
    return 1;
  }

  try {
    Json result = action();
    out << (pretty ? result.dump(2) : result.dump()) << '\n';
    return 0;
  } catch (const Error& e) {
    static constexpr std::string_view kinds[] = {"usage", "domain", "guard"};
    report_error(err, to_string(e.code()), kinds[static_cast<int>(e.kind())], e.what());
    return exit_code(e.kind());
  } catch (const UsageError& e) {
    report_error(err, "usage", "usage", e.what());
    return 1;
  }
}

}  // namespace relayopt::cli
