#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "../support/oracles.hpp"
#include "cli.hpp"
#include "relayopt/io.hpp"

using namespace relayopt;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return parse_json(out); }
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "relayopt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string b0() { return run({"fixture", "b0"}).out; }

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = "relayopt_cli_" + name + ".json";
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("fixture and validate") {
  auto r = run({"fixture", "b0"});
  CHECK(r.code == 0);
  CHECK(graph_from_json(r.json()).graph == fixture_b0());
  auto v = run({"validate"}, r.out);
  CHECK(v.code == 0);
  CHECK(v.out == r.out);
  CHECK(graph_from_json(run({"fixture", "path", "--vertices", "4"}).json()).graph == fixture_path(4));
}

TEST_CASE("cfp, paths and finiteness") {
  auto c = run({"cfp"}, b0());
  CHECK(c.code == 0);
  CHECK(c.json()["instructions"].size() == 22);
  CHECK(run({"paths"}, b0()).json().size() == 12);
  auto f = run({"finite", "--witness"}, b0());
  CHECK(f.out == "{\"finite\":false,\"witness\":[[\"1\",\"4\"],[\"4\",\"3\"],[\"3\",\"2\"],[\"2\",\"5\"],[\"5\",\"3\"],[\"3\",\"1\"]]}\n");
}

TEST_CASE("min-discrepancy of B0") {
  auto r = run({"--quiet", "min-discrepancy"}, b0());
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  auto j = r.json();
  REQUIRE(j["pieces"].size() == 1);
  CHECK(polynomial_from_json(j["pieces"][0]["poly"]) == oracle::pq(1, 6, 4));
}

TEST_CASE("reliability and rho-hat") {
  auto r = run({"--quiet", "reliability", "--at", "1/2"}, b0());
  REQUIRE(r.code == 0);
  auto g = fixture_b0();
  auto exact = rho(g, EdgeProbabilityMap::uniform(g));
  CHECK(polynomial_from_json(r.json()["poly"]) == exact);
  CHECK(r.json()["value"] == to_string(exact(Rational(1, 2))));
  auto h = run({"--quiet", "rho-hat", "--at", "1/2"}, b0());
  REQUIRE(h.code == 0);
  CHECK(rational_from_json(h.json()["value"]) == (exact - oracle::pq(1, 6, 4))(Rational(1, 2)));
  CHECK(run({"rho-hat"}, b0()).code == 1);
  CHECK(run({"rho-hat", "--at", "x"}, b0()).code == 1);
}

TEST_CASE("exit codes") {
  auto infinite = run({"robustness"}, b0());
  CHECK(infinite.code == 2);
  CHECK(parse_json(infinite.err)["error"]["code"] == "infinite_protocol");
  auto guard = run({"--quiet", "--max-edges", "8", "reliability"}, b0());
  CHECK(guard.code == 3);
  CHECK(parse_json(guard.err)["error"]["kind"] == "guard");
  CHECK(run({"--bogus", "cfp"}, b0()).code == 1);
  CHECK(run({"cfp"}, "{not json").code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"breakpoint-graph", "--orders", "2"}).code == 2);
  CHECK(run({"crossing-pair", "--profile", "1,x"}).code == 1);
}

TEST_CASE("constructions") {
  auto cp = run({"crossing-pair", "--profile", "1,1"});
  REQUIRE(cp.code == 0);
  CHECK(cp.json()["edges"] == Json::array({13, 13}));
  CHECK(cp.json()["profile"].size() == 2);
  auto bp = run({"breakpoint-graph", "--orders", "1"});
  REQUIRE(bp.code == 0);
  CHECK(graph_from_json(bp.json()).graph.edge_count() == 13);

  auto edge = temp_file("edge", R"({"edge":true})");
  auto path = temp_file("path", R"({"op":"series","left":{"edge":true},"right":{"edge":true}})");
  auto s = run({"compose", "--op", "series", path, path});
  REQUIRE(s.code == 0);
  CHECK(graph_from_json(s.json()).graph.edge_count() == 4);
  CHECK(run({"compose", "--op", "parallel", edge, edge}).code == 2);
  auto k = run({"compose", "--op", "kelmans", path, edge, edge, path});
  REQUIRE(k.code == 0);
  const Polynomial p = Polynomial::variable();
  CHECK(polynomial_from_json(k.json()["delta"]) == (p.pow(2) - p) * (p - p.pow(2)));
  auto e = run({"expand", "--edge", "s-1", "--with", path}, b0());
  REQUIRE(e.code == 0);
  CHECK(graph_from_json(e.json()).graph.edge_count() == 11);
  CHECK(run({"expand", "--edge", "s-4", "--with", path}, b0()).code == 2);
  CHECK(run({"compose", "--op", "series", path}).code == 1);
  std::remove(edge.c_str());
  std::remove(path.c_str());
}

TEST_CASE("asymptotics and simulation") {
  auto census = run({"census"}, b0());
  REQUIRE(census.code == 0);
  CHECK(census.json()["k"] == 3);
  CHECK(census.json()["d"]["4"] == 4);
  CHECK(census.json()["e"] == 2);
  CHECK(census.json()["c_e"] == 2);
  auto nz = run({"near-zero"}, b0());
  CHECK(nz.json()["d"].dump() == R"({"3":2,"4":4})");
  CHECK(run({"near-one"}, b0()).out == "{\"e\":2,\"c_e\":2}\n");

  auto proto = temp_file("proto", run({"spfp-reduce", "--protocol", temp_file("minus", [] {
                                          auto g = fixture_b0();
                                          return protocol_to_json(g, cfp(g).without(oracle::triples(g, {"432"}))).dump();
                                        }())}, b0()).out);
  auto rob = run({"robustness", "--protocol", proto}, b0());
  REQUIRE(rob.code == 0);
  CHECK(rob.json()["robustness"].get<int>() >= 1);
  auto s1 = run({"--quiet", "simulate", "--p", "1/2", "--trials", "2000", "--seed", "3", "--protocol", proto}, b0());
  auto s2 = run({"--quiet", "--threads", "2", "simulate", "--p", "1/2", "--trials", "2000", "--seed", "3", "--protocol", proto}, b0());
  REQUIRE(s1.code == 0);
  CHECK(s1.out == s2.out);
  CHECK(s1.json().contains("copies"));
  std::remove(proto.c_str());
  std::remove("relayopt_cli_minus.json");
}
