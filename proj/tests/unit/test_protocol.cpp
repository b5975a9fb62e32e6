#include <doctest.h>

#include <set>

#include "../support/oracles.hpp"
#include "relayopt/error.hpp"
#include "relayopt/protocol.hpp"

using namespace relayopt;

namespace {

std::vector<std::string> joined(const TwoTerminalGraph& g, const std::vector<Walk>& walks) {
  std::vector<std::string> out;
  for (const auto& w : walks) {
    std::string s;
    for (VertexId v : w) s += g.label(v);
    out.push_back(s);
  }
  return out;
}

const std::vector<std::string> kB0Cfp = {"s13", "s14", "s23", "s25", "132", "134", "135", "143",
                                         "14r", "231", "234", "235", "253", "25r", "314", "325",
                                         "34r", "35r", "432", "435", "531", "534"};

// Number of initial-to-accepting walks by recursion over vertex sequences,
// capped at 2|E| steps (enough for finite protocols).
std::size_t count_walks(const TwoTerminalGraph& g, const Protocol& a) {
  std::size_t count = 0;
  std::vector<VertexId> walk{g.s()};
  std::function<void()> go = [&] {
    if (walk.size() > 2 * g.edge_count() + 1) return;
    VertexId v = walk.back();
    if (v == g.r() && walk.size() > 1) ++count;
    for (VertexId w : g.neighbors(v)) {
      if (walk.size() >= 2 && !a.contains({walk[walk.size() - 2], v, w})) continue;
      walk.push_back(w);
      go();
      walk.pop_back();
    }
  };
  go();
  return count;
}

}  // namespace

TEST_CASE("s,r-paths of B0") {
  auto g = fixture_b0();
  auto paths = enumerate_sr_paths(g);
  CHECK(paths.size() == 12);
  std::set<std::string> length3;
  for (const auto& p : joined(g, paths))
    if (p.size() == 4) length3.insert(p);
  CHECK(length3 == std::set<std::string>{"s14r", "s25r"});
  // Oracle: label-level DFS.
  std::set<std::vector<std::string>> expected;
  for (const auto& p : oracle::label_paths(g)) expected.insert(p);
  std::set<std::vector<std::string>> got;
  for (const auto& p : paths) {
    std::vector<std::string> labels;
    for (VertexId v : p) labels.push_back(g.label(v));
    got.insert(labels);
  }
  CHECK(got == expected);
  CHECK(std::is_sorted(paths.begin(), paths.end()));
}

TEST_CASE("paths of small graphs") {
  CHECK(enumerate_sr_paths(oracle::tiny_graph({"sr"})).size() == 1);
  CHECK(enumerate_sr_paths(oracle::tiny_graph({"sa", "ar", "sb", "br"})).size() == 2);
}

TEST_CASE("complete forwarding protocol") {
  auto g = fixture_b0();
  auto a = cfp(g);
  CHECK(a.size() == 22);
  CHECK(a == oracle::triples(g, kB0Cfp));
  CHECK_FALSE(a.contains({g.vertex("4"), g.vertex("1"), g.vertex("3")}));
  auto path = oracle::tiny_graph({"sa", "ab", "br"});
  CHECK(cfp(path) == oracle::triples(path, {"sab", "abr"}));
}

TEST_CASE("A-paths") {
  auto g = fixture_b0();
  CHECK(a_paths(g, cfp(g)).size() == 12);
  CHECK(joined(g, a_paths(g, oracle::triples(g, {"s14", "14r"}))) == std::vector<std::string>{"s14r"});
  CHECK(a_paths(g, Protocol{}).empty());
  auto edge = oracle::tiny_graph({"sr"});
  CHECK(a_paths(edge, Protocol{}).size() == 1);
}

TEST_CASE("essential and strongly essential instructions") {
  auto g = fixture_b0();
  auto all = cfp(g);
  CHECK(essential_instructions(g, all) == all);
  CHECK(essential_instructions(g, oracle::triples(g, {"s13", "132"})).empty());
  // The walk s,2,3,4,1,3,5,r needs 341 as well as 413; neither is in A*.
  const Instruction x413{g.vertex("4"), g.vertex("1"), g.vertex("3")};
  auto extra = all.with(oracle::triples(g, {"413"}));
  CHECK_FALSE(essential_instructions(g, extra).contains(x413));
  auto both = all.with(oracle::triples(g, {"341", "413"}));
  CHECK(essential_instructions(g, both).contains(x413));
  CHECK(strongly_essential_instructions(g, both) == all);
  CHECK(strongly_essential_instructions(g, all) == all);
  CHECK(strongly_essential_instructions(g, extra) == all);
  CHECK(strongly_essential_instructions(g, Protocol{}).empty());
}

TEST_CASE("finiteness and the B0 witness") {
  auto g = fixture_b0();
  auto all = cfp(g);
  auto result = is_finite(g, all);
  CHECK_FALSE(result.finite);
  std::vector<std::pair<std::string, std::string>> witness;
  for (auto st : result.witness) witness.emplace_back(g.label(st.from), g.label(st.to));
  CHECK(witness == std::vector<std::pair<std::string, std::string>>{
                       {"1", "4"}, {"4", "3"}, {"3", "2"}, {"2", "5"}, {"5", "3"}, {"3", "1"}});
  CHECK(is_finite(g, all.without(oracle::triples(g, {"432"}))).finite);
  CHECK(is_finite(fixture_path(5), cfp(fixture_path(5))).finite);
}

TEST_CASE("essential circuits") {
  auto g = fixture_b0();
  auto all = cfp(g);
  auto circuits = essential_circuits(g, all);
  REQUIRE(circuits.size() == 1);
  CHECK(circuits[0] == is_finite(g, all).witness);
  CHECK(essential_circuits(fixture_path(4), cfp(fixture_path(4))).empty());
  auto extra = all.with(oracle::triples(g, {"341", "413"}));
  auto more = essential_circuits(g, extra);
  CHECK(more.size() >= 2);
  bool through_41 = false;
  for (const auto& c : more)
    for (auto st : c)
      if (g.label(st.from) == "4" && g.label(st.to) == "1") through_41 = true;
  CHECK(through_41);
  CHECK_THROWS_AS(essential_circuits(g, extra, 1), Error);
}

TEST_CASE("witness cycle pumps an A-walk") {
  auto g = fixture_b0();
  auto all = cfp(g);
  auto cycle = is_finite(g, all).witness;
  // s,1,4,3,2,5,3,1,4,r: enter the cycle at (1,4), go round once, then leave.
  Walk w{g.vertex("s")};
  for (auto st : cycle) w.push_back(st.from);
  w.push_back(g.vertex("1"));
  w.push_back(g.vertex("4"));
  w.push_back(g.vertex("r"));
  for (const auto& x : instructions_in(w)) CHECK(all.contains(x));
}

TEST_CASE("A-walks") {
  auto g = fixture_b0();
  auto a = cfp(g).without(oracle::triples(g, {"432", "531"}));
  auto walks = a_walks(g, a);
  CHECK(walks.size() == count_walks(g, a));
  // Ten simple paths survive the removal, plus two walks that revisit 3.
  CHECK(walks.size() == 12);
  std::size_t simple = 0;
  for (const auto& w : walks) simple += std::set<VertexId>(w.begin(), w.end()).size() == w.size();
  CHECK(simple == 10);
  auto names = joined(g, walks);
  CHECK(std::find(names.begin(), names.end(), "s132534r") != names.end());
  CHECK(std::find(names.begin(), names.end(), "s231435r") != names.end());
  auto one_removed = cfp(g).without(oracle::triples(g, {"432"}));
  CHECK(a_walks(g, one_removed).size() == count_walks(g, one_removed));
  CHECK_THROWS_AS(a_walks(g, cfp(g)), Error);
  CHECK(a_walks(oracle::tiny_graph({"sr"}), Protocol{}).size() == 1);
  auto path = oracle::tiny_graph({"sa", "ab", "br"});
  CHECK(joined(path, a_walks(path, cfp(path))) == std::vector<std::string>{"sabr"});
  CHECK_THROWS_AS(a_walks(g, a, 3), Error);
}

TEST_CASE("loop erasure") {
  Walk w{0, 1, 2, 3, 1, 4, 2, 5};
  CHECK(loop_erase(w) == Walk{0, 1, 4, 2, 5});
  CHECK(loop_erase(Walk{0, 1}) == Walk{0, 1});
}

TEST_CASE("SPFP reduction") {
  auto g = fixture_b0();
  auto a = cfp(g).without(oracle::triples(g, {"432"}));
  auto reduced = spfp_reduce(g, a);
  CHECK(strongly_essential_instructions(g, reduced) == reduced);
  CHECK(is_finite(g, reduced).finite);
  CHECK(reduced.is_subset_of(cfp(g)));
  // Every A-walk's edge set contains the edge set of an A'-path.
  std::vector<EdgeMask> path_masks;
  for (const auto& p : a_paths(g, reduced)) path_masks.push_back(edges_of(g, p));
  for (const auto& w : a_walks(g, a)) {
    EdgeMask m = edges_of(g, w);
    CHECK(std::any_of(path_masks.begin(), path_masks.end(), [&](EdgeMask x) { return (x & m) == x; }));
  }
  auto path = fixture_path(5);
  CHECK(spfp_reduce(path, cfp(path)) == cfp(path));
  CHECK_THROWS_AS(spfp_reduce(g, cfp(g)), Error);
}

TEST_CASE("bounded protocols") {
  auto g = fixture_b0();
  CHECK(bounded_protocol(g, 4) == oracle::triples(g, {"s14", "14r", "s25", "25r", "s13", "134", "34r",
                                                      "135", "35r", "s23", "234", "235"}));
  CHECK(bounded_protocol(g, 6) == cfp(g));
  CHECK(bounded_protocol(g, 3) == oracle::triples(g, {"s14", "14r", "s25", "25r"}));
  auto a4 = bounded_protocol(g, 4);
  CHECK(is_finite(g, a4).finite);
  auto dist = g.distances_from(g.s());
  for (const auto& x : a4) CHECK(dist[x.u] < dist[x.w]);
  CHECK_THROWS_AS(bounded_protocol(g, 0), Error);
}
