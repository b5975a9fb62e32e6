#include <doctest.h>

#include "../support/oracles.hpp"
#include "relayopt/error.hpp"
#include "relayopt/optimizer.hpp"

using namespace relayopt;
using oracle::pq;

namespace {

EdgeProbabilityMap b0_with(const TwoTerminalGraph& g, const Polynomial& q1, const Polynomial& q2) {
  std::vector<Polynomial> values(g.edge_count(), Polynomial::variable());
  values[g.edge_from_key("s-1")] = q1;
  values[g.edge_from_key("s-2")] = q2;
  return EdgeProbabilityMap(g, values);
}

}  // namespace

TEST_CASE("minimal removal sets of B0") {
  auto g = fixture_b0();
  auto sets = minimal_removal_sets(g);
  std::vector<Protocol> expected;
  for (const char* x : {"143", "432", "325", "253", "531", "314"}) expected.push_back(oracle::triples(g, {x}));
  std::sort(expected.begin(), expected.end());
  auto sorted = sets;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == expected);
  for (const auto& i : sets) CHECK(is_finite(g, cfp(g).without(i)).finite);
  CHECK(circuit_borne_instructions(g).size() == 6);
}

TEST_CASE("graphs with finite CFP have only the empty removal set") {
  auto g = fixture_path(4);
  auto sets = minimal_removal_sets(g);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].empty());
  auto sp = oracle::tiny_graph({"sa", "ar", "sb", "br", "ab"});  // a diamond is not SP but finite
  CHECK(minimal_removal_sets(sp).size() == 1);
}

TEST_CASE("removal search guard") {
  OptimizerOptions opts;
  opts.max_candidates = 3;
  CHECK_THROWS_AS(minimal_removal_sets(fixture_b0(), opts), Error);
}

TEST_CASE("discrepancies of B0 with substituted terminal edges") {
  auto g = fixture_b0();
  const Polynomial p = Polynomial::variable();
  const Polynomial q1 = p * p;
  const Polynomial q2 = Polynomial::constant(Rational(1, 2));
  auto prob = b0_with(g, q1, q2);
  const Polynomial one = Polynomial::constant(1);
  auto d432 = discrepancy(g, oracle::triples(g, {"432"}), prob);
  CHECK(d432.finite);
  CHECK(d432.d == p.pow(5) * q1 * Polynomial::one_minus_variable().pow(3) * (one - q2));
  auto d531 = discrepancy(g, oracle::triples(g, {"531"}), prob);
  CHECK(d531.d == p.pow(5) * q2 * Polynomial::one_minus_variable().pow(3) * (one - q1));
  CHECK(discrepancy(g, Protocol{}, prob).d.is_zero());
  CHECK_FALSE(discrepancy(g, Protocol{}, prob).finite);
  CHECK_THROWS_AS(discrepancy(g, Protocol(g, {{g.vertex("4"), g.vertex("1"), g.vertex("3")}}), prob), Error);
}

TEST_CASE("event decomposition matches the discrepancy") {
  auto g = fixture_b0();
  auto prob = EdgeProbabilityMap::uniform(g);
  for (auto xs : std::vector<std::vector<std::string>>{{"432"}, {"531"}, {"143", "253"}, {"s14", "432"}, {"35r"}}) {
    auto i = oracle::triples(g, xs);
    CHECK(discrepancy_by_events(g, i, prob) == discrepancy(g, i, prob).d);
  }
}

TEST_CASE("discrepancy is monotone in the removal set") {
  auto g = fixture_b0();
  auto prob = EdgeProbabilityMap::uniform(g);
  auto small = discrepancy(g, oracle::triples(g, {"432"}), prob).d;
  auto big = discrepancy(g, oracle::triples(g, {"432", "134"}), prob).d;
  for (int k = 1; k <= 9; ++k) CHECK(small(Rational(k, 10)) <= big(Rational(k, 10)));
}

TEST_CASE("rho hat of B0") {
  auto g = fixture_b0();
  auto prob = EdgeProbabilityMap::uniform(g);
  const Polynomial r = rho(g, prob);
  auto pw = rho_hat_piecewise(g);
  CHECK(pw.breakpoints.empty());
  REQUIRE(pw.pieces.size() == 1);
  CHECK(pw.pieces[0].poly == r - pq(1, 6, 4));
  auto md = min_discrepancy(g, prob);
  REQUIRE(md.pieces.size() == 1);
  CHECK(md.pieces[0].poly == pq(1, 6, 4));
  for (Rational x : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
    auto best = rho_hat_at(g, prob, x);
    CHECK(best.value == r(x) - pq(1, 6, 4)(x));
    CHECK(best.value == brute_force_rho_hat(g, prob, x));
  }
  // The two tied candidates collapse onto the lexicographically least one.
  CHECK(pw.pieces[0].removed == oracle::triples(g, {"432"}));
}

TEST_CASE("rho hat with distinct terminal probabilities picks the better removal") {
  auto g = fixture_b0();
  const Polynomial p = Polynomial::variable();
  auto prob = b0_with(g, Polynomial::constant(Rational(1, 4)), Polynomial::constant(Rational(3, 4)));
  const Rational x(1, 2);
  auto best = rho_hat_at(g, prob, x);
  CHECK(best.value == brute_force_rho_hat(g, prob, x));
  // d_432 = p^5 q1 (1-p)^3 (1-q2) is the smaller discrepancy when q1 < q2.
  CHECK(best.removed == oracle::triples(g, {"432"}));
}

TEST_CASE("series-parallel graphs have rho hat equal to rho") {
  auto g = oracle::tiny_graph({"sa", "ar", "sb", "bc", "cr"});
  auto prob = EdgeProbabilityMap::uniform(g);
  auto pw = rho_hat_piecewise(g);
  REQUIRE(pw.pieces.size() == 1);
  CHECK(pw.pieces[0].poly == rho(g, prob));
  CHECK(min_discrepancy(g, prob).pieces[0].poly.is_zero());
  for (long b = 1; b <= 4; ++b)
    for (long a = 0; a <= b; ++a) CHECK(breakpoint_free_check(g, a, b));
}

TEST_CASE("brute force oracle on trivial graphs") {
  auto edge = oracle::tiny_graph({"sr"});
  CHECK(brute_force_rho_hat(edge, EdgeProbabilityMap::uniform(edge), Rational(1, 3)) == Rational(1, 3));
  auto path = fixture_path(4);
  CHECK(brute_force_rho_hat(path, EdgeProbabilityMap::uniform(path), Rational(1, 2)) == Rational(1, 8));
}

TEST_CASE("upper envelope with a crossing") {
  // p and 2p^2 cross once at 1/2 with order 1; p^3 is dominated.
  const Polynomial p = Polynomial::variable();
  std::vector<Candidate> c{{Protocol{}, p}, {Protocol{}, Rational(2) * p * p}, {Protocol{}, p.pow(3)}};
  auto pw = upper_envelope(c);
  REQUIRE(pw.breakpoints.size() == 1);
  CHECK(pw.breakpoints[0].order == 1);
  CHECK(pw.breakpoints[0].point.is_rational());
  CHECK(pw.breakpoints[0].point.lo == Rational(1, 2));
  CHECK(pw.pieces[0].poly == p);
  CHECK(pw.pieces[1].poly == Rational(2) * p * p);
  CHECK(breakpoint_free_check(pw, 3, 1, 2));       // the breakpoint sits exactly at 1/2
  CHECK(breakpoint_free_check(pw, 3, 1, 3));
  PiecewiseReliability near = pw;
  near.breakpoints[0].point = {Polynomial{-51, 100}, Rational(51, 100), Rational(51, 100)};
  CHECK_FALSE(breakpoint_free_check(near, 1, 1, 2));  // 1/100 < 1/6
}

TEST_CASE("upper envelope touching without crossing") {
  // p and p + (p - 1/2)^2: never crossed, so a single piece.
  const Polynomial p = Polynomial::variable();
  Polynomial bump = p + (p - Polynomial::constant(Rational(1, 2))).pow(2);
  auto pw = upper_envelope({{Protocol{}, p}, {Protocol{}, bump}});
  CHECK(pw.breakpoints.empty());
  CHECK(pw.pieces.size() == 1);
  CHECK(pw.pieces[0].poly == bump);
}

TEST_CASE("optimal protocol of B0 is a finite SPFP") {
  auto g = fixture_b0();
  auto a = optimal_protocol(g, oracle::triples(g, {"432"}));
  CHECK(is_finite(g, a).finite);
  CHECK(strongly_essential_instructions(g, a) == a);
  auto prob = EdgeProbabilityMap::uniform(g);
  CHECK(rho_A(g, a, prob) == rho(g, prob) - pq(1, 6, 4));
}
