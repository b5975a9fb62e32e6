#include <doctest.h>

#include "../support/oracles.hpp"
#include "relayopt/error.hpp"
#include "relayopt/reliability.hpp"

using namespace relayopt;
using oracle::pq;

namespace {

bool nonnegative_in_unit_grid(const Polynomial& f) {
  for (int k = 1; k <= 9; ++k)
    if (f(Rational(k, 10)) < 0) return false;
  return true;
}

}  // namespace

TEST_CASE("subset_admits_walk") {
  auto g = fixture_b0();
  auto all = cfp(g);
  auto mask = [&](std::vector<std::string> keys) {
    EdgeMask m = 0;
    for (const auto& k : keys) m |= EdgeMask{1} << g.edge_from_key(k);
    return m;
  };
  CHECK(subset_admits_walk(g, all, mask({"s-1", "1-4", "4-r"})));
  CHECK_FALSE(subset_admits_walk(g, all, mask({"s-1", "s-2"})));
  EdgeMask p = mask({"s-1", "1-4", "3-4", "2-3", "2-5", "5-r"});
  CHECK(subset_admits_walk(g, all, p));
  CHECK_FALSE(subset_admits_walk(g, all.without(oracle::triples(g, {"432"})), p));
}

TEST_CASE("WalkTester agrees with the pair-BFS oracle on every subset") {
  auto g = fixture_b0();
  for (const auto& a : {cfp(g), cfp(g).without(oracle::triples(g, {"432"})),
                        cfp(g).with(oracle::triples(g, {"413"})), oracle::triples(g, {"s14", "14r", "s13"})}) {
    WalkTester t(g, a);
    for (EdgeMask s = 0; s < (EdgeMask{1} << g.edge_count()); ++s)
      REQUIRE(t.admits(s) == oracle::walk_survives(g, a, s));
  }
}

TEST_CASE("spectra") {
  auto path = oracle::tiny_graph({"sa", "ab", "br"});
  CHECK(walk_spectrum(path, cfp(path)).counts == std::vector<std::uint64_t>{0, 0, 0, 1});
  auto g = fixture_b0();
  auto w = walk_spectrum(g, cfp(g));
  CHECK(w.counts[3] == 2);
  CHECK(w.counts[10] == 1);
  CHECK(path_spectrum(g, cfp(g)).counts == w.counts);
  auto empty = walk_spectrum(g, Protocol{});
  CHECK(std::all_of(empty.counts.begin(), empty.counts.end(), [](auto c) { return c == 0; }));
  for (std::size_t i = 0; i <= g.edge_count(); ++i)
    CHECK(mpz_class(std::to_string(w.counts[i])) <= binomial(10, static_cast<unsigned>(i)));
}

TEST_CASE("spectrum polynomial equals the scan polynomial") {
  auto g = fixture_b0();
  auto a = cfp(g).without(oracle::triples(g, {"531"}));
  auto prob = EdgeProbabilityMap::uniform(g);
  CHECK(polynomial_from_spectrum(walk_spectrum(g, a)) == rho_A(g, a, prob));
  CHECK(polynomial_from_spectrum(path_spectrum(g, a)) == rho_prime_A(g, a, prob));
}

TEST_CASE("path and parallel-path reliabilities") {
  for (std::size_t k = 2; k <= 6; ++k) {
    auto g = fixture_path(k);
    CHECK(rho_A(g, cfp(g), EdgeProbabilityMap::uniform(g)) ==
          Polynomial::variable().pow(static_cast<unsigned>(k - 1)));
  }
  auto two = oracle::tiny_graph({"sa", "ab", "br", "sc", "cd", "dr"});
  Polynomial p3 = Polynomial::variable().pow(3);
  CHECK(rho(two, EdgeProbabilityMap::uniform(two)) == Rational(2) * p3 - p3 * p3);
}

TEST_CASE("B0 reliability by three methods") {
  auto g = fixture_b0();
  auto prob = EdgeProbabilityMap::uniform(g);
  Polynomial r = rho(g, prob);
  CHECK(r == rho_connectivity(g, prob));
  CHECK(r == rho_prime_inclusion_exclusion(g, cfp(g), prob));
  CHECK(r == rho_prime_A(g, cfp(g), prob));
  Rational half(1, 2);
  CHECK(r(half) == oracle::probability_at(g, half, [&](EdgeMask s) { return oracle::connected(g, s); }));
  CHECK(r(0) == 0);
  CHECK(r(1) == 1);
}

TEST_CASE("two edge-disjoint 3-paths inside B0") {
  auto g = fixture_b0();
  auto a = oracle::triples(g, {"s14", "14r", "s25", "25r"});
  auto prob = EdgeProbabilityMap::uniform(g);
  Polynomial p3 = Polynomial::variable().pow(3);
  CHECK(rho_prime_A(g, a, prob) == Rational(2) * p3 - p3 * p3);
  CHECK(rho_A(g, a, prob) == Rational(2) * p3 - p3 * p3);
}

TEST_CASE("rho_prime never exceeds rho and protocols are monotone") {
  auto g = fixture_b0();
  auto prob = EdgeProbabilityMap::uniform(g);
  auto big = cfp(g).with(oracle::triples(g, {"413"}));
  auto small = cfp(g).without(oracle::triples(g, {"432", "135"}));
  auto wb = walk_spectrum(g, big).counts;
  auto ws = walk_spectrum(g, small).counts;
  auto pb = path_spectrum(g, big).counts;
  for (std::size_t i = 0; i < wb.size(); ++i) {
    CHECK(ws[i] <= wb[i]);
    CHECK(pb[i] <= wb[i]);
  }
  CHECK(nonnegative_in_unit_grid(rho_A(g, big, prob) - rho_A(g, small, prob)));
  CHECK(rho_prime_A(g, small, prob) == rho_prime_inclusion_exclusion(g, small, prob));
}

TEST_CASE("non-uniform probability maps") {
  auto g = fixture_b0();
  std::vector<Polynomial> values(g.edge_count(), Polynomial::variable());
  values[g.edge_from_key("s-1")] = Polynomial::constant(Rational(1, 3));
  values[g.edge_from_key("s-2")] = Polynomial::variable().pow(2);
  EdgeProbabilityMap prob(g, values);
  auto r = rho(g, prob);
  CHECK(r == rho_connectivity(g, prob));
  CHECK(r == rho_prime_inclusion_exclusion(g, cfp(g), prob));
}

TEST_CASE("scan results do not depend on the thread count") {
  auto g = fixture_b0();
  auto prob = EdgeProbabilityMap::uniform(g);
  ScanOptions one{1, 24}, many{3, 24};
  CHECK(rho(g, prob, one) == rho(g, prob, many));
  CHECK(walk_spectrum(g, cfp(g), one).counts == walk_spectrum(g, cfp(g), many).counts);
}

TEST_CASE("scan guard") {
  auto g = fixture_b0();
  ScanOptions tight{1, 9};
  CHECK_THROWS_AS(rho(g, EdgeProbabilityMap::uniform(g), tight), Error);
  try {
    rho(g, EdgeProbabilityMap::uniform(g), tight);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Guard);
  }
}

TEST_CASE("basis coefficients") {
  // a_i p^i q^(m-i) expansion for a single edge s-r.
  auto g = oracle::tiny_graph({"sr"});
  CHECK(walk_spectrum(g, Protocol{}).counts == std::vector<std::uint64_t>{0, 1});
  CHECK(polynomial_from_spectrum(walk_spectrum(g, Protocol{})) == pq(1, 1, 0));
}
