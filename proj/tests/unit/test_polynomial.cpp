#include <doctest.h>

#include "relayopt/error.hpp"
#include "relayopt/polynomial.hpp"
#include "relayopt/roots.hpp"

using namespace relayopt;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("+2/3") == Rational(2, 3));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  for (const char* bad : {"", "1/0", "a", "1/-2", "1.5", "/3", "2/"}) {
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial p = Polynomial::variable();
  const Polynomial q = Polynomial::one_minus_variable();
  CHECK(Polynomial{0, 0, 0}.is_zero());
  CHECK(Polynomial{1, 2, 0}.degree() == 1);
  CHECK((p * q) == Polynomial{0, 1, -1});
  CHECK((p + q) == Polynomial::constant(1));
  CHECK((p - p).is_zero());
  CHECK(p.pow(3) == Polynomial::monomial(1, 3));
  CHECK(Polynomial{0, 0, 1}(Rational(1, 3)) == Rational(1, 9));
  CHECK(Polynomial{1, 1, 1}.derivative() == Polynomial{1, 2});
  CHECK(Polynomial{0, 0, 1}.compose(q) == Polynomial{1, -2, 1});
  CHECK(Polynomial{0, 0, 1}.shift(1) == Polynomial{1, 2, 1});
  CHECK(Polynomial{1, 2, 3}.reversed() == Polynomial{3, 2, 1});
  CHECK(Polynomial{0, 0, 3}.valuation() == 2);
  CHECK(Polynomial().valuation() == -1);
  CHECK(Polynomial{2, 4}.monic() == Polynomial::constant(Rational(1, 2)) + p);
}

TEST_CASE("division and gcd") {
  Polynomial a{-1, 0, 1};  // (p-1)(p+1)
  Polynomial b{-1, 1};     // p-1
  auto [quot, rem] = Polynomial::divmod(a, b);
  CHECK(quot == Polynomial{1, 1});
  CHECK(rem.is_zero());
  CHECK(Polynomial::gcd(a, Polynomial{1, 2, 1}) == Polynomial{1, 1});
  CHECK(Polynomial::gcd(Polynomial{}, Polynomial{}).is_zero());
  CHECK_THROWS(Polynomial::divmod(a, Polynomial{}));
}

TEST_CASE("string round trip and pretty printing") {
  Polynomial f{0, 0, 0, 2, 0, 0, -1};
  CHECK(Polynomial::from_strings(f.to_strings()) == f);
  CHECK(f.to_strings().front() == "0");
  CHECK(f.pretty() == "2*p^3 - p^6");
  CHECK(Polynomial().pretty() == "0");
}

TEST_CASE("binomial") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 7) == 0);
}

TEST_CASE("root isolation of the golden-ratio conjugate") {
  Polynomial f{-1, 1, 1};  // p^2 + p - 1
  auto roots = roots_in_unit_interval(f);
  REQUIRE(roots.size() == 1);
  auto z = roots[0].root;
  CHECK(roots[0].multiplicity == 1);
  z.refine(Rational(1, 1 << 20));
  // (sqrt5 - 1)/2 = 0.6180339887...
  CHECK(z.lo < Rational(618034, 1000000));
  CHECK(z.hi > Rational(618033, 1000000));
  CHECK(z.width() <= Rational(1, 1 << 20));
}

TEST_CASE("multiplicities and square-free parts") {
  // (2p-1)^3 (p^2+p-1) p
  Polynomial lin{-1, 2};
  Polynomial f = lin.pow(3) * Polynomial{-1, 1, 1} * Polynomial::variable();
  auto roots = roots_in_unit_interval(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].root.is_rational());
  CHECK(roots[0].root.lo == Rational(1, 2));
  CHECK(roots[0].multiplicity == 3);
  CHECK(roots[1].multiplicity == 1);
  auto parts = squarefree_decomposition(f);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == (Polynomial::variable() * Polynomial{-1, 1, 1}));
  CHECK(parts[2] == lin.monic());
}

TEST_CASE("rational root found strictly inside an isolating interval") {
  Polynomial f = Polynomial{-1, 3} * Polynomial{-2, 3};  // roots 1/3, 2/3
  auto roots = roots_in_unit_interval(f);
  REQUIRE(roots.size() == 2);
  AlgebraicNumber third{Polynomial{-1, 3}, Rational(1, 3), Rational(1, 3)};
  CHECK(equal(roots[0].root, third));
  CHECK(compare(roots[0].root, roots[1].root) < 0);
}

TEST_CASE("descartes bound") {
  CHECK(descartes_bound(Polynomial{-1, 1, 1}, 0, 1) == 1);
  CHECK(descartes_bound(Polynomial{1, 1}, 0, 1) == 0);
  CHECK(descartes_bound(Polynomial{-1, 3} * Polynomial{-2, 3}, 0, 1) == 2);
}

TEST_CASE("roots at the ends of the unit interval are excluded") {
  Polynomial f = Polynomial::variable().pow(2) * Polynomial::one_minus_variable();
  CHECK(roots_in_unit_interval(f).empty());
}
