#pragma once

#include <vector>

#include "relayopt/polynomial.hpp"

namespace relayopt {

/// A real algebraic number given by a square-free defining polynomial and an
/// isolating interval. Either lo == hi (an exact rational root) or the open
/// interval (lo, hi) holds exactly one root of `poly`, with poly(lo) and
/// poly(hi) nonzero and of opposite sign.
struct AlgebraicNumber {
  Polynomial poly;
  Rational lo;
  Rational hi;

  bool is_rational() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  /// Midpoint as a double; for display only.
  double approx() const;
  /// Bisect until width <= max_width.
  void refine(const Rational& max_width);
  /// One bisection step (no-op when rational).
  void bisect();
};

/// Three-way exact comparison; refines both arguments as needed.
int compare(AlgebraicNumber& a, AlgebraicNumber& b);
inline bool equal(AlgebraicNumber& a, AlgebraicNumber& b) { return compare(a, b) == 0; }

/// Upper bound on the number of roots of f in the open interval (lo, hi) by
/// Descartes' rule of signs; exact when the result is 0 or 1.
int descartes_bound(const Polynomial& f, const Rational& lo, const Rational& hi);

/// Isolates all real roots of a square-free f in the open interval (lo, hi),
/// in increasing order.
std::vector<AlgebraicNumber> isolate_roots(const Polynomial& squarefree, const Rational& lo,
                                           const Rational& hi);

/// Yun's square-free decomposition: f = c * prod_i factors[i]^(i+1); each
/// entry is monic (constant 1 when a multiplicity is absent).
std::vector<Polynomial> squarefree_decomposition(const Polynomial& f);

/// Largest k such that z is a root of f of multiplicity k (0 if f(z) != 0).
/// f must be nonzero.
int multiplicity_at(const Polynomial& f, const AlgebraicNumber& z);

struct RootWithMultiplicity {
  AlgebraicNumber root;
  int multiplicity = 0;
};

/// Distinct roots of a nonzero f in (0, 1), sorted, with multiplicities.
std::vector<RootWithMultiplicity> roots_in_unit_interval(const Polynomial& f);

}  // namespace relayopt
