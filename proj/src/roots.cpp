#include "relayopt/roots.hpp"

#include <algorithm>

#include "relayopt/error.hpp"

namespace relayopt {

namespace {

int sign_variations(const Polynomial& f) {
  int count = 0;
  int last = 0;
  for (const auto& c : f.coefficients()) {
    int s = sign(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// f restricted to (lo, hi) and rescaled onto (0, 1).
Polynomial rescale(const Polynomial& f, const Rational& lo, const Rational& hi) {
  Polynomial g = f.shift(lo);
  std::vector<Rational> c = g.coefficients();
  Rational scale = 1;
  const Rational width = hi - lo;
  for (auto& coeff : c) {
    coeff *= scale;
    scale *= width;
  }
  return Polynomial(std::move(c));
}

// Divides out linear factors for endpoints that are roots, so that sign tests
// on the endpoints are meaningful.
Polynomial strip_endpoint_roots(const Polynomial& f, const Rational& lo, const Rational& hi) {
  Polynomial g = f;
  for (const Rational* e : {&lo, &hi}) {
    if (g(*e) == 0) g = Polynomial::divmod(g, Polynomial(std::vector<Rational>{-*e, 1})).first;
  }
  return g;
}

// Builds an AlgebraicNumber for the unique root of f in (lo, hi).
AlgebraicNumber make_isolated(const Polynomial& f, Rational lo, Rational hi) {
  while (f(lo) == 0 || f(hi) == 0) {
    Polynomial g = strip_endpoint_roots(f, lo, hi);
    Rational mid = (lo + hi) / 2;
    int sm = g.sign_at(mid);
    if (f(mid) == 0) return {f, mid, mid};
    if (sm != g.sign_at(lo)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {f, lo, hi};
}

void isolate_into(const Polynomial& f, const Rational& lo, const Rational& hi,
                  std::vector<AlgebraicNumber>& out) {
  int v = descartes_bound(f, lo, hi);
  if (v == 0) return;
  if (v == 1) {
    out.push_back(make_isolated(f, lo, hi));
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate_into(f, lo, mid, out);
  if (f(mid) == 0) out.push_back({f, mid, mid});
  isolate_into(f, mid, hi, out);
}

// a lies entirely left of b. Interval endpoints are never roots, and distinct
// rational roots never coincide, so a.hi <= b.lo decides every case.
bool disjoint_less(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a.hi <= b.lo; }

}  // namespace

double AlgebraicNumber::approx() const { return Rational((lo + hi) / 2).get_d(); }

void AlgebraicNumber::bisect() {
  if (is_rational()) return;
  Rational mid = (lo + hi) / 2;
  int sm = poly.sign_at(mid);
  if (sm == 0) {
    lo = hi = mid;
  } else if (sm == poly.sign_at(lo)) {
    lo = mid;
  } else {
    hi = mid;
  }
}

void AlgebraicNumber::refine(const Rational& max_width) {
  while (!is_rational() && width() > max_width) bisect();
}

int descartes_bound(const Polynomial& f, const Rational& lo, const Rational& hi) {
  if (f.degree() <= 0) return 0;
  Polynomial g = rescale(f, lo, hi);
  Polynomial h = g.reversed().shift(1);
  return sign_variations(h);
}

std::vector<AlgebraicNumber> isolate_roots(const Polynomial& squarefree, const Rational& lo,
                                           const Rational& hi) {
  std::vector<AlgebraicNumber> out;
  if (squarefree.degree() <= 0) return out;
  isolate_into(squarefree, lo, hi, out);
  return out;
}

int compare(AlgebraicNumber& a, AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) return a.lo < b.lo ? -1 : (a.lo > b.lo ? 1 : 0);
  if (b.is_rational()) return -compare(b, a);
  if (a.is_rational()) {
    const Rational& x = a.lo;
    if (x <= b.lo) return -1;
    if (x >= b.hi) return 1;
    int sx = b.poly.sign_at(x);
    if (sx == 0) return 0;
    // Root of b lies in (b.lo, x) iff the sign changes there.
    return sx != b.poly.sign_at(b.lo) ? 1 : -1;
  }
  Polynomial g = Polynomial::gcd(a.poly, b.poly);
  bool may_be_equal = g.degree() >= 1;
  while (true) {
    if (a.is_rational() || b.is_rational()) return compare(a, b);
    if (a.hi <= b.lo) return -1;
    if (b.hi <= a.lo) return 1;
    if (may_be_equal) {
      bool a_on_g = g.sign_at(a.lo) != g.sign_at(a.hi);
      bool b_on_g = g.sign_at(b.lo) != g.sign_at(b.hi);
      if (!a_on_g || !b_on_g) {
        may_be_equal = false;
      } else if (descartes_bound(g, std::min(a.lo, b.lo), std::max(a.hi, b.hi)) == 1) {
        return 0;
      }
    }
    a.bisect();
    b.bisect();
  }
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& f) {
  std::vector<Polynomial> out;
  if (f.degree() <= 0) return out;
  Polynomial monic = f.monic();
  Polynomial df = monic.derivative();
  Polynomial a0 = Polynomial::gcd(monic, df);
  Polynomial b = Polynomial::divmod(monic, a0).first;
  Polynomial c = Polynomial::divmod(df, a0).first;
  Polynomial d = c - b.derivative();
  while (b.degree() >= 1) {
    Polynomial a = Polynomial::gcd(b, d);
    out.push_back(a);
    b = Polynomial::divmod(b, a).first;
    c = Polynomial::divmod(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

int multiplicity_at(const Polynomial& f, const AlgebraicNumber& z) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "multiplicity of the zero polynomial");
  int k = 0;
  Polynomial g = f;
  if (z.is_rational()) {
    while (!g.is_zero() && g(z.lo) == 0) {
      ++k;
      g = g.derivative();
    }
    return k;
  }
  while (!g.is_zero()) {
    Polynomial h = Polynomial::gcd(z.poly, g);
    if (h.degree() < 1 || h.sign_at(z.lo) == h.sign_at(z.hi)) break;
    ++k;
    g = g.derivative();
  }
  return k;
}

std::vector<RootWithMultiplicity> roots_in_unit_interval(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  std::vector<RootWithMultiplicity> roots;
  auto factors = squarefree_decomposition(f);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (auto& z : isolate_roots(factors[i], 0, 1))
      roots.push_back({std::move(z), static_cast<int>(i) + 1});
  }
  // Factors are pairwise coprime, so the roots are distinct; refine until the
  // intervals are pairwise disjoint and then order by position.
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return x.root.lo < y.root.lo; });
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      auto& x = roots[i].root;
      auto& y = roots[i + 1].root;
      if (!disjoint_less(x, y)) {
        x.bisect();
        y.bisect();
        changed = true;
      }
    }
  }
  return roots;
}

}  // namespace relayopt
