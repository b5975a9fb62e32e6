#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relayopt {

using Rational = mpq_class;

/// Parses "a", "-a", "a/b"; the result is canonicalized. Throws Error(Parse).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
int sign(const Rational& value);

/// Dense univariate polynomial with exact rational coefficients, indexed by
/// degree. Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<long> coefficients);

  static Polynomial constant(const Rational& c);
  /// The identity polynomial p.
  static Polynomial variable();
  static Polynomial monomial(const Rational& c, std::size_t degree);
  /// (1 - p)
  static Polynomial one_minus_variable();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of p^i, zero past the degree.
  Rational coefficient(std::size_t i) const;
  const Rational& leading() const { return coeffs_.back(); }
  /// Lowest degree with a nonzero coefficient; -1 for the zero polynomial.
  int valuation() const;

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return sign((*this)(x)); }

  Polynomial derivative() const;
  /// this(inner(p))
  Polynomial compose(const Polynomial& inner) const;
  /// this(p + c)
  Polynomial shift(const Rational& c) const;
  /// p^deg * this(1/p) for deg = degree()
  Polynomial reversed() const;
  Polynomial pow(unsigned exponent) const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division; throws on division by zero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);
  /// Monic gcd; gcd(0, 0) = 0.
  static Polynomial gcd(Polynomial a, Polynomial b);

  /// Coefficients as rational strings by ascending degree.
  std::vector<std::string> to_strings() const;
  static Polynomial from_strings(const std::vector<std::string>& coefficients);
  /// Human-readable form, e.g. "2*p^3 - p^6".
  std::string pretty(std::string_view var = "p") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Binomial coefficient as an exact integer.
mpz_class binomial(unsigned n, unsigned k);

}  // namespace relayopt
