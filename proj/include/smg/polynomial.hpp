#pragma once

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "smg/rational.hpp"

namespace smg {

/// Univariate polynomial with exact rational coefficients; coeffs()[i]
/// multiplies x^i. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  /// x - r
  static Polynomial linear_root(const Rational& r) { return Polynomial({-r, Rational(1)}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }
  Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator-(const Polynomial& a) { return a * Rational(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division; throws std::domain_error on a zero divisor.
  std::pair<Polynomial, Polynomial> divrem(const Polynomial& divisor) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// s_p(f) as a polynomial in the bias p.
using BiasPolynomial = Polynomial;

Rational poly_eval(const Polynomial& poly, const Rational& x);
Polynomial poly_derivative(const Polynomial& poly);
/// Monic greatest common divisor (zero if both inputs are zero).
Polynomial poly_gcd(Polynomial a, Polynomial b);
/// poly / gcd(poly, poly'), scaled to keep the sign of the leading coefficient.
Polynomial square_free_part(const Polynomial& poly);

/// A bound B with |poly(x)| <= B for every x in [lo, hi], by interval Horner.
Rational abs_bound_on(const Polynomial& poly, const Rational& lo, const Rational& hi);

enum class SignChange { kDownUp, kUpDown };

/// Isolating interval for one real root.
///
/// lo < hi: exactly one root lies in the open interval (lo, hi).
/// lo == hi: the root is the rational lo itself, found exactly.
/// sign_change is the orientation of the square-free part at the root, which
/// for roots of odd multiplicity is the sign change of the polynomial itself.
struct RootInterval {
  Rational lo;
  Rational hi;
  SignChange sign_change = SignChange::kDownUp;

  bool exact() const { return lo == hi; }
  bool contains(const Rational& x) const { return exact() ? x == lo : (lo < x && x < hi); }
};

/// Thrown when root isolation is asked for an identically zero polynomial:
/// every point is a root (for a derivative, the maximum is attained everywhere).
class ZeroPolynomialError : public std::domain_error {
 public:
  ZeroPolynomialError() : std::domain_error("polynomial is identically zero") {}
};

/// Sturm-sequence isolation of all real roots in [a, b], each to width <= tol.
/// Output is sorted by lo, intervals pairwise disjoint. Deterministic.
std::vector<RootInterval> isolate_real_roots(const Polynomial& poly, const Rational& a,
                                             const Rational& b, const Rational& tol);

/// Number of distinct real roots in the half-open interval (a, b].
int count_distinct_roots(const Polynomial& poly, const Rational& a, const Rational& b);

}  // namespace smg
