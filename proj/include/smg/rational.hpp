#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace smg {

/// Exact rational number in canonical form (denominator > 0, reduced).
///
/// Thin value wrapper over GMP's mpq_class. Every constructor canonicalizes,
/// and GMP keeps arithmetic results canonical, so structural equality is
/// numeric equality.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : v_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpz_class& num, const mpz_class& den = 1);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "a/b", "a", or a finite decimal such as "0.542404".
  static Rational parse(std::string_view text);

  const mpq_class& get() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  /// Always "num/den", "0/1" for zero.
  std::string str() const;
  double to_double() const { return v_.get_d(); }
  /// Fixed-point rendering with `digits` decimals (display only).
  std::string decimal(int digits = 9) const;

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

Rational abs(const Rational& r);
/// r^e for e >= 0.
Rational pow(const Rational& r, unsigned e);
/// Exact 2^-e.
Rational inverse_power_of_two(unsigned e);

}  // namespace smg

template <>
struct std::hash<smg::Rational> {
  size_t operator()(const smg::Rational& r) const noexcept;
};
