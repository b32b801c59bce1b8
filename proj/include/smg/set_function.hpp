#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "smg/polynomial.hpp"
#include "smg/rational.hpp"

namespace smg {

/// A point of {0,1}^k, equivalently a subset of [k]. Bit i (least significant
/// first) is the membership of element i+1, so bit 0 is element 1.
using PointIndex = std::uint32_t;

inline constexpr int kMaxArity = 20;

inline int weight(PointIndex x) { return std::popcount(x); }
inline PointIndex full_set(int k) { return (PointIndex{1} << k) - 1; }
inline PointIndex complement(PointIndex x, int k) { return x ^ full_set(k); }
inline int hamming_distance(PointIndex a, PointIndex b) { return std::popcount(a ^ b); }

/// Dense table of exact non-negative values over {0,1}^k, indexed by PointIndex.
class SetFunction {
 public:
  SetFunction() = default;
  /// The zero function on {0,1}^k.
  explicit SetFunction(int k);
  SetFunction(int k, std::vector<Rational> values);
  static SetFunction tabulate(int k, const std::function<Rational(PointIndex)>& rule);

  int arity() const { return k_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator()(PointIndex x) const { return values_[x]; }
  const std::vector<Rational>& values() const { return values_; }

  /// Throws std::invalid_argument on a negative value.
  void set(PointIndex x, Rational value);

  friend bool operator==(const SetFunction&, const SetFunction&) = default;

 private:
  int k_ = 0;
  std::vector<Rational> values_;
};

/// Witness that f(S) - f(S+i) - f(S+j) + f(S+i+j) > 0. Elements are 0-based
/// coordinates, i < j, both outside `base`.
struct SubmodularityViolation {
  PointIndex base = 0;
  int i = 0;
  int j = 0;
  Rational slack;

  friend bool operator==(const SubmodularityViolation&, const SubmodularityViolation&) = default;
};

/// All violated pair conditions, ordered lexicographically by (base, i, j).
/// Empty iff f is submodular.
std::vector<SubmodularityViolation> check_submodular(const SetFunction& f);

/// At most one violation, stopping at the first (cheaper for large k).
bool is_submodular(const SetFunction& f);

bool check_symmetric(const SetFunction& f);

/// a(t) = average of f over the weight-t points, t = 0..k.
std::vector<Rational> weight_profile(const SetFunction& f);

/// Sum over x of f(x) p^|x| (1-p)^(k-|x|), expanded in monomials of p.
BiasPolynomial biased_expectation_poly(const SetFunction& f);

/// Multilinear extension: E f(w) with w_i ~ Bernoulli(z_i) independently.
/// Throws std::invalid_argument when some z_i lies outside [0,1].
Rational eval_product_extension(const SetFunction& f, std::span<const Rational> z);

/// Coefficients of p^w (1-p)^(k-w) summed per weight class: the weight each
/// point of weight w carries under the p-biased product distribution.
std::vector<Rational> biased_point_weights(int k, const Rational& p);

/// Binomial coefficient as a Rational.
Rational binomial(int n, int r);

}  // namespace smg
