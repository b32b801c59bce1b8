#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "smg/codes.hpp"
#include "smg/set_function.hpp"

namespace smg {

/// Mixture (1 - eps) mu + eps U. Requires 0 < eps < 1.
FiniteDistribution smooth_distribution(const FiniteDistribution& mu, const Rational& eps);

/// E_{x ~ mu_prime} f(x): the acceptance probability when F is a dictator.
Rational exact_dictator_acceptance(const SetFunction& f, const FiniteDistribution& mu_prime);

inline constexpr int kMaxTestArity = 24;

/// A function F: {0,1}^n -> [0,1] queried by the test. Points of {0,1}^n use
/// the PointIndex bit convention (bit m = coordinate m+1).
class TestFunction {
 public:
  enum class Kind { kDictator, kConstant, kMajority, kCustom };

  static TestFunction dictator(int n, int coordinate);
  static TestFunction constant(int n, const Rational& value);
  /// 1 above n/2, 0 below, 1/2 on an exact tie.
  static TestFunction majority(int n);
  static TestFunction custom(int n, std::function<Rational(std::uint32_t)> eval, std::string name = "custom");

  int arity() const { return n_; }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  /// Throws std::domain_error if a custom evaluator leaves [0,1].
  Rational operator()(std::uint32_t x) const;

 private:
  TestFunction(int n, Kind kind, std::string name, std::function<Rational(std::uint32_t)> eval);

  int n_;
  Kind kind_;
  std::string name_;
  std::function<Rational(std::uint32_t)> eval_;
};

struct TestRunResult {
  std::uint64_t trials = 0;
  Rational estimate;       // mean of the exact per-trial acceptance probabilities
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  std::uint64_t seed = 0;

  friend bool operator==(const TestRunResult&, const TestRunResult&) = default;
};

/// Monte Carlo run of the test: each trial draws n independent columns from
/// mu_prime, evaluates F on the k rows, and accumulates f's multilinear
/// extension at (F(x_1), ..., F(x_k)). Trial t is seeded from (seed, t)
/// alone, so results do not depend on how trials are scheduled.
TestRunResult run_test(const SetFunction& f, const FiniteDistribution& mu_prime, const TestFunction& F,
                       std::uint64_t trials, std::uint64_t seed);

/// splitmix64 finalizer; used to derive per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace smg
