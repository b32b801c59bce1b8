#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "smg/dictatorship.hpp"
#include "smg/fixtures.hpp"
#include "smg/soundness.hpp"
#include "test_support.hpp"

namespace smg {
namespace {

TEST(SmoothDistribution, MixtureWeights) {
  const FiniteDistribution mu = build_asymmetric_support(2).mu;
  const Rational eps(1, 5);
  const FiniteDistribution mp = smooth_distribution(mu, eps);
  ASSERT_EQ(mp.atoms().size(), 8u);
  for (PointIndex x = 0; x < 8; ++x) {
    EXPECT_EQ(mp.probability(x), (Rational(1) - eps) * mu.probability(x) + eps * Rational(1, 8));
  }
}

TEST(SmoothDistribution, HadamardThreeFullSupport) {
  const FiniteDistribution mp = smooth_distribution(build_asymmetric_support(3).mu, Rational(1, 8));
  ASSERT_EQ(mp.atoms().size(), 128u);
  for (const auto& [x, prob] : mp.atoms()) EXPECT_GE(prob, Rational(1, 1024));
  EXPECT_EQ(mp.probability(1), Rational(1, 1024));
}

TEST(SmoothDistribution, UniformIsFixedPoint) {
  const FiniteDistribution u = FiniteDistribution::uniform(4);
  EXPECT_EQ(smooth_distribution(u, Rational(3, 7)), u);
}

TEST(SmoothDistribution, RejectsEpsOutOfRange) {
  const FiniteDistribution u = FiniteDistribution::uniform(2);
  EXPECT_THROW(smooth_distribution(u, Rational(0)), std::invalid_argument);
  EXPECT_THROW(smooth_distribution(u, Rational(1)), std::invalid_argument);
  EXPECT_THROW(smooth_distribution(u, Rational(-1, 2)), std::invalid_argument);
}

TEST(ExactDictatorAcceptance, Examples) {
  const auto one = SetFunction::tabulate(3, [](PointIndex) { return Rational(1); });
  EXPECT_EQ(exact_dictator_acceptance(one, smooth_distribution(FiniteDistribution::uniform(3), Rational(1, 2))),
            Rational(1));

  const SetFunction f = expand_fixture("fsym4");
  const FiniteDistribution mp = smooth_distribution(build_symmetric_support(4).mu, Rational(1, 100));
  EXPECT_EQ(exact_dictator_acceptance(f, mp),
            Rational(99, 100) * Rational(7, 8) + Rational(1, 100) * Rational(43, 64));

  const auto odd = FiniteDistribution::uniform_on(3, {0b001, 0b010, 0b100, 0b111});
  EXPECT_EQ(exact_dictator_acceptance(testing::or_function(3), odd), Rational(1));
  EXPECT_THROW(exact_dictator_acceptance(one, FiniteDistribution::uniform(2)), std::invalid_argument);
}

TEST(ExactDictatorAcceptance, CompletenessInequality) {
  for (const std::string id : {"fsym4", "fsym5", "f3", "f4"}) {
    const FixtureFunction fx = load_fixture(id);
    const SetFunction f = expand_fixture(id);
    const Rational c = completeness(f, fx.family.mu);
    for (const Rational& eps : {Rational(1, 100), Rational(1, 10)}) {
      EXPECT_GE(exact_dictator_acceptance(f, smooth_distribution(fx.family.mu, eps)), c - eps) << id;
    }
  }
}

TEST(TestFunction, Kinds) {
  const TestFunction d = TestFunction::dictator(5, 2);
  EXPECT_EQ(d(0b00100), Rational(1));
  EXPECT_EQ(d(0b11011), Rational(0));
  EXPECT_EQ(TestFunction::constant(3, Rational(1, 3))(5), Rational(1, 3));
  const TestFunction m = TestFunction::majority(4);
  EXPECT_EQ(m(0b0111), Rational(1));
  EXPECT_EQ(m(0b0011), Rational(1, 2));
  EXPECT_EQ(m(0b0001), Rational(0));
  EXPECT_THROW(TestFunction::dictator(3, 3), std::invalid_argument);
  EXPECT_THROW(TestFunction::constant(3, Rational(2)), std::invalid_argument);
  EXPECT_THROW(TestFunction::majority(25), std::invalid_argument);
  const TestFunction bad = TestFunction::custom(2, [](std::uint32_t) { return Rational(3, 2); });
  EXPECT_THROW(bad(0), std::domain_error);
}

TEST(RunTest, DictatorWithinFourStandardErrors) {
  const SetFunction f = expand_fixture("fsym4");
  const FiniteDistribution mp = smooth_distribution(build_symmetric_support(4).mu, Rational(1, 10));
  const Rational exact = exact_dictator_acceptance(f, mp);
  const TestRunResult r = run_test(f, mp, TestFunction::dictator(10, 3), 100000, 2024);
  ASSERT_GT(r.std_error, 0.0);
  EXPECT_LE(std::abs((r.estimate - exact).to_double()), 4 * r.std_error);
}

TEST(RunTest, ConstantIsExact) {
  const SetFunction f = expand_fixture("f3");
  const FiniteDistribution mp = smooth_distribution(build_asymmetric_support(3).mu, Rational(1, 10));
  const Rational p(3, 7);
  const TestRunResult r = run_test(f, mp, TestFunction::constant(6, p), 50, 9);
  EXPECT_EQ(r.estimate, biased_expectation_poly(f)(p));
  EXPECT_EQ(r.std_error, 0.0);
  const TestRunResult half =
      run_test(testing::or_function(3), smooth_distribution(FiniteDistribution::uniform(3), Rational(1, 2)),
               TestFunction::constant(4, Rational(1, 2)), 10, 1);
  EXPECT_EQ(half.estimate, Rational(7, 8));
}

TEST(RunTest, ReproducibleFromSeed) {
  const SetFunction f = expand_fixture("fsym4");
  const FiniteDistribution mp = smooth_distribution(build_symmetric_support(4).mu, Rational(1, 100));
  const TestRunResult a = run_test(f, mp, TestFunction::majority(5), 2000, 77);
  const TestRunResult b = run_test(f, mp, TestFunction::majority(5), 2000, 77);
  const TestRunResult c = run_test(f, mp, TestFunction::majority(5), 2000, 78);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.estimate, c.estimate);
  EXPECT_GE(a.estimate, Rational(0));
  EXPECT_LE(a.estimate, Rational(1));
}

TEST(RunTest, PrefixConsistentAcrossTrialCounts) {
  // With a dictator each trial contributes f at one sampled point, so the second trial is recoverable.
  const SetFunction f = expand_fixture("f3");
  const FiniteDistribution mp = smooth_distribution(build_asymmetric_support(3).mu, Rational(1, 10));
  const TestFunction F = TestFunction::dictator(4, 0);
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const TestRunResult one = run_test(f, mp, F, 1, seed);
    const TestRunResult two = run_test(f, mp, F, 2, seed);
    const Rational second = two.estimate * Rational(2) - one.estimate;
    EXPECT_NE(std::find(f.values().begin(), f.values().end(), one.estimate), f.values().end());
    EXPECT_NE(std::find(f.values().begin(), f.values().end(), second), f.values().end());
  }
}

TEST(RunTest, RejectsZeroTrials) {
  const SetFunction f = testing::or_function(2);
  EXPECT_THROW(run_test(f, FiniteDistribution::uniform(2), TestFunction::dictator(3, 0), 0, 1), std::invalid_argument);
}

TEST(MixSeed, DistinctStreams) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  EXPECT_EQ(mix_seed(42, 7), mix_seed(42, 7));
}

}  // namespace
}  // namespace smg
