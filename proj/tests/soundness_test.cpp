#include <random>

#include <gtest/gtest.h>

#include "smg/fixtures.hpp"
#include "smg/soundness.hpp"
#include "test_support.hpp"

namespace smg {
namespace {

SetFunction band_indicator(int k, int d) {
  return SetFunction::tabulate(k, [k, d](PointIndex x) {
    const int twice = 2 * weight(x);
    return Rational(twice >= k - 2 * d && twice <= k + 2 * d ? 1 : 0);
  });
}

SetFunction threshold(int k, int t) {
  return SetFunction::tabulate(k, [t](PointIndex x) { return Rational(weight(x) >= t ? 1 : 0); });
}

bool near(const Rational& x, const Rational& target, const Rational& radius) { return abs(x - target) <= radius; }

TEST(Completeness, Examples) {
  const SetFunction zero(3);
  EXPECT_EQ(completeness(zero, FiniteDistribution::uniform(3)), Rational(0));
  const auto odd = FiniteDistribution::uniform_on(3, {0b001, 0b010, 0b100, 0b111});
  EXPECT_EQ(completeness(testing::or_function(3), odd), Rational(1));
  EXPECT_EQ(completeness(expand_fixture("f4"), build_asymmetric_support(4).mu), Rational(15, 16));
  EXPECT_THROW(completeness(zero, FiniteDistribution::uniform(2)), std::invalid_argument);
}

TEST(CertifySoundness, ConstantFunction) {
  const auto f = SetFunction::tabulate(4, [](PointIndex) { return Rational(2, 5); });
  const SoundnessCertificate c = certify_soundness(f);
  EXPECT_EQ(c.s_lower, Rational(2, 5));
  EXPECT_EQ(c.s_upper, Rational(2, 5));
  EXPECT_EQ(c.argmax_lo, Rational(0));
  EXPECT_EQ(c.argmax_hi, Rational(1));
  EXPECT_FALSE(c.via_lemma);
}

TEST(CertifySoundness, FSym5ViaLemma) {
  const SoundnessCertificate c = certify_soundness(expand_fixture("fsym5"));
  EXPECT_TRUE(c.via_lemma);
  EXPECT_EQ(c.s_upper, Rational(709, 1024));
  EXPECT_EQ(c.s_lower, Rational(709, 1024));
  EXPECT_EQ(c.argmax_lo, Rational(1, 2));
  EXPECT_EQ(c.argmax_hi, Rational(1, 2));
}

TEST(CertifySoundness, F3Enclosure) {
  const Rational tol = default_soundness_tol();
  const SoundnessCertificate c = certify_soundness(expand_fixture("f3"), tol);
  EXPECT_FALSE(c.via_lemma);
  EXPECT_LT(c.s_upper, Rational(6275, 10000));
  EXPECT_TRUE(near(c.s_lower, Rational(627434, 1000000), Rational(1, 1000000)));
  EXPECT_LE(c.argmax_lo, Rational(5424045, 10000000));
  EXPECT_GE(c.argmax_hi, Rational(5424035, 10000000));
  EXPECT_LE(c.argmax_hi - c.argmax_lo, tol);
  EXPECT_LE(c.s_upper - c.s_lower, tol);
  EXPECT_TRUE(c.argmax_certified);
}

TEST(CertifySoundness, F4Enclosure) {
  const SoundnessCertificate c = certify_soundness(expand_fixture("f4"));
  EXPECT_LT(c.s_upper, Rational(6508, 10000));
  EXPECT_TRUE(near((c.argmax_lo + c.argmax_hi) / Rational(2), Rational(526613, 1000000), Rational(1, 1000000)));
}

TEST(CertifySoundness, UpperBoundDominatesSampledBiases) {
  std::mt19937_64 rng(53);
  std::vector<SetFunction> zoo{expand_fixture("f3"), expand_fixture("fsym4"), testing::or_function(4),
                               testing::random_function(rng, 5), testing::random_function(rng, 6)};
  for (const auto& f : zoo) {
    const SoundnessCertificate c = certify_soundness(f);
    const Polynomial s = biased_expectation_poly(f);
    EXPECT_LE(c.s_lower, c.s_upper);
    EXPECT_LE(c.s_half, c.s_upper);
    EXPECT_EQ(s(c.argmax_point), c.s_lower);
    for (int t = 0; t < 100; ++t) {
      EXPECT_LE(s(testing::random_unit_rational(rng, 1000)), c.s_upper);
    }
  }
}

TEST(CertifySoundness, EndpointsAreCandidates) {
  // OR peaks at p = 1 with s_1 = f(full set) = 1.
  const SoundnessCertificate c = certify_soundness(testing::or_function(3));
  EXPECT_EQ(c.s_upper, Rational(1));
  EXPECT_EQ(c.argmax_lo, Rational(1));
  const auto zero_heavy = SetFunction::tabulate(3, [](PointIndex x) { return Rational(x == 0 ? 1 : 0); });
  EXPECT_EQ(certify_soundness(zero_heavy).s_upper, Rational(1));
  EXPECT_EQ(certify_soundness(zero_heavy).argmax_hi, Rational(0));
}

TEST(CertifySoundness, SymmetricArgmaxAroundHalf) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 6; ++t) {
    const int k = 4 + t % 3;
    const SetFunction g = testing::random_function(rng, k);
    const auto f = SetFunction::tabulate(k, [&](PointIndex x) { return g(x) + g(complement(x, k)); });
    const SoundnessCertificate c = certify_soundness(f);
    const Rational half(1, 2);
    const bool contains_half = c.argmax_lo <= half && half <= c.argmax_hi;
    const bool mirrored = c.argmax_lo + c.argmax_hi == Rational(1);
    const Polynomial s = biased_expectation_poly(f);
    const bool mirror_also_max = s(Rational(1) - c.argmax_point) == c.s_lower;
    EXPECT_TRUE(contains_half || mirrored || mirror_also_max);
  }
}

TEST(CertifySoundness, RejectsBadTolerance) {
  EXPECT_THROW(certify_soundness(testing::or_function(2), Rational(0)), std::invalid_argument);
}

TEST(SymmetryBiasHypothesis, Examples) {
  EXPECT_TRUE(check_symmetrybias_hypothesis(band_indicator(6, 1)));
  EXPECT_TRUE(check_symmetrybias_hypothesis(band_indicator(7, 0)));
  EXPECT_TRUE(check_symmetrybias_hypothesis(expand_fixture("fsym5")));
  const auto ends = SetFunction::tabulate(5, [](PointIndex x) { return Rational(x == 0 || x == 31 ? 1 : 0); });
  EXPECT_FALSE(check_symmetrybias_hypothesis(ends));
  EXPECT_THROW(check_symmetrybias_hypothesis(testing::or_function(3)), std::invalid_argument);
}

TEST(SymmetryBiasHypothesis, LemmaAgreesWithPolynomialMethod) {
  for (int k = 2; k <= 8; ++k) {
    for (int d = 0; 2 * d <= k; ++d) {
      const SetFunction f = band_indicator(k, d);
      if (biased_expectation_poly(f).degree() <= 0) continue;
      const SoundnessCertificate c = certify_soundness(f);
      EXPECT_TRUE(c.via_lemma);
      EXPECT_EQ(c.s_upper, biased_expectation_poly(f)(Rational(1, 2)));
    }
  }
}

TEST(MargulisRusso, Dictator) {
  const auto f = SetFunction::tabulate(4, [](PointIndex x) { return Rational(static_cast<int>(x >> 2 & 1u)); });
  for (const auto& pt : validate_margulis_russo(f, {Rational(0), Rational(1, 3), Rational(1)})) {
    EXPECT_EQ(pt.pivotal_sum, Rational(1));
    EXPECT_EQ(pt.derivative, Rational(1));
  }
}

TEST(MargulisRusso, ThresholdAndOr) {
  const SetFunction t = threshold(5, 2);
  for (const auto& pt : validate_margulis_russo(t, {Rational(1, 3)})) EXPECT_TRUE(pt.equal());
  const auto pts = validate_margulis_russo(testing::or_function(3), {Rational(1, 2)});
  EXPECT_EQ(pts[0].pivotal_sum, Rational(3, 4));
  EXPECT_EQ(pts[0].derivative, Rational(3, 4));
}

TEST(MargulisRusso, IndependentPivotalEnumeration) {
  // Direct sum over points x of p^|x|(1-p)^(k-|x|) times the number of pivotal coordinates.
  const SetFunction f = threshold(5, 3);
  const Rational p(2, 7);
  Rational direct;
  for (PointIndex x = 0; x < f.size(); ++x) {
    int pivotal = 0;
    for (int i = 0; i < 5; ++i) {
      const PointIndex b = PointIndex{1} << i;
      if (f(x | b) != f(x & ~b)) ++pivotal;
    }
    const int w = weight(x);
    direct += Rational(pivotal) * pow(p, static_cast<unsigned>(w)) * pow(Rational(1) - p, static_cast<unsigned>(5 - w));
  }
  EXPECT_EQ(validate_margulis_russo(f, {p})[0].pivotal_sum, direct);
}

TEST(MargulisRusso, RejectsInvalidFunctions) {
  const auto not_monotone = SetFunction::tabulate(2, [](PointIndex x) { return Rational(x == 0 ? 1 : 0); });
  EXPECT_THROW(validate_margulis_russo(not_monotone, {Rational(1, 2)}), std::invalid_argument);
  const auto fractional = SetFunction::tabulate(2, [](PointIndex x) { return Rational(weight(x), 2); });
  EXPECT_THROW(validate_margulis_russo(fractional, {Rational(1, 2)}), std::invalid_argument);
}

TEST(GadgetId, RoundTrip) {
  EXPECT_EQ(gadget_id(SupportOrigin::kSymmetric, 5), "fsym5");
  EXPECT_EQ(gadget_id(SupportOrigin::kAsymmetric, 3), "f3");
  EXPECT_EQ(parse_gadget_id("fsym4"), std::make_pair(SupportOrigin::kSymmetric, 4));
  EXPECT_EQ(parse_gadget_id("f2"), std::make_pair(SupportOrigin::kAsymmetric, 2));
  EXPECT_THROW(parse_gadget_id("g3"), std::invalid_argument);
  EXPECT_THROW(parse_gadget_id("fsym"), std::invalid_argument);
}

TEST(GadgetReport, SymmetricRows) {
  const std::tuple<int, Rational, Rational, Rational> rows[] = {
      {3, Rational(3, 4), Rational(5, 8), Rational(5, 6)},
      {4, Rational(7, 8), Rational(43, 64), Rational(43, 56)}};
  for (const auto& [l, c, s, ratio] : rows) {
    const GadgetReport r = gadget_report(SupportOrigin::kSymmetric, l);
    EXPECT_EQ(r.completeness, c);
    EXPECT_EQ(r.certificate.s_upper, s);
    EXPECT_EQ(r.ratio, ratio);
    EXPECT_EQ(r.ratio, r.certificate.s_upper / r.completeness);
    EXPECT_TRUE(r.symmetrybias_hypothesis);
    EXPECT_TRUE(r.passed());
  }
}

TEST(GadgetReport, AsymmetricFour) {
  GadgetReportOptions opts;
  opts.cross_check_bias = true;
  const GadgetReport r = gadget_report(SupportOrigin::kAsymmetric, 4, opts);
  EXPECT_EQ(r.completeness, Rational(15, 16));
  EXPECT_LT(r.certificate.s_upper, Rational(6508, 10000));
  EXPECT_LT(r.ratio, Rational(6942, 10000));
  EXPECT_LT(r.ratio, Rational(695, 1000));
  EXPECT_TRUE(r.passed());
  ASSERT_TRUE(r.bias_cross_check.has_value());
  EXPECT_LE(r.bias_cross_check->resolved_objective, r.bias_cross_check->gadget_objective_at_p);
}

TEST(GadgetReport, RejectsCustomOrigin) {
  EXPECT_THROW(gadget_report(SupportOrigin::kCustom, 3), std::invalid_argument);
}

}  // namespace
}  // namespace smg
