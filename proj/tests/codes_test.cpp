#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "smg/codes.hpp"
#include "smg/dictatorship.hpp"
#include "smg/fixtures.hpp"

namespace smg {
namespace {

PointIndex permute(PointIndex x, const std::vector<int>& perm) {
  PointIndex y = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (x >> i & 1u) y |= PointIndex{1} << perm[i];
  }
  return y;
}

std::vector<std::vector<int>> support_automorphisms(const SupportFamily& fam) {
  std::vector<int> perm(static_cast<std::size_t>(fam.k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (PointIndex c : fam.points) {
      if (!fam.contains(permute(c, perm))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

TEST(OrderedSubsets, SizeThenLexicographic) {
  EXPECT_EQ(ordered_subsets(3, false), (std::vector<std::uint32_t>{0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111}));
  EXPECT_EQ(ordered_subsets(3, true), (std::vector<std::uint32_t>{0b001, 0b010, 0b100, 0b111}));
}

TEST(AsymmetricSupport, LTwoIsTheWeightTwoStrings) {
  const SupportFamily fam = build_asymmetric_support(2);
  EXPECT_EQ(fam.k, 3);
  EXPECT_EQ(fam.points, (std::vector<PointIndex>{0b011, 0b101, 0b110}));
  EXPECT_EQ(fam.mu.atoms().size(), 4u);
  EXPECT_EQ(fam.mu.probability(0), Rational(1, 4));
}

TEST(AsymmetricSupport, LThreeWeights) {
  const SupportFamily fam = build_asymmetric_support(3);
  EXPECT_EQ(fam.k, 7);
  ASSERT_EQ(fam.points.size(), 7u);
  for (PointIndex c : fam.points) EXPECT_EQ(weight(c), 4);
}

TEST(AsymmetricSupport, LFourPairwiseDistanceEight) {
  const SupportFamily fam = build_asymmetric_support(4);
  ASSERT_EQ(fam.points.size(), 15u);
  for (PointIndex a : fam.points) {
    for (PointIndex b : fam.points) {
      if (a != b) { EXPECT_EQ(hamming_distance(a, b), 8); }
    }
  }
}

TEST(AsymmetricSupport, InvariantsAllL) {
  for (int l = 2; l <= 4; ++l) {
    const SupportFamily fam = build_asymmetric_support(l);
    EXPECT_EQ(fam.k, (1 << l) - 1);
    EXPECT_EQ(fam.points.size(), static_cast<std::size_t>((1 << l) - 1));
    EXPECT_FALSE(fam.contains(0));
    EXPECT_TRUE(std::is_sorted(fam.points.begin(), fam.points.end()));
    for (PointIndex c : fam.points) EXPECT_EQ(weight(c), (fam.k + 1) / 2);
    EXPECT_TRUE(verify_pairwise_independent(fam.mu));
  }
  EXPECT_THROW(build_asymmetric_support(1), std::invalid_argument);
  EXPECT_THROW(build_asymmetric_support(5), std::invalid_argument);
}

TEST(SymmetricSupport, Examples) {
  const SupportFamily s3 = build_symmetric_support(3);
  EXPECT_EQ(s3.k, 4);
  ASSERT_EQ(s3.points.size(), 6u);
  for (PointIndex c : s3.points) EXPECT_EQ(weight(c), 2);
  EXPECT_TRUE(s3.complement_closed());
  EXPECT_EQ(build_symmetric_support(4).points.size(), 14u);
  const SupportFamily s5 = build_symmetric_support(5);
  EXPECT_EQ(s5.k, 16);
  EXPECT_EQ(s5.points.size(), 30u);
}

TEST(SymmetricSupport, InvariantsAllL) {
  for (int l = 2; l <= 5; ++l) {
    const SupportFamily fam = build_symmetric_support(l);
    EXPECT_EQ(fam.k, 1 << (l - 1));
    EXPECT_EQ(fam.points.size(), static_cast<std::size_t>((1 << l) - 2));
    EXPECT_FALSE(fam.contains(0));
    EXPECT_FALSE(fam.contains(full_set(fam.k)));
    for (PointIndex c : fam.points) {
      EXPECT_TRUE(fam.contains(complement(c, fam.k)));
      EXPECT_EQ(weight(c), fam.k / 2);
    }
    EXPECT_TRUE(verify_pairwise_independent(fam.mu));
  }
  EXPECT_THROW(build_symmetric_support(6), std::invalid_argument);
}

TEST(PairwiseIndependence, Examples) {
  EXPECT_TRUE(verify_pairwise_independent(FiniteDistribution::uniform_on(3, {0b001, 0b010, 0b100, 0b111})));
  EXPECT_TRUE(verify_pairwise_independent(build_asymmetric_support(3).mu));
  EXPECT_FALSE(verify_pairwise_independent(FiniteDistribution::uniform_on(3, {0b000, 0b111})));
  EXPECT_TRUE(verify_pairwise_independent(FiniteDistribution::uniform(5)));
}

TEST(PairwiseIndependence, SmoothedDistributionsStayIndependent) {
  for (const Rational& eps : {Rational(1, 100), Rational(1, 10)}) {
    for (int l = 2; l <= 4; ++l) {
      EXPECT_TRUE(verify_pairwise_independent(smooth_distribution(build_asymmetric_support(l).mu, eps)));
    }
    for (int l = 2; l <= 5; ++l) {
      EXPECT_TRUE(verify_pairwise_independent(smooth_distribution(build_symmetric_support(l).mu, eps)));
    }
  }
}

TEST(FiniteDistribution, Validation) {
  EXPECT_THROW(FiniteDistribution(2, {{0, Rational(1, 2)}}), std::invalid_argument);
  EXPECT_THROW(FiniteDistribution(2, {{0, Rational(3, 2)}, {1, Rational(-1, 2)}}), std::invalid_argument);
  EXPECT_THROW(FiniteDistribution(2, {{4, Rational(1)}}), std::invalid_argument);
  const FiniteDistribution d(2, {{3, Rational(1, 4)}, {1, Rational(1, 2)}, {3, Rational(1, 4)}});
  ASSERT_EQ(d.atoms().size(), 2u);
  EXPECT_EQ(d.atoms()[0].first, 1u);
  EXPECT_EQ(d.probability(3), Rational(1, 2));
  EXPECT_EQ(d.probability(2), Rational(0));
}

TEST(DistanceMultiset, Examples) {
  const SupportFamily c4 = build_asymmetric_support(4);
  EXPECT_EQ(distance_multiset(0, c4), std::vector<int>(15, 8));
  std::vector<int> in_code(15, 8);
  in_code[0] = 0;
  EXPECT_EQ(distance_multiset(c4.points[3], c4), in_code);
  const auto d1 = distance_multiset(1, c4);
  EXPECT_EQ(format_distance_multiset(d1), "7^8 9^7");
  EXPECT_EQ(format_distance_multiset(distance_multiset(0, c4)), "8^15");
}

TEST(OrbitPartition, F4RowsAndCounts) {
  const SupportFamily c4 = build_asymmetric_support(4);
  const OrbitPartition part = orbit_partition(c4, OrbitMode::kPlain);
  ASSERT_EQ(part.orbit_count(), 46u);
  const FixtureFunction f4 = load_fixture("f4");
  ASSERT_EQ(f4.rules.size(), 46u);
  for (std::size_t r = 0; r < 46; ++r) {
    const auto& key = part.key[r];
    EXPECT_EQ(std::to_string(key.first), f4.rules[r].size_label);
    EXPECT_EQ(format_distance_multiset(key.second), f4.rules[r].key_label);
    EXPECT_EQ(part.size[r], *f4.rules[r].expected_count);
  }
}

TEST(OrbitPartition, Invariants) {
  std::vector<std::pair<SupportFamily, OrbitMode>> cases{
      {build_asymmetric_support(2), OrbitMode::kPlain},      {build_asymmetric_support(3), OrbitMode::kPlain},
      {build_symmetric_support(3), OrbitMode::kComplementClosed}, {build_symmetric_support(4), OrbitMode::kComplementClosed},
      {build_symmetric_support(5), OrbitMode::kComplementClosed}};
  for (const auto& [fam, mode] : cases) {
    const OrbitPartition part = orbit_partition(fam, mode);
    std::uint64_t total = 0;
    for (auto s : part.size) total += s;
    EXPECT_EQ(total, std::uint64_t{1} << fam.k);
    std::vector<std::uint64_t> counted(part.orbit_count(), 0);
    for (PointIndex x = 0; x < part.orbit_of.size(); ++x) {
      const auto id = part.orbit_of[x];
      ASSERT_LT(id, part.orbit_count());
      ++counted[id];
      EXPECT_LE(part.representative[id], x);
      const PointIndex rep = part.representative[id];
      if (mode == OrbitMode::kComplementClosed) {
        EXPECT_EQ(part.orbit_of[complement(x, fam.k)], id);
        const bool same = weight(rep) == weight(x) && distance_multiset(rep, fam) == distance_multiset(x, fam);
        const PointIndex cx = complement(x, fam.k);
        const bool mirrored = weight(rep) == weight(cx) && distance_multiset(rep, fam) == distance_multiset(cx, fam);
        EXPECT_TRUE(same || mirrored);
      } else {
        EXPECT_EQ(weight(rep), weight(x));
        EXPECT_EQ(distance_multiset(rep, fam), distance_multiset(x, fam));
      }
    }
    EXPECT_EQ(counted, part.size);
  }
}

TEST(OrbitPartition, SymmetricFiveMatchesErrorClasses) {
  const SupportFamily s5 = build_symmetric_support(5);
  const OrbitPartition part = orbit_partition(s5, OrbitMode::kComplementClosed);
  std::vector<std::pair<int, int>> class_of(part.orbit_count(), {-1, -1});
  for (PointIndex x = 0; x < part.orbit_of.size(); ++x) {
    const int w = weight(x);
    if (w > 8) continue;
    const int e = error_count(x, s5);
    const int d = distance_multiset(x, s5).front();
    EXPECT_EQ(d, 8 - w + 2 * e);
    auto& cls = class_of[part.orbit_of[x]];
    if (cls.first < 0) cls = {w, e};
    EXPECT_EQ(cls, std::make_pair(w, e));
  }
}

TEST(OrbitPartition, PreservedBySupportAutomorphisms) {
  std::mt19937_64 rng(41);
  const std::vector<std::pair<SupportFamily, OrbitMode>> cases{
      {build_asymmetric_support(3), OrbitMode::kPlain},
      {build_symmetric_support(3), OrbitMode::kComplementClosed},
      {build_asymmetric_support(2), OrbitMode::kPlain}};
  for (const auto& [fam, mode] : cases) {
    const auto autos = support_automorphisms(fam);
    ASSERT_GE(autos.size(), 2u);
    const OrbitPartition part = orbit_partition(fam, mode);
    for (int t = 0; t < 10; ++t) {
      const auto& perm = autos[rng() % autos.size()];
      for (PointIndex x = 0; x < part.orbit_of.size(); ++x) {
        EXPECT_EQ(part.orbit_of[permute(x, perm)], part.orbit_of[x]);
      }
    }
  }
}

TEST(OrbitPartition, ArityGuard) {
  EXPECT_THROW(orbit_partition(custom_support(17, {1}), OrbitMode::kPlain), std::invalid_argument);
}

TEST(ErrorCount, Definition) {
  const SupportFamily s4 = build_symmetric_support(4);
  for (PointIndex x = 0; x < 256; ++x) {
    int best = 99;
    for (PointIndex c : s4.points) best = std::min(best, weight(x & ~c));
    EXPECT_EQ(error_count(x, s4), best);
  }
}

}  // namespace
}  // namespace smg
