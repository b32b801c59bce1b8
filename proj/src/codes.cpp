#include "smg/codes.hpp"

#include <algorithm>
#include <stdexcept>

namespace smg {

FiniteDistribution::FiniteDistribution(int k, std::vector<Atom> atoms) : k_(k) {
  if (k < 1 || k > kMaxArity) throw std::invalid_argument("distribution arity out of range");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.first < b.first; });
  Rational total;
  for (auto& [x, prob] : atoms) {
    if (x > full_set(k)) throw std::invalid_argument("distribution atom outside {0,1}^k");
    if (prob.sign() < 0) throw std::invalid_argument("distribution atom has negative probability");
    total += prob;
    if (prob.is_zero()) continue;
    if (!atoms_.empty() && atoms_.back().first == x) {
      atoms_.back().second += prob;
    } else {
      atoms_.emplace_back(x, std::move(prob));
    }
  }
  if (total != Rational(1)) throw std::invalid_argument("distribution probabilities must sum to 1");
}

FiniteDistribution FiniteDistribution::uniform_on(int k, const std::vector<PointIndex>& points) {
  if (points.empty()) throw std::invalid_argument("uniform distribution on an empty set");
  Rational each = Rational(1) / Rational(static_cast<long>(points.size()));
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (PointIndex x : points) atoms.emplace_back(x, each);
  return FiniteDistribution(k, std::move(atoms));
}

FiniteDistribution FiniteDistribution::uniform(int k) {
  std::vector<PointIndex> all(std::size_t{1} << k);
  for (PointIndex x = 0; x < all.size(); ++x) all[x] = x;
  return uniform_on(k, all);
}

Rational FiniteDistribution::probability(PointIndex x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, PointIndex v) { return a.first < v; });
  if (it != atoms_.end() && it->first == x) return it->second;
  return Rational(0);
}

std::string to_string(SupportOrigin origin) {
  switch (origin) {
    case SupportOrigin::kAsymmetric: return "asymmetric";
    case SupportOrigin::kSymmetric: return "symmetric";
    case SupportOrigin::kCustom: return "custom";
  }
  return "custom";
}

SupportOrigin parse_origin(const std::string& text) {
  if (text == "asymmetric" || text == "asym") return SupportOrigin::kAsymmetric;
  if (text == "symmetric" || text == "sym") return SupportOrigin::kSymmetric;
  if (text == "custom") return SupportOrigin::kCustom;
  throw std::invalid_argument("unknown support origin: " + text);
}

bool SupportFamily::complement_closed() const {
  return std::all_of(points.begin(), points.end(),
                     [&](PointIndex x) { return contains(complement(x, k)); });
}

bool SupportFamily::contains(PointIndex x) const {
  return std::binary_search(points.begin(), points.end(), x);
}

std::vector<std::uint32_t> ordered_subsets(int l, bool odd_only) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 1; t < (1u << l); ++t) {
    if (odd_only && std::popcount(t) % 2 == 0) continue;
    out.push_back(t);
  }
  auto elements = [](std::uint32_t t) {
    std::vector<int> e;
    for (int i = 0; i < 32; ++i) {
      if (t & (1u << i)) e.push_back(i);
    }
    return e;
  };
  std::sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return elements(a) < elements(b);
  });
  return out;
}

namespace {

// All 2^l codewords x(y), indexed by y.
std::vector<PointIndex> hadamard_codewords(int l, const std::vector<std::uint32_t>& coords) {
  std::vector<PointIndex> words;
  for (std::uint32_t y = 0; y < (1u << l); ++y) {
    PointIndex x = 0;
    for (std::size_t c = 0; c < coords.size(); ++c) {
      if (std::popcount(y & coords[c]) % 2 == 1) x |= PointIndex{1} << c;
    }
    words.push_back(x);
  }
  return words;
}

}  // namespace

SupportFamily build_asymmetric_support(int l) {
  if (l < 2 || l > 4) throw std::invalid_argument("asymmetric support needs 2 <= l <= 4");
  auto coords = ordered_subsets(l, false);
  const int k = static_cast<int>(coords.size());
  auto words = hadamard_codewords(l, coords);
  SupportFamily fam;
  fam.k = k;
  fam.origin = SupportOrigin::kAsymmetric;
  fam.l = l;
  fam.mu = FiniteDistribution::uniform_on(k, words);
  for (PointIndex x : words) {
    if (x != 0) fam.points.push_back(x);
  }
  std::sort(fam.points.begin(), fam.points.end());
  return fam;
}

SupportFamily build_symmetric_support(int l) {
  if (l < 2 || l > 5) throw std::invalid_argument("symmetric support needs 2 <= l <= 5");
  auto coords = ordered_subsets(l, true);
  const int k = static_cast<int>(coords.size());
  auto words = hadamard_codewords(l, coords);
  SupportFamily fam;
  fam.k = k;
  fam.origin = SupportOrigin::kSymmetric;
  fam.l = l;
  fam.mu = FiniteDistribution::uniform_on(k, words);
  for (PointIndex x : words) {
    if (x != 0 && x != full_set(k)) fam.points.push_back(x);
  }
  std::sort(fam.points.begin(), fam.points.end());
  return fam;
}

SupportFamily custom_support(int k, std::vector<PointIndex> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  SupportFamily fam;
  fam.k = k;
  fam.origin = SupportOrigin::kCustom;
  if (!points.empty()) fam.mu = FiniteDistribution::uniform_on(k, points);
  fam.points = std::move(points);
  for (PointIndex x : fam.points) {
    if (x > full_set(k)) throw std::invalid_argument("support point outside {0,1}^k");
  }
  return fam;
}

bool verify_pairwise_independent(const FiniteDistribution& d) {
  const int k = d.arity();
  const Rational quarter(1, 4);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      Rational cell[4];
      for (const auto& [x, prob] : d.atoms()) {
        int b1 = (x >> i) & 1;
        int b2 = (x >> j) & 1;
        cell[b1 * 2 + b2] += prob;
      }
      for (const auto& c : cell) {
        if (c != quarter) return false;
      }
    }
  }
  return true;
}

std::vector<int> distance_multiset(PointIndex s, const SupportFamily& family) {
  std::vector<int> d;
  d.reserve(family.points.size());
  for (PointIndex c : family.points) d.push_back(hamming_distance(s, c));
  std::sort(d.begin(), d.end());
  return d;
}

std::string format_distance_multiset(const std::vector<int>& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size();) {
    std::size_t j = i;
    while (j < d.size() && d[j] == d[i]) ++j;
    if (!out.empty()) out += ' ';
    out += std::to_string(d[i]) + "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

OrbitPartition orbit_partition(const SupportFamily& family, OrbitMode mode) {
  const int k = family.k;
  if (k < 1 || k > 16) throw std::invalid_argument("orbit partition needs arity <= 16");
  const std::size_t n = std::size_t{1} << k;
  std::vector<OrbitPartition::Key> keys(n);
  for (PointIndex x = 0; x < n; ++x) keys[x] = {weight(x), distance_multiset(x, family)};
  if (mode == OrbitMode::kComplementClosed) {
    std::vector<OrbitPartition::Key> merged(n);
    for (PointIndex x = 0; x < n; ++x) merged[x] = std::min(keys[x], keys[complement(x, k)]);
    keys = std::move(merged);
  }
  std::map<OrbitPartition::Key, std::uint32_t> ids;
  for (const auto& key : keys) ids.emplace(key, 0);
  OrbitPartition out;
  out.k = k;
  for (auto& [key, id] : ids) {
    id = static_cast<std::uint32_t>(out.key.size());
    out.key.push_back(key);
  }
  out.orbit_of.resize(n);
  out.representative.assign(ids.size(), 0);
  out.size.assign(ids.size(), 0);
  for (PointIndex x = n; x-- > 0;) {
    std::uint32_t id = ids.at(keys[x]);
    out.orbit_of[x] = id;
    out.representative[id] = x;
    ++out.size[id];
  }
  return out;
}

OrbitPartition trivial_partition(int k) {
  OrbitPartition out;
  out.k = k;
  out.orbit_of.assign(std::size_t{1} << k, 0);
  out.representative = {0};
  out.size = {std::uint64_t{1} << k};
  out.key = {{0, {}}};
  return out;
}

int error_count(PointIndex s, const SupportFamily& family) {
  int best = weight(s);
  for (PointIndex c : family.points) best = std::min(best, weight(s & ~c));
  return best;
}

}  // namespace smg
