#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "smg/rational.hpp"
#include "smg/set_function.hpp"

namespace smg {

/// Distribution on {0,1}^k with finitely many atoms.
/// Atoms are sorted by point, distinct, strictly positive, and sum to 1.
class FiniteDistribution {
 public:
  using Atom = std::pair<PointIndex, Rational>;

  FiniteDistribution() = default;
  /// Sorts and merges duplicate atoms, then validates.
  FiniteDistribution(int k, std::vector<Atom> atoms);
  static FiniteDistribution uniform_on(int k, const std::vector<PointIndex>& points);
  static FiniteDistribution uniform(int k);

  int arity() const { return k_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  Rational probability(PointIndex x) const;

  friend bool operator==(const FiniteDistribution&, const FiniteDistribution&) = default;

 private:
  int k_ = 0;
  std::vector<Atom> atoms_;
};

enum class SupportOrigin { kAsymmetric, kSymmetric, kCustom };

std::string to_string(SupportOrigin origin);
SupportOrigin parse_origin(const std::string& text);

/// Points C of the hypercube together with the distribution they came from.
struct SupportFamily {
  int k = 0;
  std::vector<PointIndex> points;  // sorted, distinct
  SupportOrigin origin = SupportOrigin::kCustom;
  int l = 0;  // code parameter; 0 for custom
  FiniteDistribution mu;

  bool complement_closed() const;
  bool contains(PointIndex x) const;
};

/// Nonempty subsets of [l] (as bitmasks, bit t = element t+1) sorted by
/// (size, lexicographic order of their sorted elements).
std::vector<std::uint32_t> ordered_subsets(int l, bool odd_only);

/// Hadamard support C_l: coordinates are the nonempty T of [l] in
/// ordered_subsets order; x_T = XOR of y_t over t in T. The all-zeros point
/// is dropped from `points` but kept as an atom of `mu`. Requires 2 <= l <= 4.
SupportFamily build_asymmetric_support(int l);

/// Complement-closed support C^sym_l over the odd-size subsets of [l];
/// drops the all-zeros and all-ones points. Requires 2 <= l <= 5.
SupportFamily build_symmetric_support(int l);

/// Custom support with the uniform distribution on the given points.
SupportFamily custom_support(int k, std::vector<PointIndex> points);

/// Exact test that every two-coordinate marginal is uniform.
bool verify_pairwise_independent(const FiniteDistribution& d);

/// Sorted Hamming distances from s to every support point.
std::vector<int> distance_multiset(PointIndex s, const SupportFamily& family);

/// Renders a distance multiset as "8^15", "5^2 7^6 9^6 11^1", ...
std::string format_distance_multiset(const std::vector<int>& d);

enum class OrbitMode { kPlain, kComplementClosed };

/// Partition of {0,1}^k by the key (|S|, distance multiset). Orbit ids are
/// assigned in increasing key order; in complement-closed mode a class and
/// its complement class share an id, keyed by the smaller of the two keys.
struct OrbitPartition {
  using Key = std::pair<int, std::vector<int>>;

  int k = 0;
  std::vector<std::uint32_t> orbit_of;       // per PointIndex
  std::vector<PointIndex> representative;  // smallest member per orbit
  std::vector<std::uint64_t> size;           // members per orbit
  std::vector<Key> key;                      // canonical key per orbit

  std::size_t orbit_count() const { return representative.size(); }
};

OrbitPartition orbit_partition(const SupportFamily& family, OrbitMode mode);

/// A partition with a single orbit (every point together).
OrbitPartition trivial_partition(int k);

/// Minimum over support points C of |S \ C|.
int error_count(PointIndex s, const SupportFamily& family);

}  // namespace smg
