#include "smg/dictatorship.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace smg {

FiniteDistribution smooth_distribution(const FiniteDistribution& mu, const Rational& eps) {
  if (eps.sign() <= 0 || eps >= Rational(1)) throw std::invalid_argument("smoothing eps must lie in (0,1)");
  const int k = mu.arity();
  const Rational uniform_part = eps * inverse_power_of_two(static_cast<unsigned>(k));
  const Rational keep = Rational(1) - eps;
  std::vector<FiniteDistribution::Atom> atoms;
  atoms.reserve(std::size_t{1} << k);
  auto it = mu.atoms().begin();
  for (PointIndex x = 0; x <= full_set(k); ++x) {
    Rational prob = uniform_part;
    if (it != mu.atoms().end() && it->first == x) {
      prob += keep * it->second;
      ++it;
    }
    atoms.emplace_back(x, std::move(prob));
  }
  return FiniteDistribution(k, std::move(atoms));
}

Rational exact_dictator_acceptance(const SetFunction& f, const FiniteDistribution& mu_prime) {
  if (f.arity() != mu_prime.arity()) throw std::invalid_argument("dictator acceptance: arity mismatch");
  Rational total;
  for (const auto& [x, prob] : mu_prime.atoms()) total += prob * f(x);
  return total;
}

TestFunction::TestFunction(int n, Kind kind, std::string name, std::function<Rational(std::uint32_t)> eval)
    : n_(n), kind_(kind), name_(std::move(name)), eval_(std::move(eval)) {
  if (n < 1 || n > kMaxTestArity) throw std::invalid_argument("test function arity must be in [1, 24]");
}

TestFunction TestFunction::dictator(int n, int coordinate) {
  if (coordinate < 0 || coordinate >= n) throw std::invalid_argument("dictator coordinate out of range");
  return TestFunction(n, Kind::kDictator, "dictator(" + std::to_string(coordinate) + ")",
                      [coordinate](std::uint32_t x) { return Rational(static_cast<int>((x >> coordinate) & 1u)); });
}

TestFunction TestFunction::constant(int n, const Rational& value) {
  if (value.sign() < 0 || value > Rational(1)) throw std::invalid_argument("constant test value must lie in [0,1]");
  return TestFunction(n, Kind::kConstant, "constant(" + value.str() + ")", [value](std::uint32_t) { return value; });
}

TestFunction TestFunction::majority(int n) {
  return TestFunction(n, Kind::kMajority, "majority", [n](std::uint32_t x) {
    const int w = std::popcount(x);
    if (2 * w > n) return Rational(1);
    if (2 * w < n) return Rational(0);
    return Rational(1, 2);
  });
}

TestFunction TestFunction::custom(int n, std::function<Rational(std::uint32_t)> eval, std::string name) {
  return TestFunction(n, Kind::kCustom, std::move(name), std::move(eval));
}

Rational TestFunction::operator()(std::uint32_t x) const {
  Rational v = eval_(x);
  if (v.sign() < 0 || v > Rational(1)) throw std::domain_error("test function value outside [0,1]");
  return v;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Inverse-CDF sampler over integer weights with a common denominator.
class AtomSampler {
 public:
  explicit AtomSampler(const FiniteDistribution& d) {
    mpz_class den = 1;
    for (const auto& [x, prob] : d.atoms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), prob.get().get_den_mpz_t());
    if (mpz_sizeinbase(den.get_mpz_t(), 2) > 62) throw std::invalid_argument("distribution denominators too large to sample");
    total_ = mpz_get_ui(den.get_mpz_t());
    std::uint64_t acc = 0;
    for (const auto& [x, prob] : d.atoms()) {
      mpz_class scaled = prob.get().get_num() * (den / prob.get().get_den());
      acc += mpz_get_ui(scaled.get_mpz_t());
      cumulative_.push_back(acc);
      points_.push_back(x);
    }
  }

  PointIndex operator()(std::mt19937_64& rng) const {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % total_;
    std::uint64_t u;
    do {
      u = rng();
    } while (u >= limit);
    u %= total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return points_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

 private:
  std::uint64_t total_ = 1;
  std::vector<std::uint64_t> cumulative_;
  std::vector<PointIndex> points_;
};

}  // namespace

TestRunResult run_test(const SetFunction& f, const FiniteDistribution& mu_prime, const TestFunction& F,
                       std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("run_test needs at least one trial");
  if (f.arity() != mu_prime.arity()) throw std::invalid_argument("run_test: arity mismatch");
  const int k = f.arity();
  const int n = F.arity();
  AtomSampler sample(mu_prime);

  Rational sum, sum_sq;
  std::vector<Rational> z(static_cast<std::size_t>(k)), last_z;
  Rational last_value;
  std::vector<PointIndex> columns(static_cast<std::size_t>(n));
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, t));
    for (auto& c : columns) c = sample(rng);
    for (int r = 0; r < k; ++r) {
      std::uint32_t row = 0;
      for (int m = 0; m < n; ++m) row |= ((columns[static_cast<std::size_t>(m)] >> r) & 1u) << m;
      z[static_cast<std::size_t>(r)] = F(row);
    }
    if (last_z != z) {
      last_value = eval_product_extension(f, z);
      last_z = z;
    }
    sum += last_value;
    sum_sq += last_value * last_value;
  }
  TestRunResult out;
  out.trials = trials;
  out.seed = seed;
  const Rational count(static_cast<long>(trials));
  out.estimate = sum / count;
  if (trials > 1) {
    const Rational var = (sum_sq - sum * out.estimate) / Rational(static_cast<long>(trials - 1));
    out.std_error = std::sqrt(std::max(0.0, var.to_double()) / static_cast<double>(trials));
  }
  return out;
}

}  // namespace smg
