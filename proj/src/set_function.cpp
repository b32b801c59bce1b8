#include "smg/set_function.hpp"

#include <string>

namespace smg {

namespace {

void check_arity(int k) {
  if (k < 1 || k > kMaxArity) {
    throw std::invalid_argument("set function arity must be in [1, " + std::to_string(kMaxArity) +
                                "], got " + std::to_string(k));
  }
}

}  // namespace

SetFunction::SetFunction(int k) : k_(k) {
  check_arity(k);
  values_.assign(std::size_t{1} << k, Rational(0));
}

SetFunction::SetFunction(int k, std::vector<Rational> values) : k_(k), values_(std::move(values)) {
  check_arity(k);
  if (values_.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("set function table must have exactly 2^k entries");
  }
  for (const auto& v : values_) {
    if (v.sign() < 0) throw std::invalid_argument("set function values must be non-negative");
  }
}

SetFunction SetFunction::tabulate(int k, const std::function<Rational(PointIndex)>& rule) {
  check_arity(k);
  std::vector<Rational> values(std::size_t{1} << k);
  for (PointIndex x = 0; x < values.size(); ++x) values[x] = rule(x);
  return SetFunction(k, std::move(values));
}

void SetFunction::set(PointIndex x, Rational value) {
  if (value.sign() < 0) throw std::invalid_argument("set function values must be non-negative");
  values_.at(x) = std::move(value);
}

namespace {

// Calls visit(S, i, j, slack) for each triple with positive slack, in
// lexicographic (S, i, j) order; stops when visit returns false.
template <typename Visit>
void scan_pair_conditions(const SetFunction& f, Visit&& visit) {
  const int k = f.arity();
  const PointIndex n = PointIndex{1} << k;
  Rational slack;
  for (PointIndex s = 0; s < n; ++s) {
    const Rational& fs = f(s);
    for (int i = 0; i < k; ++i) {
      const PointIndex bi = PointIndex{1} << i;
      if (s & bi) continue;
      const Rational& fsi = f(s | bi);
      for (int j = i + 1; j < k; ++j) {
        const PointIndex bj = PointIndex{1} << j;
        if (s & bj) continue;
        slack = fs;
        slack -= fsi;
        slack -= f(s | bj);
        slack += f(s | bi | bj);
        if (slack.sign() > 0 && !visit(s, i, j, slack)) return;
      }
    }
  }
}

}  // namespace

std::vector<SubmodularityViolation> check_submodular(const SetFunction& f) {
  std::vector<SubmodularityViolation> out;
  scan_pair_conditions(f, [&](PointIndex s, int i, int j, const Rational& slack) {
    out.push_back({s, i, j, slack});
    return true;
  });
  return out;
}

bool is_submodular(const SetFunction& f) {
  bool ok = true;
  scan_pair_conditions(f, [&](PointIndex, int, int, const Rational&) {
    ok = false;
    return false;
  });
  return ok;
}

bool check_symmetric(const SetFunction& f) {
  const int k = f.arity();
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f(x) != f(complement(x, k))) return false;
  }
  return true;
}

Rational binomial(int n, int r) {
  if (r < 0 || r > n) return Rational(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return Rational(out);
}

std::vector<Rational> weight_profile(const SetFunction& f) {
  const int k = f.arity();
  std::vector<Rational> sums(static_cast<std::size_t>(k) + 1);
  for (PointIndex x = 0; x < f.size(); ++x) sums[static_cast<std::size_t>(weight(x))] += f(x);
  for (int t = 0; t <= k; ++t) sums[static_cast<std::size_t>(t)] /= binomial(k, t);
  return sums;
}

BiasPolynomial biased_expectation_poly(const SetFunction& f) {
  const int k = f.arity();
  std::vector<Rational> by_weight(static_cast<std::size_t>(k) + 1);
  for (PointIndex x = 0; x < f.size(); ++x) by_weight[static_cast<std::size_t>(weight(x))] += f(x);
  std::vector<Rational> coeffs(static_cast<std::size_t>(k) + 1);
  for (int w = 0; w <= k; ++w) {
    const Rational& total = by_weight[static_cast<std::size_t>(w)];
    if (total.is_zero()) continue;
    // total * p^w * sum_j C(k-w, j) (-p)^j
    for (int j = 0; j <= k - w; ++j) {
      Rational term = total * binomial(k - w, j);
      if (j % 2 == 1) term = -term;
      coeffs[static_cast<std::size_t>(w + j)] += term;
    }
  }
  return Polynomial(std::move(coeffs));
}

Rational eval_product_extension(const SetFunction& f, std::span<const Rational> z) {
  const int k = f.arity();
  if (static_cast<int>(z.size()) != k) {
    throw std::invalid_argument("product extension point has wrong dimension");
  }
  const Rational zero(0), one(1);
  bool vertex = true;
  PointIndex corner = 0;
  for (int i = 0; i < k; ++i) {
    const Rational& zi = z[static_cast<std::size_t>(i)];
    if (zi < zero || zi > one) throw std::invalid_argument("product extension coordinate outside [0,1]");
    if (zi == one) corner |= PointIndex{1} << i;
    else if (zi != zero) vertex = false;
  }
  if (vertex) return f(corner);

  // Fold out coordinates from the highest down; after folding coordinate i,
  // table[x] for x < 2^i holds E[f | low bits = x].
  std::vector<Rational> table = f.values();
  for (int i = k - 1; i >= 0; --i) {
    const std::size_t half = std::size_t{1} << i;
    const Rational& zi = z[static_cast<std::size_t>(i)];
    const Rational wi = one - zi;
    for (std::size_t x = 0; x < half; ++x) {
      table[x] = wi * table[x] + zi * table[x | half];
    }
    table.resize(half);
  }
  return table[0];
}

std::vector<Rational> biased_point_weights(int k, const Rational& p) {
  std::vector<Rational> out(static_cast<std::size_t>(k) + 1);
  const Rational q = Rational(1) - p;
  for (int w = 0; w <= k; ++w) {
    out[static_cast<std::size_t>(w)] = pow(p, static_cast<unsigned>(w)) * pow(q, static_cast<unsigned>(k - w));
  }
  return out;
}

}  // namespace smg
