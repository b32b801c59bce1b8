#include "smg/gadget_lp.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_set>

namespace smg {

namespace {

// A mapped pair-condition row: at most four (variable, integer coefficient)
// terms, sorted by variable, zeros removed.
struct SmallRow {
  std::array<std::uint32_t, 4> var{};
  std::array<int, 4> coef{};
  int len = 0;

  friend bool operator==(const SmallRow& a, const SmallRow& b) {
    if (a.len != b.len) return false;
    for (int t = 0; t < a.len; ++t) {
      if (a.var[t] != b.var[t] || a.coef[t] != b.coef[t]) return false;
    }
    return true;
  }
};

struct SmallRowHash {
  std::size_t operator()(const SmallRow& r) const noexcept {
    std::size_t h = static_cast<std::size_t>(r.len);
    for (int t = 0; t < r.len; ++t) {
      h = h * 1315423911u ^ (static_cast<std::size_t>(r.var[t]) * 2654435761u + static_cast<std::size_t>(r.coef[t] + 8));
    }
    return h;
  }
};

SmallRow make_row(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  std::array<std::pair<std::uint32_t, int>, 4> terms{{{a, 1}, {b, -1}, {c, -1}, {d, 1}}};
  std::sort(terms.begin(), terms.end());
  SmallRow row;
  for (const auto& [v, k] : terms) {
    if (row.len > 0 && row.var[row.len - 1] == v) {
      row.coef[row.len - 1] += k;
      if (row.coef[row.len - 1] == 0) --row.len;
    } else {
      row.var[row.len] = v;
      row.coef[row.len] = k;
      ++row.len;
    }
  }
  return row;
}

}  // namespace

OrbitPartition identity_partition(int k) {
  OrbitPartition out;
  out.k = k;
  const std::size_t n = std::size_t{1} << k;
  out.orbit_of.resize(n);
  out.representative.resize(n);
  out.size.assign(n, 1);
  out.key.resize(n);
  for (PointIndex x = 0; x < n; ++x) {
    out.orbit_of[x] = x;
    out.representative[x] = x;
    out.key[x] = {weight(x), {}};
  }
  return out;
}

GadgetProgram build_min_submodular_lp(const GadgetBuildSpec& spec) {
  const SupportFamily& fam = spec.family;
  const int k = fam.k;
  if (spec.p < Rational(0) || spec.p > Rational(1)) throw std::invalid_argument("bias p must lie in [0,1]");
  if (spec.reduction == Reduction::kNone && k > kMaxUnreducedArity) {
    throw std::invalid_argument("unreduced LP size guard: arity " + std::to_string(k) + " > " +
                                std::to_string(kMaxUnreducedArity));
  }
  if (spec.reduction == Reduction::kOrbit && k > kMaxReducedArity) {
    throw std::invalid_argument("reduced LP size guard: arity " + std::to_string(k) + " > " +
                                std::to_string(kMaxReducedArity));
  }
  if (spec.symmetric && !fam.complement_closed()) {
    throw std::invalid_argument("symmetric program requires a complement-closed support");
  }

  GadgetProgram prog;
  if (spec.reduction == Reduction::kOrbit) {
    prog.partition = orbit_partition(fam, spec.symmetric ? OrbitMode::kComplementClosed : OrbitMode::kPlain);
  } else {
    prog.partition = identity_partition(k);
  }
  const auto& orbit = prog.partition.orbit_of;
  const std::size_t vars = prog.partition.orbit_count();
  const std::size_t n = std::size_t{1} << k;
  prog.lp = LinearProgram(vars);

  const auto point_weight = biased_point_weights(k, spec.p);
  std::vector<Rational> obj(vars);
  for (PointIndex x = 0; x < n; ++x) obj[orbit[x]] += point_weight[static_cast<std::size_t>(weight(x))];
  SparseRow objective;
  for (std::uint32_t v = 0; v < vars; ++v) objective.emplace_back(v, obj[v]);
  prog.lp.set_objective(std::move(objective));

  std::unordered_set<SmallRow, SmallRowHash> seen;
  for (PointIndex s = 0; s < n; ++s) {
    for (int i = 0; i < k; ++i) {
      const PointIndex bi = PointIndex{1} << i;
      if (s & bi) continue;
      for (int j = i + 1; j < k; ++j) {
        const PointIndex bj = PointIndex{1} << j;
        if (s & bj) continue;
        SmallRow row = make_row(orbit[s], orbit[s | bi], orbit[s | bj], orbit[s | bi | bj]);
        if (row.len == 0 || !seen.insert(row).second) continue;
        SparseRow sparse;
        for (int t = 0; t < row.len; ++t) sparse.emplace_back(row.var[t], Rational(row.coef[t]));
        prog.lp.add_constraint(std::move(sparse), Sense::kLessEqual, Rational(0));
        ++prog.submodularity_rows;
      }
    }
  }

  std::vector<bool> bounded(vars, false);
  for (PointIndex x : fam.points) {
    const std::uint32_t v = orbit[x];
    if (bounded[v]) continue;
    bounded[v] = true;
    prog.lp.add_constraint({{v, Rational(1)}}, Sense::kGreaterEqual, Rational(1));
    ++prog.support_rows;
  }

  if (spec.symmetric && spec.reduction == Reduction::kNone) {
    for (PointIndex x = 0; x < n; ++x) {
      const PointIndex y = complement(x, k);
      if (x >= y) continue;
      prog.lp.add_constraint({{orbit[x], Rational(1)}, {orbit[y], Rational(-1)}}, Sense::kEqual, Rational(0));
      ++prog.symmetry_rows;
    }
  }
  return prog;
}

SetFunction lift_solution(const OrbitPartition& partition, const LPSolution& sol) {
  if (sol.status != LPStatus::kOptimal) {
    throw std::invalid_argument("cannot lift a non-optimal LP solution (" + to_string(sol.status) + ")");
  }
  if (sol.values.size() != partition.orbit_count()) {
    throw std::invalid_argument("LP solution size does not match the orbit count");
  }
  return SetFunction::tabulate(partition.k, [&](PointIndex x) { return sol.values[partition.orbit_of[x]]; });
}

Rational gadget_objective(const SetFunction& f, const Rational& p) {
  const auto w = biased_point_weights(f.arity(), p);
  Rational total;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (!f(x).is_zero()) total += w[static_cast<std::size_t>(weight(x))] * f(x);
  }
  return total;
}

LiftVerification verify_lift(const SetFunction& f, const GadgetBuildSpec& spec,
                             std::optional<Rational> expected_objective) {
  if (f.arity() != spec.family.k) throw std::invalid_argument("function arity does not match the support");
  LiftVerification report;
  auto violations = check_submodular(f);
  report.violation_count = violations.size();
  constexpr std::size_t kKeep = 16;
  if (violations.size() > kKeep) violations.resize(kKeep);
  report.violations = std::move(violations);
  for (PointIndex x : spec.family.points) {
    if (f(x) < Rational(1)) report.support_failures.push_back(x);
  }
  report.symmetry_required = spec.symmetric;
  report.symmetric = check_symmetric(f);
  report.objective = gadget_objective(f, spec.p);
  report.expected_objective = std::move(expected_objective);
  return report;
}

}  // namespace smg
