#include "smg/soundness.hpp"

#include <stdexcept>

namespace smg {

Rational completeness(const SetFunction& f, const FiniteDistribution& mu) {
  if (f.arity() != mu.arity()) throw std::invalid_argument("completeness: arity mismatch");
  Rational total;
  for (const auto& [x, prob] : mu.atoms()) total += prob * f(x);
  return total;
}

namespace {

struct Candidate {
  Rational lo, hi, point, lower, upper;
};

bool nondecreasing_to_middle(const std::vector<Rational>& a, int k) {
  for (int t = 1; t <= k / 2; ++t) {
    if (a[static_cast<std::size_t>(t)] < a[static_cast<std::size_t>(t - 1)]) return false;
  }
  return true;
}

}  // namespace

SoundnessCertificate certify_soundness(const SetFunction& f, const Rational& tol) {
  if (tol.sign() <= 0) throw std::invalid_argument("soundness tolerance must be positive");
  const BiasPolynomial s = biased_expectation_poly(f);
  const Polynomial ds = s.derivative();
  const Rational zero(0), one(1), half(1, 2);

  SoundnessCertificate cert;
  cert.s_half = s(half);

  if (ds.is_zero()) {
    cert.argmax_lo = zero;
    cert.argmax_hi = one;
    cert.argmax_point = half;
    cert.s_lower = cert.s_upper = cert.s_half;
    cert.argmax_certified = true;
    return cert;
  }

  std::vector<Candidate> candidates;
  candidates.push_back({zero, zero, zero, s(zero), s(zero)});
  for (const auto& root : isolate_real_roots(ds, zero, one, tol)) {
    if (root.exact()) {
      Rational v = s(root.lo);
      candidates.push_back({root.lo, root.hi, root.lo, v, v});
      continue;
    }
    ++cert.critical_intervals;
    const Rational mid = (root.lo + root.hi) / Rational(2);
    const Rational v = s(mid);
    // Mean value form: |s(p) - s(mid)| <= max|s'| * |p - mid| on the interval.
    const Rational slack = abs_bound_on(ds, root.lo, root.hi) * (root.hi - root.lo) / Rational(2);
    candidates.push_back({root.lo, root.hi, mid, v, v + slack});
  }
  candidates.push_back({one, one, one, s(one), s(one)});

  std::size_t best = 0;
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    if (candidates[c].upper > candidates[best].upper) best = c;
  }
  Rational best_lower = candidates[0].lower;
  std::size_t best_lower_at = 0;
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    if (candidates[c].lower > best_lower) {
      best_lower = candidates[c].lower;
      best_lower_at = c;
    }
  }
  cert.s_upper = candidates[best].upper;
  cert.s_lower = best_lower;
  cert.argmax_point = candidates[best_lower_at].point;
  cert.argmax_lo = candidates[best].lo;
  cert.argmax_hi = candidates[best].hi;
  cert.argmax_certified = best == best_lower_at;
  for (std::size_t c = 0; c < candidates.size() && cert.argmax_certified; ++c) {
    if (c != best && candidates[c].upper >= candidates[best].lower) cert.argmax_certified = false;
  }

  if (check_symmetric(f) && nondecreasing_to_middle(weight_profile(f), f.arity())) {
    if (!(cert.s_lower <= cert.s_half && cert.s_half <= cert.s_upper)) {
      throw std::logic_error("symmetric-bias shortcut disagrees with the polynomial enclosure");
    }
    cert.via_lemma = true;
    cert.s_lower = cert.s_upper = cert.s_half;
    cert.argmax_lo = cert.argmax_hi = cert.argmax_point = half;
    cert.argmax_certified = true;
  }
  return cert;
}

bool check_symmetrybias_hypothesis(const SetFunction& f) {
  if (!check_symmetric(f)) throw std::invalid_argument("symmetric-bias hypothesis needs a symmetric function");
  return nondecreasing_to_middle(weight_profile(f), f.arity());
}

bool is_monotone(const SetFunction& f) {
  for (PointIndex x = 0; x < f.size(); ++x) {
    for (int i = 0; i < f.arity(); ++i) {
      const PointIndex b = PointIndex{1} << i;
      if (!(x & b) && f(x) > f(x | b)) return false;
    }
  }
  return true;
}

std::vector<MargulisRussoPoint> validate_margulis_russo(const SetFunction& f, const std::vector<Rational>& p_grid) {
  for (const auto& v : f.values()) {
    if (v != Rational(0) && v != Rational(1)) throw std::invalid_argument("Margulis-Russo needs a 0/1-valued function");
  }
  if (!is_monotone(f)) throw std::invalid_argument("Margulis-Russo needs a monotone function");

  const int k = f.arity();
  // pivotal[w] = number of (x, i) with |x| = w and i pivotal at x.
  std::vector<long> pivotal(static_cast<std::size_t>(k) + 1, 0);
  for (PointIndex x = 0; x < f.size(); ++x) {
    for (int i = 0; i < k; ++i) {
      const PointIndex b = PointIndex{1} << i;
      if (f(x & ~b).is_zero() && !f(x | b).is_zero()) ++pivotal[static_cast<std::size_t>(weight(x))];
    }
  }
  const Polynomial ds = biased_expectation_poly(f).derivative();
  std::vector<MargulisRussoPoint> out;
  for (const auto& p : p_grid) {
    if (p < Rational(0) || p > Rational(1)) throw std::invalid_argument("bias outside [0,1]");
    const auto w = biased_point_weights(k, p);
    MargulisRussoPoint pt{p, Rational(0), ds(p)};
    for (int t = 0; t <= k; ++t) pt.pivotal_sum += w[static_cast<std::size_t>(t)] * Rational(pivotal[static_cast<std::size_t>(t)]);
    out.push_back(std::move(pt));
  }
  return out;
}

bool GadgetReport::passed() const {
  return verification.passed() && completeness >= completeness_floor && certificate.s_lower <= certificate.s_upper;
}

std::string gadget_id(SupportOrigin origin, int l) {
  return (origin == SupportOrigin::kSymmetric ? "fsym" : "f") + std::to_string(l);
}

std::pair<SupportOrigin, int> parse_gadget_id(const std::string& id) {
  auto parse_l = [&](std::size_t from) {
    if (from >= id.size() || id.size() - from > 2) throw std::invalid_argument("unknown gadget id: " + id);
    for (std::size_t i = from; i < id.size(); ++i) {
      if (id[i] < '0' || id[i] > '9') throw std::invalid_argument("unknown gadget id: " + id);
    }
    return std::stoi(id.substr(from));
  };
  if (id.rfind("fsym", 0) == 0) return {SupportOrigin::kSymmetric, parse_l(4)};
  if (id.rfind("f", 0) == 0) return {SupportOrigin::kAsymmetric, parse_l(1)};
  throw std::invalid_argument("unknown gadget id: " + id);
}

GadgetReport gadget_report(SupportOrigin origin, int l, const GadgetReportOptions& options) {
  if (origin == SupportOrigin::kCustom) throw std::invalid_argument("gadget report needs a Hadamard origin");
  GadgetReport report;
  report.id = gadget_id(origin, l);
  report.origin = origin;
  report.l = l;

  GadgetBuildSpec spec;
  const bool sym = origin == SupportOrigin::kSymmetric;
  spec.family = sym ? build_symmetric_support(l) : build_asymmetric_support(l);
  spec.symmetric = sym;
  spec.reduction = Reduction::kOrbit;
  report.k = spec.family.k;

  GadgetProgram prog = build_min_submodular_lp(spec);
  report.lp_variables = prog.lp.num_vars();
  report.lp_constraints = prog.lp.constraints().size();
  LPSolution sol = solve_lp(prog.lp);
  report.pivots = sol.pivots;
  if (sol.status != LPStatus::kOptimal) {
    throw std::runtime_error(report.id + ": gadget LP is " + to_string(sol.status));
  }
  report.lp_objective = sol.objective;
  report.function = lift_solution(prog.partition, sol);
  report.verification = verify_lift(report.function, spec, sol.objective);

  report.completeness = completeness(report.function, spec.family.mu);
  report.completeness_floor = Rational(1) - inverse_power_of_two(static_cast<unsigned>(sym ? l - 1 : l));
  report.certificate = certify_soundness(report.function, options.tol);
  report.ratio = report.certificate.s_upper / report.completeness;
  if (sym) report.symmetrybias_hypothesis = check_symmetrybias_hypothesis(report.function);

  if (options.cross_check_bias) {
    const Rational mid = (report.certificate.argmax_lo + report.certificate.argmax_hi) / Rational(2);
    // Round to six decimals for a compact rational bias.
    const mpz_class scaled = (mid.numerator() * 1000000 * 2 + mid.denominator()) / (mid.denominator() * 2);
    GadgetBuildSpec at_p = spec;
    at_p.p = Rational(scaled, mpz_class(1000000));
    GadgetProgram reprog = build_min_submodular_lp(at_p);
    LPSolution resol = solve_lp(reprog.lp);
    if (resol.status == LPStatus::kOptimal) {
      report.bias_cross_check = BiasCrossCheck{at_p.p, resol.objective, gadget_objective(report.function, at_p.p)};
    }
  }
  return report;
}

}  // namespace smg
