#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smg/codes.hpp"
#include "smg/gadget_lp.hpp"
#include "smg/polynomial.hpp"
#include "smg/set_function.hpp"

namespace smg {

/// E_{x~mu} f(x). Throws std::invalid_argument on an arity mismatch.
Rational completeness(const SetFunction& f, const FiniteDistribution& mu);

/// Certified enclosure of s(f) = max over p in [0,1] of s_p(f).
struct SoundnessCertificate {
  Rational s_half;
  Rational argmax_lo;
  Rational argmax_hi;
  Rational argmax_point;  // where s_lower was evaluated
  Rational s_lower;       // s_p(f) at argmax_point, a true value
  Rational s_upper;       // proven upper bound on the maximum
  bool via_lemma = false;
  /// True when the argmax candidate's lower value beats every other candidate's
  /// upper bound, so the argmax provably lies in [argmax_lo, argmax_hi].
  bool argmax_certified = false;
  /// Number of critical-point intervals of s_p' examined in (0,1).
  std::size_t critical_intervals = 0;
};

inline Rational default_soundness_tol() { return Rational(1, 1000000000); }

/// Isolates every critical point of s_p(f) in [0,1] to width <= tol,
/// bounds s_p on each isolating interval by the mean-value form, and adds
/// the endpoints p = 0, 1. When f is symmetric with a weight profile
/// nondecreasing up to k/2 the maximum is s_{1/2}(f) exactly (via_lemma),
/// which is cross-checked against the polynomial enclosure.
SoundnessCertificate certify_soundness(const SetFunction& f, const Rational& tol = default_soundness_tol());

/// a(0) <= a(1) <= ... <= a(floor(k/2)). Throws std::invalid_argument if f is
/// not symmetric.
bool check_symmetrybias_hypothesis(const SetFunction& f);

struct MargulisRussoPoint {
  Rational p;
  Rational pivotal_sum;  // sum_i Pr[f(x\i) = 0 and f(x+i) = 1]
  Rational derivative;   // d/dp s_p(f)
  bool equal() const { return pivotal_sum == derivative; }
};

/// Compares the pivotal-probability formula with the exact derivative of
/// s_p(f) at each p. Requires f monotone and 0/1-valued.
std::vector<MargulisRussoPoint> validate_margulis_russo(const SetFunction& f, const std::vector<Rational>& p_grid);

bool is_monotone(const SetFunction& f);

/// Result of re-solving SM_p(C) at a rational p near the certified argmax.
struct BiasCrossCheck {
  Rational p;
  Rational resolved_objective;
  Rational gadget_objective_at_p;
  bool same_optimum() const { return resolved_objective == gadget_objective_at_p; }
};

struct GadgetReport {
  std::string id;  // e.g. "fsym5", "f4"
  SupportOrigin origin = SupportOrigin::kSymmetric;
  int l = 0;
  int k = 0;
  std::size_t lp_variables = 0;
  std::size_t lp_constraints = 0;
  std::size_t pivots = 0;
  Rational lp_objective;
  Rational completeness;
  Rational completeness_floor;  // 1 - 2^-l or 1 - 2^(1-l)
  SoundnessCertificate certificate;
  Rational ratio;  // certificate.s_upper / completeness
  LiftVerification verification;
  bool symmetrybias_hypothesis = false;
  std::optional<BiasCrossCheck> bias_cross_check;
  SetFunction function;

  bool passed() const;
};

struct GadgetReportOptions {
  Rational tol = default_soundness_tol();
  bool cross_check_bias = false;
};

/// Gadget id as used on the command line: "f<l>" or "fsym<l>".
std::string gadget_id(SupportOrigin origin, int l);
/// Parses "f3", "fsym5", ...; throws std::invalid_argument otherwise.
std::pair<SupportOrigin, int> parse_gadget_id(const std::string& id);

/// Builds the support, solves the orbit-reduced SM_{1/2} program, lifts and
/// re-verifies the optimum on the full hypercube, then certifies soundness.
GadgetReport gadget_report(SupportOrigin origin, int l, const GadgetReportOptions& options = {});

}  // namespace smg
