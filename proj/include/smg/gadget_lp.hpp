#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smg/codes.hpp"
#include "smg/linear_program.hpp"
#include "smg/set_function.hpp"

namespace smg {

enum class Reduction { kNone, kOrbit };

/// Parameters of a minimum submodular upper bound program SM_p(C).
struct GadgetBuildSpec {
  SupportFamily family;
  Rational p = Rational(1, 2);
  bool symmetric = false;
  Reduction reduction = Reduction::kOrbit;
};

inline constexpr int kMaxUnreducedArity = 8;
inline constexpr int kMaxReducedArity = 16;

/// The LP over f-values (one variable per orbit) and the partition it uses.
/// For unreduced programs the partition is the identity.
struct GadgetProgram {
  LinearProgram lp;
  OrbitPartition partition;
  std::size_t submodularity_rows = 0;
  std::size_t support_rows = 0;
  std::size_t symmetry_rows = 0;
};

/// Minimize sum_x p^|x| (1-p)^(k-|x|) f(x) subject to the pair condition
/// f(S) - f(S+i) - f(S+j) + f(S+i+j) <= 0, f >= 1 on the support, f >= 0,
/// and f(x) = f(~x) when symmetric. Reduced programs collapse variables
/// by orbit and deduplicate the mapped rows.
GadgetProgram build_min_submodular_lp(const GadgetBuildSpec& spec);

/// Identity partition: every point is its own orbit.
OrbitPartition identity_partition(int k);

/// Expands per-orbit values to the full table. Throws unless optimal.
SetFunction lift_solution(const OrbitPartition& partition, const LPSolution& sol);

struct LiftVerification {
  std::vector<SubmodularityViolation> violations;  // first few only
  std::size_t violation_count = 0;
  std::vector<PointIndex> support_failures;  // support points with f < 1
  bool symmetry_required = false;
  bool symmetric = true;
  Rational objective;
  std::optional<Rational> expected_objective;

  bool submodular() const { return violation_count == 0; }
  bool objective_matches() const { return !expected_objective || *expected_objective == objective; }
  bool passed() const {
    return submodular() && support_failures.empty() && (!symmetry_required || symmetric) &&
           objective_matches();
  }
};

/// Full-hypercube re-verification of a candidate optimum. When
/// `expected_objective` is given, the recomputed objective must equal it.
LiftVerification verify_lift(const SetFunction& f, const GadgetBuildSpec& spec,
                             std::optional<Rational> expected_objective = std::nullopt);

/// Objective of the program evaluated at f.
Rational gadget_objective(const SetFunction& f, const Rational& p);

}  // namespace smg
