#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "smg/rational.hpp"

namespace smg {

/// Sparse row: (variable index, coefficient), sorted by index, no zeros.
using SparseRow = std::vector<std::pair<std::uint32_t, Rational>>;

/// Sorts by index, merges duplicates, and drops zero coefficients.
SparseRow normalize_row(SparseRow row);

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

std::string to_string(Sense sense);

struct Constraint {
  SparseRow row;
  Sense sense = Sense::kLessEqual;
  Rational rhs;
};

/// Minimize objective.x subject to the constraints and x >= lower_bounds.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars = 0)
      : num_vars_(num_vars), lower_bounds_(num_vars, Rational(0)) {}

  std::size_t num_vars() const { return num_vars_; }
  const SparseRow& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Rational>& lower_bounds() const { return lower_bounds_; }

  void set_objective(SparseRow row);
  /// Returns the index of the new constraint.
  std::size_t add_constraint(SparseRow row, Sense sense, Rational rhs);
  void set_lower_bound(std::uint32_t var, Rational bound);

  /// Documented plain-text export; one constraint per line, exact rationals.
  void write_text(std::ostream& os) const;
  static LinearProgram read_text(std::istream& is);

 private:
  void check_row(const SparseRow& row) const;

  std::size_t num_vars_;
  SparseRow objective_;
  std::vector<Constraint> constraints_;
  std::vector<Rational> lower_bounds_;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

std::string to_string(LPStatus status);

/// Solver output. When optimal, `duals` holds one multiplier per constraint
/// with sign convention d(objective)/d(rhs): >= 0 for >= rows, <= 0 for <=
/// rows, free for equalities.
struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  std::vector<Rational> values;
  Rational objective;
  std::vector<Rational> duals;
  std::size_t pivots = 0;
};

/// Exact dense simplex. Programs whose slack basis is dual feasible (e.g.
/// minimization with non-negative costs) run the dual simplex; others run
/// the two-phase primal. Pivoting is Dantzig's rule with an index tie-break,
/// falling back to Bland's rule during runs of degenerate pivots, so it
/// cannot cycle. Deterministic. Optimal solutions are checked against their
/// dual certificate before returning.
LPSolution solve_lp(const LinearProgram& lp);

struct CertificateCheck {
  bool primal_feasible = false;
  bool dual_feasible = false;
  Rational primal_objective;
  Rational dual_objective;

  bool ok() const { return primal_feasible && dual_feasible && primal_objective == dual_objective; }
};

/// Independent exact check of an optimal solution's strong-duality certificate.
CertificateCheck check_certificate(const LinearProgram& lp, const LPSolution& sol);

}  // namespace smg
