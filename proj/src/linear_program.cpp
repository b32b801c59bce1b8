#include "smg/linear_program.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace smg {

SparseRow normalize_row(SparseRow row) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  for (auto& [idx, coef] : row) {
    if (!out.empty() && out.back().first == idx) {
      out.back().second += coef;
    } else {
      out.emplace_back(idx, std::move(coef));
    }
    if (out.back().second.is_zero()) out.pop_back();
  }
  return out;
}

std::string to_string(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "?";
}

std::string to_string(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal: return "optimal";
    case LPStatus::kInfeasible: return "infeasible";
    case LPStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

void LinearProgram::check_row(const SparseRow& row) const {
  for (const auto& [idx, coef] : row) {
    if (idx >= num_vars_) throw std::out_of_range("LP row references a variable out of range");
  }
}

void LinearProgram::set_objective(SparseRow row) {
  row = normalize_row(std::move(row));
  check_row(row);
  objective_ = std::move(row);
}

std::size_t LinearProgram::add_constraint(SparseRow row, Sense sense, Rational rhs) {
  row = normalize_row(std::move(row));
  check_row(row);
  constraints_.push_back({std::move(row), sense, std::move(rhs)});
  return constraints_.size() - 1;
}

void LinearProgram::set_lower_bound(std::uint32_t var, Rational bound) {
  lower_bounds_.at(var) = std::move(bound);
}

// Format (one item per line, '#' starts a comment):
//   vars <n>
//   min <idx>:<coef> ...
//   row <=|>=|= <rhs> <idx>:<coef> ...
//   lb <idx> <value>            (only bounds other than 0 are written)
void LinearProgram::write_text(std::ostream& os) const {
  auto write_terms = [&](const SparseRow& row) {
    for (const auto& [idx, coef] : row) os << ' ' << idx << ':' << coef.str();
  };
  os << "# exact LP: minimize objective subject to rows and x >= lb\n";
  os << "vars " << num_vars_ << '\n';
  os << "min";
  write_terms(objective_);
  os << '\n';
  for (const auto& c : constraints_) {
    os << "row " << to_string(c.sense) << ' ' << c.rhs.str();
    write_terms(c.row);
    os << '\n';
  }
  for (std::size_t i = 0; i < lower_bounds_.size(); ++i) {
    if (!lower_bounds_[i].is_zero()) os << "lb " << i << ' ' << lower_bounds_[i].str() << '\n';
  }
}

LinearProgram LinearProgram::read_text(std::istream& is) {
  auto read_terms = [](std::istringstream& ls) {
    SparseRow row;
    std::string term;
    while (ls >> term) {
      auto colon = term.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("malformed LP term: " + term);
      row.emplace_back(static_cast<std::uint32_t>(std::stoul(term.substr(0, colon))),
                       Rational::parse(term.substr(colon + 1)));
    }
    return row;
  };
  LinearProgram lp;
  bool have_vars = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "vars") {
      std::size_t n = 0;
      ls >> n;
      lp = LinearProgram(n);
      have_vars = true;
    } else if (!have_vars) {
      throw std::invalid_argument("LP text must start with 'vars'");
    } else if (tag == "min") {
      lp.set_objective(read_terms(ls));
    } else if (tag == "row") {
      std::string sense, rhs;
      ls >> sense >> rhs;
      Sense s = sense == "<=" ? Sense::kLessEqual
                : sense == ">=" ? Sense::kGreaterEqual
                : sense == "=" ? Sense::kEqual
                               : throw std::invalid_argument("bad LP sense: " + sense);
      lp.add_constraint(read_terms(ls), s, Rational::parse(rhs));
    } else if (tag == "lb") {
      std::uint32_t idx = 0;
      std::string value;
      ls >> idx >> value;
      lp.set_lower_bound(idx, Rational::parse(value));
    } else {
      throw std::invalid_argument("unknown LP line tag: " + tag);
    }
  }
  if (!have_vars) throw std::invalid_argument("empty LP text");
  return lp;
}

namespace {

// Dictionary-form simplex on: maximize c.x s.t. A x <= b, x >= 0.
// Rows 0..m-1 hold constraints, row m the objective, row m+1 the phase-one
// objective. Column n is the phase-one artificial, column n+1 the rhs.
class Tableau {
 public:
  Tableau(const std::vector<SparseRow>& a, const std::vector<mpq_class>& b,
          const std::vector<mpq_class>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        basis_(static_cast<std::size_t>(m_)),
        nonbasis_(static_cast<std::size_t>(n_) + 1),
        d_(static_cast<std::size_t>(m_) + 2, std::vector<mpq_class>(static_cast<std::size_t>(n_) + 2)) {
    for (int i = 0; i < m_; ++i) {
      for (const auto& [j, coef] : a[static_cast<std::size_t>(i)]) at(i, static_cast<int>(j)) = coef.get();
      basis_[static_cast<std::size_t>(i)] = n_ + i;
      at(i, n_) = -1;
      at(i, n_ + 1) = b[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasis_[static_cast<std::size_t>(j)] = j;
      at(m_, j) = -c[static_cast<std::size_t>(j)];
    }
    nonbasis_[static_cast<std::size_t>(n_)] = -1;
    at(m_ + 1, n_) = 1;
  }

  LPStatus solve() {
    if (dual_feasible()) {
      if (!run_dual()) return LPStatus::kInfeasible;
      return run(1) ? LPStatus::kOptimal : LPStatus::kUnbounded;
    }
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && sgn(at(r, n_ + 1)) < 0) {
      pivot(r, n_);
      if (!run(2) || sgn(at(m_ + 1, n_ + 1)) < 0) return LPStatus::kInfeasible;
      for (int i = 0; i < m_; ++i) {
        if (basis_[static_cast<std::size_t>(i)] != -1) continue;
        for (int j = 0; j <= n_; ++j) {
          if (sgn(at(i, j)) != 0) {
            pivot(i, j);
            break;
          }
        }
      }
    }
    return run(1) ? LPStatus::kOptimal : LPStatus::kUnbounded;
  }

  std::vector<mpq_class> primal() const {
    std::vector<mpq_class> x(static_cast<std::size_t>(n_));
    for (int i = 0; i < m_; ++i) {
      int v = basis_[static_cast<std::size_t>(i)];
      if (v >= 0 && v < n_) x[static_cast<std::size_t>(v)] = at(i, n_ + 1);
    }
    return x;
  }

  // Multipliers of the <= rows in the dual of the max problem.
  std::vector<mpq_class> dual() const {
    std::vector<mpq_class> y(static_cast<std::size_t>(m_));
    for (int j = 0; j <= n_; ++j) {
      int v = nonbasis_[static_cast<std::size_t>(j)];
      if (v >= n_) y[static_cast<std::size_t>(v - n_)] = at(m_, j);
    }
    return y;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  mpq_class& at(int i, int j) { return d_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const mpq_class& at(int i, int j) const {
    return d_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  void pivot(int r, int s) {
    ++pivots_;
    auto& prow = d_[static_cast<std::size_t>(r)];
    const mpq_class inv = 1 / prow[static_cast<std::size_t>(s)];
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (static_cast<int>(j) != s && sgn(prow[j]) != 0) cols.push_back(j);
    }
    mpq_class factor, tmp;
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      auto& row = d_[static_cast<std::size_t>(i)];
      mpq_class& rs = row[static_cast<std::size_t>(s)];
      if (sgn(rs) == 0) continue;
      factor = rs * inv;
      for (std::size_t j : cols) {
        tmp = prow[j] * factor;
        row[j] -= tmp;
      }
      rs = -factor;
    }
    for (std::size_t j : cols) prow[j] *= inv;
    prow[static_cast<std::size_t>(s)] = inv;
    std::swap(basis_[static_cast<std::size_t>(r)], nonbasis_[static_cast<std::size_t>(s)]);
  }

  // phase 2 drives the artificial out (objective row m+1), phase 1 optimizes
  // the real objective (row m) with the artificial column frozen.
  bool run(int phase) {
    const int x = m_ + phase - 1;
    int degenerate_streak = 0;
    for (;;) {
      const bool bland = degenerate_streak >= kBlandAfter;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasis_[static_cast<std::size_t>(j)] == -phase) continue;
        if (sgn(at(x, j)) >= 0) continue;
        if (s == -1) {
          s = j;
          continue;
        }
        const int cmp_val = cmp(at(x, j), at(x, s));
        const bool smaller_index = nonbasis_[static_cast<std::size_t>(j)] < nonbasis_[static_cast<std::size_t>(s)];
        if (bland ? smaller_index : (cmp_val < 0 || (cmp_val == 0 && smaller_index))) s = j;
      }
      if (s == -1) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (sgn(at(i, s)) <= 0) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        // ratio_i < ratio_r  <=>  b_i * a_rs < b_r * a_is (denominators positive)
        const int c = cmp(at(i, n_ + 1) * at(r, s), at(r, n_ + 1) * at(i, s));
        if (c < 0 || (c == 0 && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(r)])) r = i;
      }
      if (r == -1) return false;
      degenerate_streak = sgn(at(r, n_ + 1)) == 0 ? degenerate_streak + 1 : 0;
      pivot(r, s);
    }
  }

  bool dual_feasible() const {
    for (int j = 0; j < n_; ++j) {
      if (sgn(at(m_, j)) < 0) return false;
    }
    return true;
  }

  // Dual simplex from a dual-feasible dictionary. Leaving row: most negative
  // rhs (Bland: smallest basic index during degenerate runs); entering
  // column: smallest ratio d_j / -a_rj, ties to the smallest variable index.
  // Returns false when some row proves primal infeasibility.
  bool run_dual() {
    int degenerate_streak = 0;
    for (;;) {
      const bool bland = degenerate_streak >= kBlandAfter;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (sgn(at(i, n_ + 1)) >= 0) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const int c = cmp(at(i, n_ + 1), at(r, n_ + 1));
        const bool smaller_index = basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(r)];
        if (bland ? smaller_index : (c < 0 || (c == 0 && smaller_index))) r = i;
      }
      if (r == -1) return true;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasis_[static_cast<std::size_t>(j)] == -1) continue;
        if (sgn(at(r, j)) >= 0) continue;
        if (s == -1) {
          s = j;
          continue;
        }
        // d_j / -a_rj < d_s / -a_rs  <=>  d_j * a_rs > d_s * a_rj (both a negative)
        const int c = cmp(at(m_, j) * at(r, s), at(m_, s) * at(r, j));
        if (c > 0 || (c == 0 && nonbasis_[static_cast<std::size_t>(j)] < nonbasis_[static_cast<std::size_t>(s)])) s = j;
      }
      if (s == -1) return false;
      degenerate_streak = sgn(at(m_, s)) == 0 ? degenerate_streak + 1 : 0;
      pivot(r, s);
    }
  }

  static constexpr int kBlandAfter = 32;

  int m_, n_;
  std::vector<int> basis_, nonbasis_;
  std::vector<std::vector<mpq_class>> d_;
  std::size_t pivots_ = 0;
};

struct MaxRowOrigin {
  std::size_t constraint;
  bool negated;
};

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  const auto& lb = lp.lower_bounds();

  // Shift x = lb + x' and rewrite every constraint as <= rows of a maximization.
  std::vector<SparseRow> a;
  std::vector<mpq_class> b;
  std::vector<MaxRowOrigin> origin;
  for (std::size_t r = 0; r < lp.constraints().size(); ++r) {
    const auto& con = lp.constraints()[r];
    Rational rhs = con.rhs;
    for (const auto& [idx, coef] : con.row) rhs -= coef * lb[idx];
    if (con.sense != Sense::kGreaterEqual) {
      a.push_back(con.row);
      b.push_back(rhs.get());
      origin.push_back({r, false});
    }
    if (con.sense != Sense::kLessEqual) {
      SparseRow neg = con.row;
      for (auto& term : neg) term.second = -term.second;
      a.push_back(std::move(neg));
      b.push_back(-rhs.get());
      origin.push_back({r, true});
    }
  }
  std::vector<mpq_class> c(n);
  for (const auto& [idx, coef] : lp.objective()) c[idx] = -coef.get();

  Tableau tableau(a, b, c);
  LPSolution sol;
  sol.status = tableau.solve();
  sol.pivots = tableau.pivots();
  if (sol.status != LPStatus::kOptimal) return sol;

  auto shifted = tableau.primal();
  sol.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) sol.values[j] = lb[j] + Rational(shifted[j]);
  for (const auto& [idx, coef] : lp.objective()) sol.objective += coef * sol.values[idx];

  auto y = tableau.dual();
  sol.duals.assign(lp.constraints().size(), Rational(0));
  for (std::size_t i = 0; i < y.size(); ++i) {
    Rational yi(y[i]);
    if (origin[i].negated) {
      sol.duals[origin[i].constraint] += yi;
    } else {
      sol.duals[origin[i].constraint] -= yi;
    }
  }

  if (!check_certificate(lp, sol).ok()) {
    throw std::logic_error("simplex produced an optimum whose dual certificate does not verify");
  }
  return sol;
}

CertificateCheck check_certificate(const LinearProgram& lp, const LPSolution& sol) {
  CertificateCheck out;
  const std::size_t n = lp.num_vars();
  if (sol.status != LPStatus::kOptimal || sol.values.size() != n ||
      sol.duals.size() != lp.constraints().size()) {
    return out;
  }
  const auto& lb = lp.lower_bounds();

  out.primal_feasible = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (sol.values[j] < lb[j]) out.primal_feasible = false;
  }
  for (const auto& [idx, coef] : lp.objective()) out.primal_objective += coef * sol.values[idx];

  // Reduced costs c - A^T lambda must be >= 0; multiplier signs follow the sense.
  std::vector<Rational> reduced(n);
  for (const auto& [idx, coef] : lp.objective()) reduced[idx] = coef;
  out.dual_feasible = true;
  Rational dual_obj;
  for (std::size_t r = 0; r < lp.constraints().size(); ++r) {
    const auto& con = lp.constraints()[r];
    const Rational& lambda = sol.duals[r];
    Rational lhs;
    for (const auto& [idx, coef] : con.row) {
      lhs += coef * sol.values[idx];
      reduced[idx] -= coef * lambda;
    }
    switch (con.sense) {
      case Sense::kLessEqual:
        if (lhs > con.rhs) out.primal_feasible = false;
        if (lambda.sign() > 0) out.dual_feasible = false;
        break;
      case Sense::kGreaterEqual:
        if (lhs < con.rhs) out.primal_feasible = false;
        if (lambda.sign() < 0) out.dual_feasible = false;
        break;
      case Sense::kEqual:
        if (lhs != con.rhs) out.primal_feasible = false;
        break;
    }
    dual_obj += con.rhs * lambda;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (reduced[j].sign() < 0) out.dual_feasible = false;
    dual_obj += lb[j] * reduced[j];
  }
  out.dual_objective = dual_obj;
  return out;
}

}  // namespace smg
