#pragma once

#include <string>
#include <vector>

#include "pricekit/price_system.hpp"

namespace pricekit {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Direction { Minimize, Maximize };

struct LinearTerm {
  int variable;
  Rational coefficient;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

struct LpVariable {
  std::string name;
  Rational lower;
};

class LinearProgram {
 public:
  int add_variable(std::string name, Rational lower = 0);
  // Throws OutOfRange for terms naming undeclared variables.
  void add_constraint(std::string name, std::vector<LinearTerm> terms, Relation relation, Rational rhs);
  void set_objective(Direction direction, std::vector<LinearTerm> terms);

  const std::vector<LpVariable>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }
  Direction direction() const { return direction_; }

  // Plain-text standard form: variables with bounds, constraint rows, objective.
  std::string to_text() const;

 private:
  void check_terms(const std::vector<LinearTerm>& terms) const;

  std::vector<LpVariable> variables_;
  std::vector<LinearConstraint> constraints_;
  std::vector<LinearTerm> objective_;
  Direction direction_ = Direction::Minimize;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* lp_status_name(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;            // Optimal only
  std::vector<Rational> values;  // Optimal only, one per variable
  long pivots = 0;
};

// Two-phase tableau simplex over exact rationals with Bland's rule.
LpSolution solve_lp_exact(const LinearProgram& lp);

struct PriceabilityResult {
  PriceSystem system;
  Rational objective;  // Σ_{i<j} |b_i - b_j|
  long cuts = 0;
  long pivots = 0;
};

// Residual-stable price system minimising Σ_{i<j} |b_i - b_j|.
PriceabilityResult approximate_priceability_solve(const ApprovalProfile& profile, const Committee& committee);
inline PriceSystem approximate_priceability(const ApprovalProfile& profile, const Committee& committee) {
  return approximate_priceability_solve(profile, committee).system;
}

// The same problem with one slack d_ij per voter pair. Variable order: r_i, p(i,c) by slot then voter, d_ij.
LinearProgram pairwise_priceability_lp(const ApprovalProfile& profile, const Committee& committee);

// Funding equalities for c2 and c8 plus the six residual-free deviation bounds of the
// 8-voter, 9-candidate instance with W = {c2, c5, c8}; feasible iff a weakly stable
// system with zero residuals could exist.
LinearProgram weak_stability_nonexistence_lp();

}  // namespace pricekit
