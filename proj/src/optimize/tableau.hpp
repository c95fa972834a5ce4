#pragma once

#include <vector>

#include "pricekit/optimize.hpp"

namespace pricekit::detail {

// Dense simplex tableau over x >= 0 in equality form. Column indices below
// `structural` are the caller's variables; the rest are slacks.
class Tableau {
 public:
  // Builds the phase-one tableau from lp with lower bounds shifted to zero.
  explicit Tableau(const LinearProgram& lp);

  // Both phases. Infeasible / Unbounded / Optimal.
  LpStatus solve();

  // Adds Σ coef·x <= rhs over structural columns (shifted coordinates) and restores
  // primal feasibility with the dual simplex. Only valid after an Optimal solve.
  LpStatus add_cut(const std::vector<LinearTerm>& terms, const Rational& rhs);

  // Values in the caller's coordinates (lower bounds added back).
  std::vector<Rational> values() const;
  Rational objective() const;
  // Shadow prices of the inequality rows, original constraints first and cuts after,
  // signed for the caller's direction. Equalities report 0.
  std::vector<Rational> duals() const;
  long pivots() const { return pivots_; }

 private:
  void pivot(int row, int col);
  LpStatus primal(int column_limit);
  LpStatus dual();
  void load_costs(const std::vector<Rational>& cost);

  int structural_ = 0;
  int columns_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> reduced_;
  Rational value_;  // current cost of the basis, in minimisation form
  std::vector<Rational> cost_;  // phase-two costs (minimisation form) per column
  std::vector<Rational> lower_;
  Rational offset_;  // objective contribution of the shifted lower bounds
  bool maximize_ = false;
  struct RowSlack {
    int column;  // -1 for equalities
    int sign;    // slack coefficient in the stored row
    bool flipped;
  };
  std::vector<RowSlack> slack_of_;
  int artificial_begin_ = 0;
  long pivots_ = 0;
};

}  // namespace pricekit::detail
