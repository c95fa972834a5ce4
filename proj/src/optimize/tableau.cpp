#include "tableau.hpp"

#include <algorithm>

#include "pricekit/error.hpp"

namespace pricekit::detail {
namespace {

constexpr int kDegenerateRun = 50;

// target -= factor * source, without expression-template temporaries.
void sub_mul(Rational& target, const Rational& factor, const Rational& source, Rational& scratch) {
  mpq_mul(scratch.get_mpq_t(), factor.get_mpq_t(), source.get_mpq_t());
  mpq_sub(target.get_mpq_t(), target.get_mpq_t(), scratch.get_mpq_t());
}

}  // namespace

Tableau::Tableau(const LinearProgram& lp) {
  const auto& vars = lp.variables();
  const auto& cons = lp.constraints();
  structural_ = static_cast<int>(vars.size());
  maximize_ = lp.direction() == Direction::Maximize;
  for (const auto& v : vars) lower_.push_back(v.lower);

  struct Row {
    std::vector<Rational> coef;
    Relation relation;
    Rational rhs;
    bool flipped;
  };
  std::vector<Row> rows;
  int slacks = 0, artificials = 0;
  for (const auto& c : cons) {
    Row row{std::vector<Rational>(structural_), c.relation, c.rhs, false};
    for (const auto& t : c.terms) {
      row.coef[t.variable] += t.coefficient;
      row.rhs -= t.coefficient * lower_[t.variable];
    }
    if (sgn(row.rhs) < 0) {
      for (auto& x : row.coef) x = -x;
      row.rhs = -row.rhs;
      row.flipped = true;
      if (row.relation == Relation::LessEqual)
        row.relation = Relation::GreaterEqual;
      else if (row.relation == Relation::GreaterEqual)
        row.relation = Relation::LessEqual;
    }
    if (row.relation != Relation::Equal) ++slacks;
    if (row.relation != Relation::LessEqual) ++artificials;
    rows.push_back(std::move(row));
  }

  artificial_begin_ = structural_ + slacks;
  columns_ = artificial_begin_ + artificials;
  int next_slack = structural_, next_art = artificial_begin_;
  for (auto& row : rows) {
    std::vector<Rational> line(columns_);
    std::copy(row.coef.begin(), row.coef.end(), line.begin());
    int basic = -1;
    if (row.relation == Relation::LessEqual) {
      slack_of_.push_back({next_slack, 1, row.flipped});
      line[next_slack] = 1;
      basic = next_slack++;
    } else {
      if (row.relation == Relation::GreaterEqual) {
        slack_of_.push_back({next_slack, -1, row.flipped});
        line[next_slack++] = -1;
      } else {
        slack_of_.push_back({-1, 0, row.flipped});
      }
      line[next_art] = 1;
      basic = next_art++;
    }
    a_.push_back(std::move(line));
    rhs_.push_back(row.rhs);
    basis_.push_back(basic);
  }

  cost_.assign(columns_, Rational(0));
  for (const auto& t : lp.objective()) {
    cost_[t.variable] += maximize_ ? Rational(-t.coefficient) : t.coefficient;
    offset_ += t.coefficient * lower_[t.variable];
  }
  reduced_.assign(columns_, Rational(0));
}

void Tableau::load_costs(const std::vector<Rational>& cost) {
  reduced_ = cost;
  reduced_.resize(columns_);
  value_ = 0;
  Rational scratch;
  for (size_t r = 0; r < a_.size(); ++r) {
    const Rational& cb = cost[basis_[r]];
    if (sgn(cb) == 0) continue;
    for (int j = 0; j < columns_; ++j)
      if (sgn(a_[r][j]) != 0) sub_mul(reduced_[j], cb, a_[r][j], scratch);
    value_ += cb * rhs_[r];
  }
}

void Tableau::pivot(int row, int col) {
  ++pivots_;
  auto& prow = a_[row];
  const Rational p = prow[col];
  std::vector<int> nz;
  for (int j = 0; j < columns_; ++j)
    if (sgn(prow[j]) != 0) {
      prow[j] /= p;
      nz.push_back(j);
    }
  rhs_[row] /= p;

  Rational scratch, f;
  for (size_t r = 0; r < a_.size(); ++r) {
    if (static_cast<int>(r) == row || sgn(a_[r][col]) == 0) continue;
    f = a_[r][col];
    for (int j : nz) sub_mul(a_[r][j], f, prow[j], scratch);
    sub_mul(rhs_[r], f, rhs_[row], scratch);
  }
  if (sgn(reduced_[col]) != 0) {
    f = reduced_[col];
    for (int j : nz) sub_mul(reduced_[j], f, prow[j], scratch);
    mpq_mul(scratch.get_mpq_t(), f.get_mpq_t(), rhs_[row].get_mpq_t());
    value_ += scratch;
  }
  basis_[row] = col;
}

// Dantzig pricing while the objective strictly improves; after a run of degenerate
// pivots switch to Bland's rule until the next strict improvement, which rules out cycling.
LpStatus Tableau::primal(int column_limit) {
  int degenerate = 0;
  while (true) {
    const bool bland = degenerate >= kDegenerateRun;
    int enter = -1;
    for (int j = 0; j < column_limit; ++j) {
      if (sgn(reduced_[j]) >= 0) continue;
      if (enter < 0 || (!bland && reduced_[j] < reduced_[enter])) enter = j;
      if (bland) break;
    }
    if (enter < 0) return LpStatus::Optimal;

    int leave = -1;
    Rational best, ratio;
    for (size_t r = 0; r < a_.size(); ++r) {
      if (sgn(a_[r][enter]) <= 0) continue;
      ratio = rhs_[r] / a_[r][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
        leave = static_cast<int>(r);
        best = ratio;
      }
    }
    if (leave < 0) return LpStatus::Unbounded;
    degenerate = sgn(best) == 0 ? degenerate + 1 : 0;
    pivot(leave, enter);
  }
}

// Most infeasible row first, Bland's choice of smallest basic index after a degenerate run.
LpStatus Tableau::dual() {
  int degenerate = 0;
  while (true) {
    const bool bland = degenerate >= kDegenerateRun;
    int leave = -1;
    for (size_t r = 0; r < a_.size(); ++r) {
      if (sgn(rhs_[r]) >= 0) continue;
      if (leave < 0 || (bland ? basis_[r] < basis_[leave] : rhs_[r] < rhs_[leave])) leave = static_cast<int>(r);
    }
    if (leave < 0) return LpStatus::Optimal;

    int enter = -1;
    Rational best, ratio;
    for (int j = 0; j < columns_; ++j) {
      if (sgn(a_[leave][j]) >= 0) continue;
      ratio = reduced_[j] / -a_[leave][j];
      if (enter < 0 || ratio < best) {
        enter = j;
        best = ratio;
      }
    }
    if (enter < 0) return LpStatus::Infeasible;
    degenerate = sgn(best) == 0 ? degenerate + 1 : 0;
    pivot(leave, enter);
  }
}

LpStatus Tableau::solve() {
  if (artificial_begin_ < columns_) {
    std::vector<Rational> phase1(columns_);
    for (int j = artificial_begin_; j < columns_; ++j) phase1[j] = 1;
    load_costs(phase1);
    primal(columns_);
    if (sgn(value_) > 0) return LpStatus::Infeasible;

    std::vector<char> keep(a_.size(), 1);
    for (size_t r = 0; r < a_.size(); ++r) {
      if (basis_[r] < artificial_begin_) continue;
      int col = -1;
      for (int j = 0; j < artificial_begin_ && col < 0; ++j)
        if (sgn(a_[r][j]) != 0) col = j;
      if (col >= 0)
        pivot(static_cast<int>(r), col);
      else
        keep[r] = 0;  // redundant equality
    }
    size_t w = 0;
    for (size_t r = 0; r < a_.size(); ++r) {
      if (!keep[r]) continue;
      if (w != r) {
        a_[w] = std::move(a_[r]);
        rhs_[w] = rhs_[r];
        basis_[w] = basis_[r];
      }
      a_[w++].resize(artificial_begin_);
    }
    a_.resize(w);
    rhs_.resize(w);
    basis_.resize(w);
    columns_ = artificial_begin_;
    cost_.resize(columns_);
  }
  load_costs(cost_);
  return primal(columns_);
}

LpStatus Tableau::add_cut(const std::vector<LinearTerm>& terms, const Rational& rhs) {
  for (auto& row : a_) row.emplace_back(0);
  reduced_.emplace_back(0);
  cost_.emplace_back(0);
  const int slack = columns_++;
  slack_of_.push_back({slack, 1, false});

  std::vector<Rational> line(columns_);
  Rational b = rhs;
  for (const auto& t : terms) {
    if (t.variable < 0 || t.variable >= structural_) throw Error(ErrorCode::OutOfRange, "cut references unknown variable", t.variable);
    line[t.variable] += t.coefficient;
    b -= t.coefficient * lower_[t.variable];
  }
  Rational scratch, f;
  for (size_t r = 0; r < a_.size(); ++r) {
    if (sgn(line[basis_[r]]) == 0) continue;
    f = line[basis_[r]];
    for (int j = 0; j < columns_; ++j)
      if (sgn(a_[r][j]) != 0) sub_mul(line[j], f, a_[r][j], scratch);
    sub_mul(b, f, rhs_[r], scratch);
  }
  line[slack] = 1;
  a_.push_back(std::move(line));
  rhs_.push_back(b);
  basis_.push_back(slack);
  return dual();
}

std::vector<Rational> Tableau::values() const {
  std::vector<Rational> x(lower_);
  for (size_t r = 0; r < a_.size(); ++r)
    if (basis_[r] < structural_) x[basis_[r]] += rhs_[r];
  return x;
}

std::vector<Rational> Tableau::duals() const {
  std::vector<Rational> y;
  y.reserve(slack_of_.size());
  for (const auto& s : slack_of_) {
    if (s.column < 0) {
      y.emplace_back(0);
      continue;
    }
    // Reduced cost of a slack is -sign * (row price) in the minimisation form.
    Rational price = s.sign > 0 ? Rational(-reduced_[s.column]) : reduced_[s.column];
    if (s.flipped) price = -price;
    if (maximize_) price = -price;
    y.push_back(price);
  }
  return y;
}

Rational Tableau::objective() const { return (maximize_ ? Rational(-value_) : value_) + offset_; }

}  // namespace pricekit::detail
