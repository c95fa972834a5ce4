#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "pricekit/error.hpp"
#include "pricekit/optimize.hpp"
#include "tableau.hpp"

namespace pricekit {
namespace {

struct Layout {
  std::vector<int> r;                          // per voter
  std::vector<std::vector<std::pair<int, int>>> p;  // per voter: (slot, variable)
};

// r_i, then p(i,c) slot by slot, funding equalities and residual stability.
Layout residual_stable_system(LinearProgram& lp, const ApprovalProfile& profile, const Committee& committee) {
  const int n = profile.voter_count();
  Layout lay;
  lay.p.resize(n);
  for (int i = 0; i < n; ++i) lay.r.push_back(lp.add_variable("r_" + std::to_string(i)));
  for (int s = 0; s < committee.size(); ++s) {
    const int c = committee.members()[s];
    std::vector<LinearTerm> funding;
    for (int i : profile.supporters(c)) {
      int v = lp.add_variable("p_" + std::to_string(i) + "_" + std::to_string(c));
      lay.p[i].emplace_back(s, v);
      funding.push_back({v, 1});
    }
    lp.add_constraint("fund_" + std::to_string(c), std::move(funding), Relation::Equal, 1);
  }
  for (int c : committee.outsiders()) {
    std::vector<LinearTerm> terms;
    for (int i : profile.supporters(c)) terms.push_back({lay.r[i], 1});
    lp.add_constraint("stable_" + std::to_string(c), std::move(terms), Relation::LessEqual, 1);
  }
  return lay;
}

void add_budget(std::vector<LinearTerm>& terms, const Layout& lay, int voter, int coef) {
  terms.push_back({lay.r[voter], coef});
  for (auto [s, v] : lay.p[voter]) terms.push_back({v, coef});
}

}  // namespace

LinearProgram pairwise_priceability_lp(const ApprovalProfile& profile, const Committee& committee) {
  LinearProgram lp;
  Layout lay = residual_stable_system(lp, profile, committee);
  const int n = profile.voter_count();
  std::vector<LinearTerm> objective;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int d = lp.add_variable("d_" + std::to_string(i) + "_" + std::to_string(j));
      objective.push_back({d, 1});
      for (int sign : {1, -1}) {
        std::vector<LinearTerm> terms{{d, 1}};
        add_budget(terms, lay, i, -sign);
        add_budget(terms, lay, j, sign);
        lp.add_constraint("gap_" + std::to_string(i) + "_" + std::to_string(j) + (sign > 0 ? "+" : "-"),
                          std::move(terms), Relation::GreaterEqual, 0);
      }
    }
  lp.set_objective(Direction::Minimize, std::move(objective));
  return lp;
}

// Solved through its dual: maximise Σ_{c∈W} y_c - Σ_{c∉W} u_c subject to y_c <= g_i for
// i ∈ V[c], g_i + Σ_{c∉W, i∈V[c]} u_c >= 0, and g in the base polytope of
// F(S) = |S|(n-|S|), whose support function is Σ_{i<j} |b_i - b_j|. Base-polytope
// inequalities Σ_{i∈S} g_i <= F(S) are added lazily (a sorted prefix is always the most
// violated set of its size). Payments and residuals are the shadow prices of the first
// two constraint families.
PriceabilityResult approximate_priceability_solve(const ApprovalProfile& profile, const Committee& committee) {
  const int n = profile.voter_count();
  const Rational floor(-n);  // strictly below any coordinate of the base polytope
  LinearProgram lp;
  std::vector<int> g(n), y(committee.size()), u(committee.outsiders().size());
  for (int i = 0; i < n; ++i) g[i] = lp.add_variable("g_" + std::to_string(i), floor);
  for (int s = 0; s < committee.size(); ++s) y[s] = lp.add_variable("y_" + std::to_string(committee.members()[s]), floor);
  std::vector<std::vector<int>> cover(n);
  for (size_t t = 0; t < u.size(); ++t) {
    const int c = committee.outsiders()[t];
    u[t] = lp.add_variable("u_" + std::to_string(c));
    for (int i : profile.supporters(c)) cover[i].push_back(u[t]);
  }

  std::vector<std::pair<int, int>> payment_rows;  // (voter, slot) per leading row
  for (int s = 0; s < committee.size(); ++s)
    for (int i : profile.supporters(committee.members()[s])) {
      lp.add_constraint("", {{y[s], 1}, {g[i], -1}}, Relation::LessEqual, 0);
      payment_rows.emplace_back(i, s);
    }
  const size_t residual_row = payment_rows.size();
  for (int i = 0; i < n; ++i) {
    std::vector<LinearTerm> terms{{g[i], -1}};
    for (int v : cover[i]) terms.push_back({v, -1});
    lp.add_constraint("", std::move(terms), Relation::LessEqual, 0);
  }
  std::vector<LinearTerm> total;
  for (int i = 0; i < n; ++i) total.push_back({g[i], 1});
  lp.add_constraint("", std::move(total), Relation::Equal, 0);
  std::vector<LinearTerm> objective;
  for (int v : y) objective.push_back({v, 1});
  for (int v : u) objective.push_back({v, -1});
  lp.set_objective(Direction::Maximize, std::move(objective));

  detail::Tableau tableau(lp);
  if (tableau.solve() != LpStatus::Optimal) throw Error(ErrorCode::Internal, "priceability dual not solved to optimality");

  PriceabilityResult out;
  std::vector<int> order(n);
  while (true) {
    std::vector<Rational> x = tableau.values();
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return x[g[i]] > x[g[j]]; });
    Rational prefix, worst;
    int size = 0;
    for (int k = 0; k + 1 < n; ++k) {
      prefix += x[g[order[k]]];
      Rational excess = prefix - (k + 1) * (n - k - 1);
      if (sgn(excess) > 0 && excess > worst) {
        worst = excess;
        size = k + 1;
      }
    }
    if (size == 0) break;
    std::vector<LinearTerm> cut;
    for (int k = 0; k < size; ++k) cut.push_back({g[order[k]], 1});
    ++out.cuts;
    if (tableau.add_cut(cut, size * (n - size)) != LpStatus::Optimal)
      throw Error(ErrorCode::Internal, "priceability dual lost feasibility");
  }

  const std::vector<Rational> price = tableau.duals();
  out.system = PriceSystem(committee, n);
  for (size_t row = 0; row < payment_rows.size(); ++row)
    out.system.payment_at(payment_rows[row].first, payment_rows[row].second) = price[row];
  for (int i = 0; i < n; ++i) out.system.set_residual(i, price[residual_row + i]);

  std::vector<Rational> b = budgets(out.system);
  std::sort(b.begin(), b.end(), std::greater<>());
  for (int k = 0; k < n; ++k) out.objective += (n - 1 - 2 * k) * b[k];
  if (out.objective != tableau.objective() || validate_price_system(profile, out.system))
    throw Error(ErrorCode::Internal, "priceability shadow prices do not form an optimal price system");
  out.pivots = tableau.pivots();
  return out;
}

LinearProgram weak_stability_nonexistence_lp() {
  LinearProgram lp;
  auto var = [&](int voter, int candidate) {
    return lp.add_variable("p_" + std::to_string(voter) + "_" + std::to_string(candidate));
  };
  const int p12 = var(1, 2), p22 = var(2, 2), p52 = var(5, 2), p62 = var(6, 2);
  const int p38 = var(3, 8), p48 = var(4, 8), p78 = var(7, 8), p88 = var(8, 8);
  auto sum = [](std::initializer_list<int> vs) {
    std::vector<LinearTerm> t;
    for (int v : vs) t.push_back({v, 1});
    return t;
  };
  lp.add_constraint("fund_c2", sum({p12, p22, p52, p62}), Relation::Equal, 1);
  lp.add_constraint("fund_c8", sum({p38, p48, p78, p88}), Relation::Equal, 1);
  lp.add_constraint("deviate_c1", sum({p22, p48, p52, p78, p88}), Relation::LessEqual, 1);
  lp.add_constraint("deviate_c3", sum({p12, p38, p52, p78}), Relation::LessEqual, 1);
  lp.add_constraint("deviate_c4", sum({p22, p62, p78, p88}), Relation::LessEqual, 1);
  lp.add_constraint("deviate_c6", sum({p12, p52, p88}), Relation::LessEqual, 1);
  lp.add_constraint("deviate_c7", sum({p12, p22, p38, p48, p78}), Relation::LessEqual, 1);
  lp.add_constraint("deviate_c9", sum({p38, p48, p62, p88}), Relation::LessEqual, 1);
  lp.set_objective(Direction::Minimize, {});
  return lp;
}

}  // namespace pricekit
