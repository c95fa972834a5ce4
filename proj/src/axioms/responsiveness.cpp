#include <string>

#include "pricekit/axioms.hpp"
#include "pricekit/constraints.hpp"
#include "pricekit/error.hpp"

namespace pricekit {

CheckResult check_budget_averaging(const ApprovalProfile& profile, const PriceSystem& ps) {
  if (!is_one_stable(profile, ps)) throw Error(ErrorCode::NotOneStable, "budget-averaging needs a 1-stable system");
  const Committee& w = ps.committee();
  const int n = profile.voter_count();
  Rational average(w.size(), n);
  average.canonicalize();
  StabilityConstraints sc(profile, w);
  ConstraintValues v = evaluate_constraints(sc, ps);
  std::vector<unsigned char> pinned(n, 0);
  for (int u = 0; u < sc.outsider_count(); ++u) {
    if (v.residual[u] == 1)
      for (int i : profile.supporters(sc.outsider(u))) pinned[i] = 1;
    for (int s = 0; s < sc.member_count(); ++s)
      if (v.pair[sc.pair_index(u, s)] == 1)
        for (int i : sc.exclusive(u, s)) pinned[i] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (ps.budget(i) < average && !pinned[i])
      return {false, "voter " + std::to_string(i) + " has budget " + to_fraction_string(ps.budget(i)) +
                         " below |W|/n with slack constraints"};
  return {};
}

std::optional<CheckResult> check_single_winner_payment_responsiveness(const ApprovalProfile& profile,
                                                                       const PriceSystem& ps) {
  const Committee& w = ps.committee();
  if (w.size() != 1) return std::nullopt;
  const int c = w.members().front();
  auto winners = approval_winners(profile);
  std::vector<unsigned char> is_winner(profile.candidate_count(), 0);
  for (int x : winners) is_winner[x] = 1;
  if (is_winner[c]) return std::nullopt;
  std::vector<int> without, with;
  for (int i : profile.supporters(c)) {
    bool approves_winner = false;
    for (int x : profile.approvals(i)) approves_winner = approves_winner || is_winner[x];
    (approves_winner ? with : without).push_back(i);
  }
  for (int i : without)
    for (int j : with)
      if (!(ps.payment_at(i, 0) > ps.payment_at(j, 0)))
        return CheckResult{false, "p(" + std::to_string(i) + ") <= p(" + std::to_string(j) + ") on candidate " +
                                      std::to_string(c)};
  return CheckResult{};
}

MonotonicityReport check_monotonicity_pair(const ExplanationRule& rule, const ApprovalProfile& profile,
                                           const Committee& committee, int voter, int candidate) {
  if (!committee.contains(candidate) || !profile.approves(voter, candidate))
    throw Error(ErrorCode::PreconditionViolated, "candidate must be a committee member approved by the voter");
  if (profile.approval_score(candidate) < 2)
    throw Error(ErrorCode::PreconditionViolated, "candidate needs at least two supporters");
  if (profile.approvals(voter).size() < 2)
    throw Error(ErrorCode::PreconditionViolated, "deleting the approval would leave an empty ballot");
  auto ballots = profile.all_approvals();
  std::erase(ballots[voter], candidate);
  ApprovalProfile reduced = build_profile(profile.voter_count(), profile.candidate_count(), ballots, profile.weights());

  MonotonicityReport report;
  report.before = budgets(rule(profile, committee));
  report.after = budgets(rule(reduced, committee));
  const auto& b = report.before;
  const auto& a = report.after;
  for (int j = 0; j < profile.voter_count(); ++j) {
    if (j == voter) continue;
    bool broken = (b[j] > b[voter] && !(a[j] > a[voter])) || (b[j] == b[voter] && !(a[j] >= a[voter]));
    if (broken) report.violators.push_back(j);
  }
  report.ok = report.violators.empty();
  return report;
}

}  // namespace pricekit
