#include <algorithm>
#include <string>

#include "pricekit/axioms.hpp"
#include "pricekit/error.hpp"

namespace pricekit {

std::vector<int> approval_winners(const ApprovalProfile& profile) {
  int best = 0;
  for (int c = 0; c < profile.candidate_count(); ++c) best = std::max(best, profile.approval_score(c));
  std::vector<int> out;
  for (int c = 0; c < profile.candidate_count(); ++c)
    if (profile.approval_score(c) == best) out.push_back(c);
  return out;
}

Rational min_alpha_ejr_plus(const ApprovalProfile& profile, const Committee& committee) {
  const int n = profile.voter_count();
  const int k = committee.size();
  std::vector<int> covered(n);
  for (int i = 0; i < n; ++i) covered[i] = covered_count(profile, committee, i);
  Rational best = 0;
  // ℓ ranges over ℕ; beyond |W|+1 the group stops growing while ℓ does.
  for (int c : committee.outsiders())
    for (int l = 1; l <= k + 1; ++l) {
      long group = 0;
      for (int i : profile.supporters(c))
        if (covered[i] < l) ++group;
      if (group == 0) continue;
      Rational value(group * k, static_cast<long>(l) * n);
      value.canonicalize();
      if (value > best) best = value;
    }
  return best;
}

bool satisfies_alpha_pjr_plus_bruteforce(const ApprovalProfile& profile, const Committee& committee,
                                         const Rational& alpha) {
  const int n = profile.voter_count();
  const int m = profile.candidate_count();
  const int k = committee.size();
  if (n > 14) throw Error(ErrorCode::InstanceTooLarge, "PJR+ group enumeration needs n <= 14");
  std::vector<unsigned char> cover(m), common(m);
  for (unsigned group = 1; group < (1u << n); ++group) {
    std::fill(cover.begin(), cover.end(), 0);
    std::fill(common.begin(), common.end(), 1);
    int size = 0;
    for (int i = 0; i < n; ++i) {
      if (!(group >> i & 1u)) continue;
      ++size;
      for (int c = 0; c < m; ++c) {
        bool ap = profile.approves(i, c);
        if (ap) cover[c] = 1;
        else common[c] = 0;
      }
    }
    int covered = 0;
    bool common_inside = true;
    for (int c = 0; c < m; ++c) {
      if (cover[c] && committee.contains(c)) ++covered;
      if (common[c] && !committee.contains(c)) common_inside = false;
    }
    if (common_inside) continue;
    for (int l = covered + 1; l <= k; ++l) {
      // |V'| >= α·ℓ·n/|W|
      if (Rational(size * k) >= alpha * l * n) return false;
    }
  }
  return true;
}

MaximinSupportReport maximin_support_lower_bound(const ApprovalProfile& profile, const PriceSystem& ps) {
  MaximinSupportReport report;
  Rational max_budget = 0;
  for (int i = 0; i < ps.voter_count(); ++i) max_budget = std::max(max_budget, ps.budget(i));
  report.bound = 1 / max_budget;
  const Committee& w = ps.committee();
  if (profile.voter_count() <= 12 && w.size() <= 12) {
    std::optional<Rational> best;
    for (unsigned mask = 1; mask < (1u << w.size()); ++mask) {
      std::vector<unsigned char> seen(profile.voter_count(), 0);
      int support = 0, members = 0;
      for (int s = 0; s < w.size(); ++s) {
        if (!(mask >> s & 1u)) continue;
        ++members;
        for (int i : profile.supporters(w.members()[s]))
          if (!seen[i]) {
            seen[i] = 1;
            ++support;
          }
      }
      Rational value(support, members);
      value.canonicalize();
      if (!best || value < *best) best = value;
    }
    report.mms = best;
    report.verified = *best >= report.bound;
  }
  return report;
}

bool is_pareto_optimal_bruteforce(const ApprovalProfile& profile, const Committee& committee) {
  const int m = profile.candidate_count();
  const int k = committee.size();
  const int n = profile.voter_count();
  double alternatives = 1;
  for (int t = 0; t < k; ++t) alternatives = alternatives * (m - t) / (t + 1);
  if (alternatives > 1e6) throw Error(ErrorCode::InstanceTooLarge, "more than 10^6 equal-size committees");
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) base[i] = covered_count(profile, committee, i);
  std::vector<int> pick(k);
  for (int t = 0; t < k; ++t) pick[t] = t;
  while (true) {
    bool weakly = true, strictly = false;
    for (int i = 0; i < n && weakly; ++i) {
      int u = 0;
      for (int c : pick) u += profile.approves(i, c);
      if (u < base[i]) weakly = false;
      if (u > base[i]) strictly = true;
    }
    if (weakly && strictly) return false;
    int t = k - 1;
    while (t >= 0 && pick[t] == m - k + t) --t;
    if (t < 0) break;
    ++pick[t];
    for (int u = t + 1; u < k; ++u) pick[u] = pick[u - 1] + 1;
  }
  return true;
}

bool provides_perfect_coverage(const ApprovalProfile& profile, const Committee& committee) {
  for (int i = 0; i < profile.voter_count(); ++i)
    if (covered_count(profile, committee, i) != 1) return false;
  int weakest_member = profile.voter_count();
  for (int c : committee.members()) weakest_member = std::min(weakest_member, profile.approval_score(c));
  for (int c : committee.outsiders())
    if (profile.approval_score(c) > weakest_member) return false;
  return true;
}

}  // namespace pricekit
