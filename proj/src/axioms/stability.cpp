#include <string>

#include "pricekit/axioms.hpp"
#include "pricekit/constraints.hpp"
#include "pricekit/error.hpp"

namespace pricekit {

CheckResult check_residual_stability(const ApprovalProfile& profile, const PriceSystem& ps) {
  for (int c : ps.committee().outsiders()) {
    Rational sum = 0;
    for (int i : profile.supporters(c)) sum += ps.residual(i);
    if (sum > 1) return {false, "candidate " + std::to_string(c) + " affordable from residuals " + to_fraction_string(sum)};
  }
  return {};
}

CheckResult check_one_stability(const ApprovalProfile& profile, const PriceSystem& ps) {
  if (auto r = check_residual_stability(profile, ps); !r) return r;
  StabilityConstraints sc(profile, ps.committee());
  ConstraintValues v = evaluate_constraints(sc, ps);
  for (int u = 0; u < sc.outsider_count(); ++u)
    for (int s = 0; s < sc.member_count(); ++s)
      if (v.pair[sc.pair_index(u, s)] > 1)
        return {false, "pair (" + std::to_string(sc.outsider(u)) + "," + std::to_string(sc.member(s)) +
                           ") sums to " + to_fraction_string(v.pair[sc.pair_index(u, s)])};
  return {};
}

CheckResult check_stability(const ApprovalProfile& profile, const PriceSystem& ps) {
  const Committee& w = ps.committee();
  for (int c : w.outsiders()) {
    Rational sum = 0;
    for (int i : profile.supporters(c)) {
      Rational best = ps.residual(i);
      for (int s = 0; s < w.size(); ++s)
        if (ps.payment_at(i, s) > best) best = ps.payment_at(i, s);
      sum += best;
    }
    if (sum > 1) return {false, "candidate " + std::to_string(c) + " reaches " + to_fraction_string(sum)};
  }
  return {};
}

CheckResult check_weak_stability_bruteforce(const ApprovalProfile& profile, const PriceSystem& ps) {
  const Committee& w = ps.committee();
  const int k = w.size();
  if (k > 12) throw Error(ErrorCode::InstanceTooLarge, "weak stability enumerates subsets of W; |W| > 12");
  for (int c : w.outsiders()) {
    const auto& vc = profile.supporters(c);
    if (vc.size() > 12) throw Error(ErrorCode::InstanceTooLarge, "|V[c]| > 12 for candidate " + std::to_string(c), c);
    // The objective separates over voters once S is fixed.
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      Rational total = 0;
      for (int i : vc) {
        int hits = 0, hit_slot = -1;
        for (int s = 0; s < k; ++s)
          if ((mask >> s & 1u) && profile.approves(i, w.members()[s])) {
            ++hits;
            hit_slot = s;
          }
        if (hits == 0) {
          total += ps.residual(i);  // Y beats X, which would contribute 0
        } else if (hits == 1) {
          total += ps.payment_at(i, hit_slot);
        }
      }
      if (total > 1) {
        std::string members;
        for (int s = 0; s < k; ++s)
          if (mask >> s & 1u) members += (members.empty() ? "" : ",") + std::to_string(w.members()[s]);
        return {false, "candidate " + std::to_string(c) + " with S={" + members + "} reaches " + to_fraction_string(total)};
      }
    }
  }
  return {};
}

}  // namespace pricekit
