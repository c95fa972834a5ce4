#pragma once

#include <vector>

#include "pricekit/price_system.hpp"

namespace pricekit {

// Index structure for the 1-stability constraint family of (A, W):
// one residual row per outsider c, one pair row per (outsider c, member c').
class StabilityConstraints {
 public:
  StabilityConstraints(const ApprovalProfile& profile, const Committee& committee);

  const ApprovalProfile& profile() const { return *profile_; }
  const Committee& committee() const { return *committee_; }
  int outsider_count() const { return static_cast<int>(committee_->outsiders().size()); }
  int member_count() const { return committee_->size(); }
  int outsider(int u) const { return committee_->outsiders()[u]; }
  int member(int s) const { return committee_->members()[s]; }
  size_t pair_index(int u, int s) const { return static_cast<size_t>(u) * member_count() + s; }

  // V[c] ∩ V[c']
  const std::vector<int>& overlap(int u, int s) const { return overlap_[pair_index(u, s)]; }
  // V[c] ∖ V[c']
  std::vector<int> exclusive(int u, int s) const;

 private:
  const ApprovalProfile* profile_;
  const Committee* committee_;
  std::vector<std::vector<int>> overlap_;
};

struct ConstraintValues {
  std::vector<Rational> residual;  // Σ_{V[c]} r
  std::vector<Rational> pair;      // Σ_{V[c]∖V[c']} r + Σ_{V[c]∩V[c']} p(·,c'), indexed by pair_index
};

// OpenMP over outsiders when built with OpenMP; identical results to the serial version.
ConstraintValues evaluate_constraints(const StabilityConstraints& sc, const PriceSystem& ps);
ConstraintValues evaluate_constraints_serial(const StabilityConstraints& sc, const PriceSystem& ps);

}  // namespace pricekit
