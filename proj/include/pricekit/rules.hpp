#pragma once

#include <vector>

#include "pricekit/price_system.hpp"

namespace pricekit {

// Per voter, the committee candidates it currently spends on (candidate ids, ascending).
// Empty for voters that accumulate residual or are not active.
using SpendingSets = std::vector<CandidateSet>;

// p(i,c) = 1/|V[c]|, residuals from distribute_residual.
PriceSystem equal_split(const ApprovalProfile& profile, const Committee& committee);

// Keeps payments and existing residuals; raises residuals of minimum-budget unblocked voters.
PriceSystem distribute_residual(const ApprovalProfile& profile, PriceSystem ps);

// `remaining_cost` is indexed by committee slot; members with cost 0 are no longer remaining.
SpendingSets money_flow(const ApprovalProfile& profile, const Committee& committee,
                        const std::vector<bool>& active, const std::vector<Rational>& remaining_cost);

// Voters (ascending) that would break a tight 1-stability constraint in their growing role.
std::vector<int> check_blocking(const ApprovalProfile& profile, const std::vector<bool>& active,
                                const std::vector<int>& critical, const PriceSystem& ps, const SpendingSets& sets);

struct PhragmenStats {
  long events = 0;
  long planning_rounds = 0;
  long pinned_events = 0;    // events with at least one pinned pair constraint
  long unresolved_ties = 0;  // money-flow tie refinement that did not settle
  long residual_events = 0;
};

PriceSystem continuous_phragmen(const ApprovalProfile& profile, const Committee& committee,
                                PhragmenStats* stats = nullptr);

// Fixed-step execution with step 1/steps_per_unit. Test oracle for continuous_phragmen.
PriceSystem micro_step_oracle(const ApprovalProfile& profile, const Committee& committee, const Rational& epsilon,
                              long max_steps = 50'000'000);

}  // namespace pricekit
