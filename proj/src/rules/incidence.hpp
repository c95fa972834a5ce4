#pragma once

#include <vector>

#include "pricekit/constraints.hpp"

namespace pricekit::detail {

// Voter/committee incidence in slot and outsider-row coordinates.
struct Incidence {
  Incidence(const ApprovalProfile& profile, const Committee& committee);

  const ApprovalProfile* profile;
  const Committee* committee;
  StabilityConstraints sc;
  int n = 0;
  int k = 0;
  int rows = 0;
  std::vector<std::vector<int>> member_slots;  // A_i ∩ W as slots
  std::vector<std::vector<int>> outsider_rows; // A_i ∖ W as rows
  std::vector<std::vector<int>> slot_voters;   // V[member s]
  std::vector<std::vector<int>> row_voters;    // V[outsider u]

  bool approves_slot(int voter, int slot) const { return profile->approves(voter, committee->members()[slot]); }
};

ConstraintValues zero_constraints(const Incidence& inc);

// Residual phase on ps; f must hold the current constraint values and is kept in sync.
void distribute_residual_in_place(const Incidence& inc, PriceSystem& ps, ConstraintValues& f, long* events = nullptr);

}  // namespace pricekit::detail
