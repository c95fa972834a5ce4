#pragma once

#include <optional>
#include <vector>

#include "pricekit/rational.hpp"

namespace pricekit {

using CandidateSet = std::vector<int>;  // sorted, duplicate free

class ApprovalProfile {
 public:
  ApprovalProfile() = default;

  int voter_count() const { return n_; }
  int candidate_count() const { return m_; }

  const CandidateSet& approvals(int voter) const { return approvals_[voter]; }
  const std::vector<CandidateSet>& all_approvals() const { return approvals_; }
  // V[c], sorted.
  const std::vector<int>& supporters(int candidate) const { return supporters_[candidate]; }
  bool approves(int voter, int candidate) const { return matrix_[static_cast<size_t>(voter) * m_ + candidate] != 0; }
  int approval_score(int candidate) const { return static_cast<int>(supporters_[candidate].size()); }

  bool has_weights() const { return weights_.has_value(); }
  // 1 for every voter when unweighted.
  Rational weight(int voter) const;
  const std::optional<std::vector<Rational>>& weights() const { return weights_; }

  friend ApprovalProfile build_profile(int, int, std::vector<CandidateSet>, std::optional<std::vector<Rational>>);

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<CandidateSet> approvals_;
  std::vector<std::vector<int>> supporters_;
  std::vector<unsigned char> matrix_;
  std::optional<std::vector<Rational>> weights_;
};

// Validates nonempty ballots, candidate range and support; throws pricekit::Error.
ApprovalProfile build_profile(int n, int m, std::vector<CandidateSet> approvals,
                              std::optional<std::vector<Rational>> weights = std::nullopt);

class Committee {
 public:
  Committee() = default;

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int candidate) const { return position_[candidate] >= 0; }
  // Index of candidate inside members(), or -1.
  int position(int candidate) const { return position_[candidate]; }
  // Candidates of the profile not in the committee, ascending.
  const std::vector<int>& outsiders() const { return outsiders_; }
  int candidate_count() const { return static_cast<int>(position_.size()); }

  friend Committee make_committee(int, std::vector<int>);

 private:
  std::vector<int> members_;
  std::vector<int> outsiders_;
  std::vector<int> position_;
};

// Throws Error(InvalidCommittee) on empty, duplicate or out-of-range members.
Committee make_committee(int candidate_count, std::vector<int> members);
inline Committee make_committee(const ApprovalProfile& profile, std::vector<int> members) {
  return make_committee(profile.candidate_count(), std::move(members));
}

// |A_i ∩ W|
int covered_count(const ApprovalProfile& profile, const Committee& committee, int voter);

}  // namespace pricekit
