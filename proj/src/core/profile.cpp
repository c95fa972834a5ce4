#include "pricekit/profile.hpp"

#include <algorithm>
#include <string>

#include "pricekit/error.hpp"

namespace pricekit {

Rational ApprovalProfile::weight(int voter) const {
  if (!weights_) return Rational(1);
  return (*weights_)[voter];
}

ApprovalProfile build_profile(int n, int m, std::vector<CandidateSet> approvals,
                              std::optional<std::vector<Rational>> weights) {
  if (n <= 0 || m <= 0) throw Error(ErrorCode::OutOfRange, "profile needs n >= 1 and m >= 1");
  if (static_cast<int>(approvals.size()) != n)
    throw Error(ErrorCode::OutOfRange, "expected " + std::to_string(n) + " approval sets");
  if (weights && static_cast<int>(weights->size()) != n)
    throw Error(ErrorCode::OutOfRange, "expected " + std::to_string(n) + " weights");

  ApprovalProfile p;
  p.n_ = n;
  p.m_ = m;
  p.matrix_.assign(static_cast<size_t>(n) * m, 0);
  p.supporters_.assign(m, {});
  for (int i = 0; i < n; ++i) {
    auto& a = approvals[i];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.empty()) throw Error(ErrorCode::EmptyApprovalSet, "voter " + std::to_string(i) + " approves nobody", i);
    for (int c : a) {
      if (c < 0 || c >= m)
        throw Error(ErrorCode::OutOfRange, "voter " + std::to_string(i) + " approves unknown candidate " + std::to_string(c), i);
      p.matrix_[static_cast<size_t>(i) * m + c] = 1;
      p.supporters_[c].push_back(i);
    }
  }
  for (int c = 0; c < m; ++c)
    if (p.supporters_[c].empty())
      throw Error(ErrorCode::UnsupportedCandidate, "candidate " + std::to_string(c) + " has no supporter", c);
  if (weights) {
    for (int i = 0; i < n; ++i)
      if (sgn((*weights)[i]) <= 0)
        throw Error(ErrorCode::OutOfRange, "weight of voter " + std::to_string(i) + " is not positive", i);
  }
  p.approvals_ = std::move(approvals);
  p.weights_ = std::move(weights);
  return p;
}

Committee make_committee(int candidate_count, std::vector<int> members) {
  if (members.empty()) throw Error(ErrorCode::InvalidCommittee, "committee is empty");
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw Error(ErrorCode::InvalidCommittee, "duplicate committee member");
  Committee w;
  w.position_.assign(candidate_count, -1);
  for (size_t k = 0; k < members.size(); ++k) {
    int c = members[k];
    if (c < 0 || c >= candidate_count)
      throw Error(ErrorCode::InvalidCommittee, "committee member " + std::to_string(c) + " out of range", c);
    w.position_[c] = static_cast<int>(k);
  }
  for (int c = 0; c < candidate_count; ++c)
    if (w.position_[c] < 0) w.outsiders_.push_back(c);
  w.members_ = std::move(members);
  return w;
}

int covered_count(const ApprovalProfile& profile, const Committee& committee, int voter) {
  int count = 0;
  for (int c : profile.approvals(voter))
    if (committee.contains(c)) ++count;
  return count;
}

}  // namespace pricekit
