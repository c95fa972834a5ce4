#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "pricekit/axioms.hpp"
#include "pricekit/error.hpp"

namespace pricekit {

namespace {

void guard(const ApprovalProfile& profile, const SearchLimits& limits) {
  if (profile.voter_count() > limits.max_voters || profile.candidate_count() > limits.max_candidates)
    throw Error(ErrorCode::InstanceTooLarge, "automorphism search beyond " + std::to_string(limits.max_voters) +
                                                 " voters / " + std::to_string(limits.max_candidates) + " candidates");
}

int overlap_size(const ApprovalProfile& a, int c1, int c2) {
  int k = 0;
  for (int i : a.supporters(c1))
    if (a.approves(i, c2)) ++k;
  return k;
}

// Backtracking over candidate permutations π whose image of the ballot multiset is the ballot multiset.
class CandidatePermutationSearch {
 public:
  CandidatePermutationSearch(const ApprovalProfile& a, const Committee* w) : a_(a), w_(w) {
    const int m = a.candidate_count();
    overlap_.assign(static_cast<size_t>(m) * m, 0);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) overlap_[x * m + y] = overlap_size(a, x, y);
    sorted_ballots_ = a.all_approvals();
    std::sort(sorted_ballots_.begin(), sorted_ballots_.end());
  }

  // Visits every valid π; the visitor returns false to stop. `fixed` pins π(0).
  template <class Visit>
  void run(Visit&& visit, int fixed_image = -1) {
    const int m = a_.candidate_count();
    pi_.assign(m, -1);
    used_.assign(m, false);
    stop_ = false;
    fixed_ = fixed_image;
    extend(0, visit);
  }

  bool consistent(int c, int image) const {
    const int m = a_.candidate_count();
    if (a_.approval_score(c) != a_.approval_score(image)) return false;
    if (w_ && w_->contains(c) != w_->contains(image)) return false;
    for (int d = 0; d < c; ++d)
      if (overlap_[c * m + d] != overlap_[image * m + pi_[d]]) return false;
    return true;
  }

  bool preserves_ballots() const {
    std::vector<CandidateSet> mapped;
    mapped.reserve(a_.voter_count());
    for (const auto& ballot : a_.all_approvals()) {
      CandidateSet img;
      for (int c : ballot) img.push_back(pi_[c]);
      std::sort(img.begin(), img.end());
      mapped.push_back(std::move(img));
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == sorted_ballots_;
  }

  const std::vector<int>& pi() const { return pi_; }

 private:
  template <class Visit>
  void extend(int c, Visit& visit) {
    if (stop_) return;
    const int m = a_.candidate_count();
    if (c == m) {
      if (preserves_ballots() && !visit(pi_)) stop_ = true;
      return;
    }
    for (int image = 0; image < m && !stop_; ++image) {
      if (used_[image]) continue;
      if (c == 0 && fixed_ >= 0 && image != fixed_) continue;
      if (!consistent(c, image)) continue;
      pi_[c] = image;
      used_[image] = true;
      extend(c + 1, visit);
      used_[image] = false;
      pi_[c] = -1;
    }
  }

  const ApprovalProfile& a_;
  const Committee* w_;
  std::vector<int> overlap_;
  std::vector<CandidateSet> sorted_ballots_;
  std::vector<int> pi_;
  std::vector<bool> used_;
  bool stop_ = false;
  int fixed_ = -1;
};

CandidateSet image_of(const CandidateSet& s, const std::vector<int>& pi) {
  CandidateSet out;
  for (int c : s) out.push_back(pi[c]);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<CandidateSet, std::vector<int>> voter_classes(const ApprovalProfile& a) {
  std::map<CandidateSet, std::vector<int>> classes;
  for (int i = 0; i < a.voter_count(); ++i) classes[a.approvals(i)].push_back(i);
  return classes;
}

}  // namespace

std::vector<Automorphism> enumerate_automorphisms(const ApprovalProfile& profile, const Committee* committee,
                                                  const SearchLimits& limits) {
  guard(profile, limits);
  auto classes = voter_classes(profile);
  std::vector<Automorphism> out;
  CandidatePermutationSearch search(profile, committee);
  search.run([&](const std::vector<int>& pi) {
    // σ maps the class of S bijectively onto the class of π(S); enumerate the product of bijections.
    std::vector<std::pair<const std::vector<int>*, std::vector<int>>> blocks;
    for (const auto& [set, members] : classes) blocks.emplace_back(&members, classes.at(image_of(set, pi)));
    std::vector<int> sigma(profile.voter_count(), -1);
    std::function<void(size_t)> rec = [&](size_t b) {
      if (b == blocks.size()) {
        out.push_back({sigma, pi});
        return;
      }
      auto targets = blocks[b].second;
      std::sort(targets.begin(), targets.end());
      do {
        const auto& src = *blocks[b].first;
        for (size_t t = 0; t < src.size(); ++t) sigma[src[t]] = targets[t];
        rec(b + 1);
      } while (std::next_permutation(targets.begin(), targets.end()));
    };
    rec(0);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

CheckResult check_symmetry(const ApprovalProfile& profile, const PriceSystem& ps, const SearchLimits& limits) {
  guard(profile, limits);
  const Committee& w = ps.committee();
  auto classes = voter_classes(profile);
  CheckResult result;
  CandidatePermutationSearch search(profile, &w);
  // Every σ compatible with π maps each voter of class S to each voter of class π(S), so comparing
  // all cross pairs is equivalent to checking all automorphisms.
  search.run([&](const std::vector<int>& pi) {
    for (const auto& [set, members] : classes) {
      const auto& targets = classes.at(image_of(set, pi));
      for (int i : members)
        for (int j : targets) {
          if (ps.residual(i) != ps.residual(j)) {
            result = {false, "residuals of voters " + std::to_string(i) + " and " + std::to_string(j) + " differ"};
            return false;
          }
          for (int s = 0; s < w.size(); ++s) {
            int c = w.members()[s];
            if (ps.payment_at(i, s) != ps.payment(j, pi[c])) {
              result = {false, "p(" + std::to_string(i) + "," + std::to_string(c) + ") != p(" + std::to_string(j) +
                                   "," + std::to_string(pi[c]) + ")"};
              return false;
            }
          }
        }
    }
    return true;
  });
  return result;
}

CheckResult check_equal_treatment(const ApprovalProfile& profile, const PriceSystem& ps) {
  const Committee& w = ps.committee();
  for (const auto& [set, members] : voter_classes(profile)) {
    int i = members.front();
    for (size_t t = 1; t < members.size(); ++t) {
      int j = members[t];
      bool same = ps.residual(i) == ps.residual(j);
      for (int s = 0; same && s < w.size(); ++s) same = ps.payment_at(i, s) == ps.payment_at(j, s);
      if (!same) return {false, "voters " + std::to_string(i) + " and " + std::to_string(j)};
    }
  }
  return {};
}

bool is_perfect_symmetry_instance(const ApprovalProfile& profile, const Committee& committee,
                                  const SearchLimits& limits) {
  guard(profile, limits);
  const int m = profile.candidate_count();
  CandidatePermutationSearch search(profile, nullptr);
  for (int target = 1; target < m; ++target) {
    bool found = false;
    search.run([&](const std::vector<int>&) {
      found = true;
      return false;
    }, target);
    if (!found) return false;
  }
  std::map<std::vector<int>, int> per_type;
  for (int c = 0; c < m; ++c) per_type[profile.supporters(c)] += 0;
  for (int c : committee.members()) per_type[profile.supporters(c)] += 1;
  int expected = per_type.begin()->second;
  for (const auto& [type, count] : per_type)
    if (count != expected) return false;
  return true;
}

}  // namespace pricekit
