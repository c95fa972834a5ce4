#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "pricekit/axioms.hpp"
#include "pricekit/error.hpp"

namespace pricekit {

namespace {

struct Sub {
  std::vector<int> voters;
  std::vector<int> cands;  // sorted
};

bool in_sorted(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

CandidateSet restricted(const ApprovalProfile& a, int voter, const std::vector<int>& cands) {
  CandidateSet out;
  for (int c : a.approvals(voter))
    if (in_sorted(cands, c)) out.push_back(c);
  return out;
}

bool unanimous(const ApprovalProfile& a, const Sub& s) {
  if (s.voters.empty()) return true;
  CandidateSet first = restricted(a, s.voters.front(), s.cands);
  for (int i : s.voters)
    if (restricted(a, i, s.cands) != first) return false;
  return true;
}

std::vector<int> unanimous_candidates(const ApprovalProfile& a, const Sub& s) {
  std::vector<int> out;
  if (s.voters.empty()) return out;
  for (int c : s.cands) {
    bool all = true;
    for (int i : s.voters) all = all && a.approves(i, c);
    if (all) out.push_back(c);
  }
  return out;
}

Sub without(const Sub& s, const std::vector<int>& removed) {
  Sub out{s.voters, {}};
  for (int c : s.cands)
    if (!in_sorted(removed, c)) out.cands.push_back(c);
  return out;
}

// Connected components of the voter–candidate incidence graph restricted to s.
std::vector<Sub> components(const ApprovalProfile& a, const Sub& s) {
  const int nv = static_cast<int>(s.voters.size());
  const int nc = static_cast<int>(s.cands.size());
  std::vector<int> parent(nv + nc);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int vi = 0; vi < nv; ++vi)
    for (int ci = 0; ci < nc; ++ci)
      if (a.approves(s.voters[vi], s.cands[ci])) parent[find(vi)] = find(nv + ci);
  std::vector<int> root_index(nv + nc, -1);
  std::vector<Sub> out;
  auto slot = [&](int node) {
    int r = find(node);
    if (root_index[r] < 0) {
      root_index[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    return root_index[r];
  };
  for (int vi = 0; vi < nv; ++vi) out[slot(vi)].voters.push_back(s.voters[vi]);
  for (int ci = 0; ci < nc; ++ci) out[slot(nv + ci)].cands.push_back(s.cands[ci]);
  return out;
}

Sub merge(const std::vector<Sub>& parts, unsigned mask) {
  Sub out;
  for (size_t t = 0; t < parts.size(); ++t)
    if (mask >> t & 1u) {
      out.voters.insert(out.voters.end(), parts[t].voters.begin(), parts[t].voters.end());
      out.cands.insert(out.cands.end(), parts[t].cands.begin(), parts[t].cands.end());
    }
  std::sort(out.voters.begin(), out.voters.end());
  std::sort(out.cands.begin(), out.cands.end());
  return out;
}

void component_guard(size_t count) {
  if (count > 16) throw Error(ErrorCode::InstanceTooLarge, "too many subparties for bipartition search");
}

std::optional<LaminarNode> decompose(const ApprovalProfile& a, const Sub& s) {
  LaminarNode node;
  node.voters = s.voters;
  node.candidates = s.cands;
  if (unanimous(a, s)) return node;
  auto strip = unanimous_candidates(a, s);
  if (!strip.empty()) {
    auto child = decompose(a, without(s, strip));
    if (!child) return std::nullopt;
    node.kind = LaminarNode::Kind::Strip;
    node.stripped = strip;
    node.children.push_back(std::move(*child));
    return node;
  }
  auto parts = components(a, s);
  if (parts.size() < 2) return std::nullopt;
  auto first = decompose(a, parts.front());
  if (!first) return std::nullopt;
  Sub rest = merge(parts, ((1u << parts.size()) - 1) & ~1u);
  auto second = decompose(a, rest);
  if (!second) return std::nullopt;
  node.kind = LaminarNode::Kind::Split;
  node.children.push_back(std::move(*first));
  node.children.push_back(std::move(*second));
  return node;
}

Sub whole(const ApprovalProfile& a) {
  Sub s;
  s.voters.resize(a.voter_count());
  std::iota(s.voters.begin(), s.voters.end(), 0);
  s.cands.resize(a.candidate_count());
  std::iota(s.cands.begin(), s.cands.end(), 0);
  return s;
}

int committee_part(const Committee& w, const Sub& s) {
  int k = 0;
  for (int c : s.cands)
    if (w.contains(c)) ++k;
  return k;
}

bool proportional(const ApprovalProfile& a, const Committee& w, const Sub& s) {
  bool all_unanimous = true;
  for (int c : s.cands)
    if (w.contains(c))
      for (int i : s.voters) all_unanimous = all_unanimous && a.approves(i, c);
  if (all_unanimous) return true;
  auto strip = unanimous_candidates(a, s);
  if (!strip.empty()) return proportional(a, w, without(s, strip));
  auto parts = components(a, s);
  if (parts.size() < 2) return false;
  component_guard(parts.size());
  const unsigned full = (1u << parts.size()) - 1;
  // Component 0 stays on side one so each unordered bipartition is visited once.
  for (unsigned mask = 1; mask < full; mask += 2) {
    Sub s1 = merge(parts, mask), s2 = merge(parts, full & ~mask);
    long lhs = static_cast<long>(s1.voters.size()) * committee_part(w, s2);
    long rhs = static_cast<long>(s2.voters.size()) * committee_part(w, s1);
    if (lhs == rhs && proportional(a, w, s1) && proportional(a, w, s2)) return true;
  }
  return false;
}

// Largest Δ ∈ ℕ with |W∩C1| + Δ < |W∩C2|·|V1|/|V2| and |(∩_{V1} A_i) ∖ W| >= Δ.
int delta_star(const ApprovalProfile& a, const Committee& w, const Sub& s1, const Sub& s2) {
  if (s1.voters.empty() || s2.voters.empty()) return 0;
  Rational gap(committee_part(w, s2) * static_cast<long>(s1.voters.size()), static_cast<long>(s2.voters.size()));
  gap.canonicalize();
  gap -= committee_part(w, s1);
  if (sgn(gap) <= 0) return 0;
  mpz_class ceil_gap;
  mpz_cdiv_q(ceil_gap.get_mpz_t(), gap.get_num_mpz_t(), gap.get_den_mpz_t());
  long bound = ceil_gap.get_si() - 1;
  long common_unselected = 0;
  for (int c : s1.cands) {
    if (w.contains(c)) continue;
    bool all = true;
    for (int i : s1.voters) all = all && a.approves(i, c);
    if (all) ++common_unselected;
  }
  return static_cast<int>(std::max(0L, std::min(bound, common_unselected)));
}

int unproportionality(const ApprovalProfile& a, const Committee& w, const Sub& s) {
  if (unanimous(a, s)) return 0;
  auto strip = unanimous_candidates(a, s);
  if (!strip.empty()) return unproportionality(a, w, without(s, strip));
  auto parts = components(a, s);
  if (parts.size() < 2) throw Error(ErrorCode::NotLaminar, "sub-profile is neither unanimous nor splittable");
  component_guard(parts.size());
  const unsigned full = (1u << parts.size()) - 1;
  int best = 0;
  for (unsigned mask = 1; mask < full; mask += 2) {
    Sub s1 = merge(parts, mask), s2 = merge(parts, full & ~mask);
    best = std::max({best, unproportionality(a, w, s1), unproportionality(a, w, s2), delta_star(a, w, s1, s2),
                     delta_star(a, w, s2, s1)});
  }
  return best;
}

void require_laminar(const ApprovalProfile& a) {
  if (!is_laminar(a)) throw Error(ErrorCode::NotLaminar, "profile is not laminar");
}

}  // namespace

std::optional<LaminarNode> is_laminar(const ApprovalProfile& profile) { return decompose(profile, whole(profile)); }

CheckResult check_laminar_coherence(const ApprovalProfile& profile, const PriceSystem& ps) {
  require_laminar(profile);
  const Committee& w = ps.committee();
  for (int s = 0; s < w.size(); ++s) {
    int c = w.members()[s];
    Rational share(1, profile.approval_score(c));
    for (int i : profile.supporters(c))
      if (ps.payment_at(i, s) != share)
        return {false, "p(" + std::to_string(i) + "," + std::to_string(c) + ") = " +
                           to_fraction_string(ps.payment_at(i, s)) + " instead of " + to_fraction_string(share)};
  }
  for (int i = 0; i < profile.voter_count(); ++i)
    for (int j = i + 1; j < profile.voter_count(); ++j)
      if (profile.approvals(i) == profile.approvals(j) && ps.residual(i) != ps.residual(j))
        return {false, "voters " + std::to_string(i) + " and " + std::to_string(j) + " hold different residuals"};
  return {};
}

bool is_laminar_proportional(const ApprovalProfile& profile, const Committee& committee) {
  require_laminar(profile);
  return proportional(profile, committee, whole(profile));
}

int max_laminar_unproportionality(const ApprovalProfile& profile, const Committee& committee) {
  require_laminar(profile);
  return unproportionality(profile, committee, whole(profile));
}

}  // namespace pricekit
