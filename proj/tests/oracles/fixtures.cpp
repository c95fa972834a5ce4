#include "oracles/fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "pricekit/error.hpp"

namespace pricekit::fixtures {

namespace {

int uniform_int(SeededRng& rng, int lo, int hi) { return lo + static_cast<int>(rng.below(hi - lo + 1)); }

std::vector<int> permutation(int size, SeededRng& rng) {
  std::vector<int> p(size);
  std::iota(p.begin(), p.end(), 0);
  for (int t = size - 1; t > 0; --t) std::swap(p[t], p[rng.below(t + 1)]);
  return p;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> out(hi - lo);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

// Ballots from per-candidate supporter lists.
std::vector<CandidateSet> ballots_from_supporters(int n, const std::vector<std::vector<int>>& supporters) {
  std::vector<CandidateSet> ballots(n);
  for (int c = 0; c < static_cast<int>(supporters.size()); ++c)
    for (int i : supporters[c]) ballots[i].push_back(c);
  return ballots;
}

}  // namespace

Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Instance make_instance(int n, int m, std::vector<CandidateSet> ballots, std::vector<int> committee) {
  for (auto& b : ballots) std::sort(b.begin(), b.end());
  Instance inst;
  inst.profile = build_profile(n, m, std::move(ballots));
  inst.committee = make_committee(m, std::move(committee));
  return inst;
}

Instance four_voter_laminar() {
  return make_instance(4, 8, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {0, 1, 5, 6, 7}, {0, 1, 5, 6, 7}}, {0, 1, 2, 3});
}

PriceSystem four_voter_unequal_payments(const Instance& inst) {
  PriceSystem ps(inst.committee, 4);
  ps.set_payment(0, 2, Rational(7, 10));
  ps.set_payment(0, 3, Rational(1, 10));
  ps.set_residual(0, Rational(9, 20));
  ps.set_payment(1, 2, Rational(3, 10));
  ps.set_payment(1, 3, Rational(9, 10));
  ps.set_payment(1, 0, Rational(1, 20));
  ps.set_payment(2, 0, Rational(19, 20));
  ps.set_residual(2, Rational(3, 10));
  ps.set_payment(3, 1, 1);
  ps.set_residual(3, Rational(1, 4));
  return ps;
}

PriceSystem four_voter_block_payments(const Instance& inst) {
  PriceSystem ps(inst.committee, 4);
  const Rational half(1, 2);
  for (int i : {0, 1})
    for (int c : {2, 3}) ps.set_payment(i, c, half);
  for (int i : {2, 3})
    for (int c : {0, 1}) ps.set_payment(i, c, half);
  return ps;
}

Instance brick_wall() {
  return make_instance(5, 6, {{0, 1, 2, 3, 4, 5}, {1, 3, 5}, {1, 3, 5}, {0, 2, 4}, {0, 2, 4}}, {0, 1, 2, 3});
}

Instance single_winner_minority(int q) {
  std::vector<std::vector<int>> sup(2);
  sup[0] = range(1, 2 * q);
  sup[1] = range(0, q);
  return make_instance(2 * q, 2, ballots_from_supporters(2 * q, sup), {1});
}

Instance three_voter_chain() { return make_instance(3, 2, {{0}, {0, 1}, {1}}, {1}); }

Instance monotonicity_counterexample() {
  std::vector<std::vector<int>> sup{{0, 1, 2}, {3, 4}, {0, 4}, {1, 4}, {2, 4}};
  for (int l = 0; l < 5; ++l) sup.push_back({l});
  return make_instance(5, 10, ballots_from_supporters(5, sup), {0, 1});
}

Instance no_weakly_stable_system() {
  std::vector<std::vector<int>> sup{{1, 3, 4, 6, 7}, {0, 1, 4, 5},    {0, 2, 4, 6},
                                    {1, 5, 6, 7},    {0, 2, 3, 4, 5, 6}, {0, 4, 7},
                                    {0, 1, 2, 3, 6}, {2, 3, 6, 7},    {2, 3, 5, 7}};
  return make_instance(8, 9, ballots_from_supporters(8, sup), {1, 4, 7});
}

Instance two_identical_voters() { return make_instance(2, 1, {{0}, {0}}, {0}); }

Instance lopsided_pair(int delta) {
  const int t = delta + 1;
  std::vector<std::vector<int>> sup;
  for (int j = 0; j < t; ++j) sup.push_back({0, 1});
  for (int j = 0; j < t; ++j) sup.push_back({0});
  for (int j = 0; j < t; ++j) sup.push_back({1});
  return make_instance(2, 3 * t, ballots_from_supporters(2, sup), range(0, 2 * t));
}

Instance eleven_voter_laminar() {
  std::vector<std::vector<int>> sup{range(0, 11), {0}, {0}};
  for (int j = 0; j < 11; ++j) sup.push_back(range(1, 11));
  std::vector<int> w{0, 1};
  for (int c = 3; c <= 12; ++c) w.push_back(c);
  return make_instance(11, 14, ballots_from_supporters(11, sup), w);
}

ApprovalProfile random_profile(SeededRng& rng, int n_min, int n_max, int m_min, int m_max) {
  for (;;) {
    const int n = uniform_int(rng, n_min, n_max), m = uniform_int(rng, m_min, m_max);
    try {
      if (rng.bernoulli(0.5)) return gen_euclidean_vcr(n, m, rng).profile;
      const double p = rng.uniform(0.1, 0.6), phi = rng.uniform01();
      return gen_resampling(n, m, p, phi, rng);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResampleLimitExceeded) throw;
    }
  }
}

Committee random_subset(const ApprovalProfile& profile, SeededRng& rng) {
  const int m = profile.candidate_count();
  return random_committee(profile, uniform_int(rng, 1, m), rng);
}

Instance random_instance(SeededRng& rng, int n_max, int m_max) {
  Instance inst;
  inst.profile = random_profile(rng, 2, n_max, 2, m_max);
  inst.committee = random_subset(inst.profile, rng);
  return inst;
}

Instance shuffled(const Instance& inst, SeededRng& rng) {
  const int n = inst.profile.voter_count(), m = inst.profile.candidate_count();
  auto sigma = permutation(n, rng), pi = permutation(m, rng);
  std::vector<CandidateSet> ballots(n);
  for (int i = 0; i < n; ++i)
    for (int c : inst.profile.approvals(i)) ballots[sigma[i]].push_back(pi[c]);
  std::vector<int> w;
  for (int c : inst.committee.members()) w.push_back(pi[c]);
  return make_instance(n, m, std::move(ballots), std::move(w));
}

namespace {

struct LaminarBuilder {
  SeededRng& rng;
  bool proportional;
  std::vector<CandidateSet> ballots;
  std::vector<int> members;
  int next = 0;

  int add_candidate(int first, int count) {
    for (int i = first; i < first + count; ++i) ballots[i].push_back(next);
    return next++;
  }

  // Voters [first, first + v) with s seats in proportional mode.
  void node(int first, int v, int s, int depth) {
    if (rng.bernoulli(0.4)) {
      const int u = uniform_int(rng, 1, 2);
      const int take = proportional ? uniform_int(rng, 0, std::min(u, s - 1)) : 0;
      for (int t = 0; t < u; ++t) {
        int c = add_candidate(first, v);
        if (t < take) members.push_back(c);
      }
      s -= take;
    }
    const int g = proportional ? std::gcd(v, s) : v;
    if (depth > 0 && v >= 2 && g >= 2 && rng.bernoulli(0.7)) {
      const int d1 = uniform_int(rng, 1, g - 1);
      const int v1 = v / g * d1, s1 = proportional ? s / g * d1 : 0;
      node(first, v1, s1, depth - 1);
      node(first + v1, v - v1, proportional ? s - s1 : 0, depth - 1);
      return;
    }
    const int own = proportional ? std::max(s, 1) + uniform_int(rng, 0, 2) : uniform_int(rng, 1, 3);
    for (int t = 0; t < own; ++t) {
      int c = add_candidate(first, v);
      if (proportional && t < s) members.push_back(c);
    }
  }
};

}  // namespace

LaminarCase random_laminar(SeededRng& rng, int max_voters, bool proportional) {
  LaminarBuilder b{rng, proportional, {}, {}, 0};
  int v, s = 0;
  if (proportional) {
    int g, a, seats;
    do {
      g = uniform_int(rng, 1, 4);
      a = uniform_int(rng, 1, 3);
      seats = uniform_int(rng, 1, 3);
    } while (g * a > max_voters);
    v = g * a;
    s = g * seats;
  } else {
    v = uniform_int(rng, 2, max_voters);
  }
  b.ballots.resize(v);
  b.node(0, v, s, 3);
  const int m = b.next;
  Instance raw;
  raw.profile = build_profile(v, m, b.ballots);
  raw.committee = proportional ? make_committee(m, b.members) : random_subset(raw.profile, rng);
  return {shuffled(raw, rng), proportional};
}

Instance random_perfect_coverage(SeededRng& rng, int n_max, int m_max) {
  const int n = uniform_int(rng, 2, n_max);
  const int k = uniform_int(rng, 1, std::min(n, m_max - 1));
  // Every member gets at least one voter.
  std::vector<int> group(n);
  for (int i = 0; i < n; ++i) group[i] = i < k ? i : static_cast<int>(rng.below(k));
  std::vector<std::vector<int>> sup(k);
  for (int i = 0; i < n; ++i) sup[group[i]].push_back(i);
  size_t least = n;
  for (const auto& s : sup) least = std::min(least, s.size());
  const int outsiders = uniform_int(rng, 1, m_max - k);
  for (int o = 0; o < outsiders; ++o) {
    auto order = permutation(n, rng);
    order.resize(uniform_int(rng, 1, static_cast<int>(least)));
    std::sort(order.begin(), order.end());
    sup.push_back(order);
  }
  Instance raw = make_instance(n, static_cast<int>(sup.size()), ballots_from_supporters(n, sup), range(0, k));
  return shuffled(raw, rng);
}

Instance random_perfect_symmetry(SeededRng& rng) {
  std::vector<std::vector<int>> sup;
  std::vector<int> w;
  int n;
  if (rng.bernoulli(0.5)) {
    // Universal voters plus t equal groups, each approving its own r candidates.
    int u, t, size, r;
    do {
      u = uniform_int(rng, 0, 2);
      t = uniform_int(rng, 1, 3);
      size = uniform_int(rng, 1, 3);
      r = uniform_int(rng, 1, 4);
    } while (u + t * size > 7 || t * r > 8);
    n = u + t * size;
    const int take = uniform_int(rng, 1, r);
    for (int g = 0; g < t; ++g)
      for (int j = 0; j < r; ++j) {
        std::vector<int> s = range(0, u);
        for (int i = 0; i < size; ++i) s.push_back(u + g * size + i);
        if (j < take) w.push_back(static_cast<int>(sup.size()));
        sup.push_back(s);
      }
  } else {
    // Rotation: type t is approved by the window of `width` voters starting at t.
    int u, cyc, width, r;
    do {
      u = uniform_int(rng, 0, 2);
      cyc = uniform_int(rng, 3, 7);
      width = uniform_int(rng, 1, cyc - 1);
      r = uniform_int(rng, 1, 2);
    } while (u + cyc > 7 || cyc * r > 8);
    n = u + cyc;
    const int take = uniform_int(rng, 1, r);
    for (int t = 0; t < cyc; ++t)
      for (int j = 0; j < r; ++j) {
        std::vector<int> s = range(0, u);
        for (int d = 0; d < width; ++d) s.push_back(u + (t + d) % cyc);
        std::sort(s.begin(), s.end());
        if (j < take) w.push_back(static_cast<int>(sup.size()));
        sup.push_back(s);
      }
  }
  Instance raw = make_instance(n, static_cast<int>(sup.size()), ballots_from_supporters(n, sup), w);
  return shuffled(raw, rng);
}

Instance random_single_winner_non_winner(SeededRng& rng, int n_max, int m_max) {
  for (;;) {
    ApprovalProfile a = random_profile(rng, 2, n_max, 2, m_max);
    int best = 0;
    for (int c = 0; c < a.candidate_count(); ++c) best = std::max(best, a.approval_score(c));
    std::vector<int> losers;
    for (int c = 0; c < a.candidate_count(); ++c)
      if (a.approval_score(c) < best) losers.push_back(c);
    if (losers.empty()) continue;
    Instance inst;
    inst.committee = make_committee(a.candidate_count(), {losers[rng.below(losers.size())]});
    inst.profile = std::move(a);
    return inst;
  }
}

bool weakly_stable_exhaustive(const ApprovalProfile& profile, const PriceSystem& ps) {
  const Committee& w = ps.committee();
  const int k = w.size();
  for (int c : w.outsiders()) {
    const auto& vc = profile.supporters(c);
    const int t = static_cast<int>(vc.size());
    long roles = 1;
    for (int j = 0; j < t; ++j) roles *= 3;
    for (long code = 0; code < roles; ++code) {
      // role 0: neither, 1: X, 2: Y
      std::vector<int> role(t);
      long rest = code;
      for (int j = 0; j < t; ++j, rest /= 3) role[j] = static_cast<int>(rest % 3);
      for (unsigned s = 0; s < (1u << k); ++s) {
        bool allowed = true;
        Rational total = 0;
        for (int j = 0; j < t && allowed; ++j) {
          const int i = vc[j];
          int hits = 0;
          Rational best = 0;
          for (int x = 0; x < k; ++x) {
            if (!(s >> x & 1u)) continue;
            const int member = w.members()[x];
            if (profile.approves(i, member)) ++hits;
            best = std::max(best, ps.payment(i, member));
          }
          if (role[j] == 1) {
            allowed = hits <= 1;
            total += best;
          } else if (role[j] == 2) {
            allowed = hits == 0;
            total += ps.residual(i);
          }
        }
        if (allowed && total > 1) return false;
      }
    }
  }
  return true;
}

Rational min_alpha_ejr_plus_exhaustive(const ApprovalProfile& profile, const Committee& committee) {
  const int n = profile.voter_count(), k = committee.size();
  Rational best = 0;
  for (int c : committee.outsiders()) {
    const auto& vc = profile.supporters(c);
    for (unsigned g = 1; g < (1u << vc.size()); ++g) {
      int size = 0, most = 0;
      for (size_t j = 0; j < vc.size(); ++j)
        if (g >> j & 1u) {
          ++size;
          most = std::max(most, covered_count(profile, committee, vc[j]));
        }
      // The smallest ℓ exceeding every member's representation gives the largest threshold.
      Rational value(static_cast<long>(size) * k, static_cast<long>(most + 1) * n);
      value.canonicalize();
      best = std::max(best, value);
    }
  }
  return best;
}

bool alpha_pjr_plus_literal(const ApprovalProfile& profile, const Committee& committee, const Rational& alpha) {
  const int n = profile.voter_count(), m = profile.candidate_count(), k = committee.size();
  for (int l = 1; l <= k; ++l)
    for (unsigned g = 1; g < (1u << n); ++g) {
      std::vector<int> group;
      for (int i = 0; i < n; ++i)
        if (g >> i & 1u) group.push_back(i);
      if (Rational(static_cast<long>(group.size())) < alpha * l * n / k) continue;
      int union_in_w = 0;
      bool common_in_w = true;
      for (int c = 0; c < m; ++c) {
        bool any = false, all = true;
        for (int i : group) {
          any = any || profile.approves(i, c);
          all = all && profile.approves(i, c);
        }
        if (any && committee.contains(c)) ++union_in_w;
        if (all && !committee.contains(c)) common_in_w = false;
      }
      if (union_in_w < l && !common_in_w) return false;
    }
  return true;
}

Committee equal_shares_reference(const ApprovalProfile& profile, int k) {
  const int n = profile.voter_count(), m = profile.candidate_count();
  Rational total = 0;
  for (int i = 0; i < n; ++i) total += profile.weight(i);
  std::vector<Rational> budget(n);
  for (int i = 0; i < n; ++i) budget[i] = k * profile.weight(i) / total;
  std::vector<char> taken(m, 0);
  std::vector<int> w;
  while (static_cast<int>(w.size()) < k) {
    int pick = -1;
    Rational pick_rho;
    for (int c = 0; c < m; ++c) {
      if (taken[c]) continue;
      std::vector<Rational> b;
      for (int i : profile.supporters(c)) b.push_back(budget[i]);
      std::sort(b.begin(), b.end());
      const int t = static_cast<int>(b.size());
      // The j poorest pay everything; the rest pay ρ. Keep the smallest consistent ρ.
      std::optional<Rational> rho;
      Rational poorest = 0;
      for (int j = 0; j < t; ++j) {
        Rational cand = (1 - poorest) / (t - j);
        bool consistent = (j == 0 || b[j - 1] <= cand) && b[j] >= cand;
        if (consistent && (!rho || cand < *rho)) rho = cand;
        poorest += b[j];
      }
      if (rho && (pick < 0 || *rho < pick_rho)) {
        pick = c;
        pick_rho = *rho;
      }
    }
    if (pick < 0) break;
    taken[pick] = 1;
    w.push_back(pick);
    for (int i : profile.supporters(pick)) budget[i] -= std::min(budget[i], pick_rho);
  }
  std::vector<int> rest;
  for (int c = 0; c < m; ++c)
    if (!taken[c]) rest.push_back(c);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](int x, int y) { return profile.approval_score(x) > profile.approval_score(y); });
  for (int c : rest) {
    if (static_cast<int>(w.size()) == k) break;
    w.push_back(c);
  }
  return make_committee(m, w);
}

Rational budget_spread(const PriceSystem& ps) {
  auto b = budgets(ps);
  auto [lo, hi] = std::minmax_element(b.begin(), b.end());
  return Rational(*hi - *lo);
}

}  // namespace pricekit::fixtures
