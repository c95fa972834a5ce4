#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "pricekit/error.hpp"
#include "pricekit/gen.hpp"

namespace pricekit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

SeededRng SeededRng::substream(std::uint64_t index) const { return SeededRng(splitmix64(splitmix64(seed_) ^ index)); }

double SeededRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t SeededRng::below(std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % bound;
}

namespace {

bool nonempty(int m, const std::vector<CandidateSet>& ballots) {
  std::vector<char> supported(m, 0);
  for (const auto& b : ballots) {
    if (b.empty()) return false;
    for (int c : b) supported[c] = 1;
  }
  return std::all_of(supported.begin(), supported.end(), [](char s) { return s != 0; });
}

void check_sizes(int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::OutOfRange, "need at least one voter and one candidate");
}

}  // namespace

EuclideanInstance gen_euclidean_vcr(int n, int m, SeededRng& rng) {
  check_sizes(n, m);
  EuclideanInstance out;
  std::vector<CandidateSet> ballots(n);
  for (int attempt = 1; attempt <= kMaxResampleAttempts; ++attempt) {
    out.voters.resize(n);
    out.candidates.resize(m);
    for (auto& p : out.voters) p = {rng.uniform01(), rng.uniform01()};
    for (auto& p : out.candidates) p = {rng.uniform01(), rng.uniform01()};
    out.radius = rng.uniform(0.05, 0.3);
    const double r2 = out.radius * out.radius;
    for (int i = 0; i < n; ++i) {
      ballots[i].clear();
      for (int c = 0; c < m; ++c) {
        double dx = out.voters[i].x - out.candidates[c].x, dy = out.voters[i].y - out.candidates[c].y;
        if (dx * dx + dy * dy <= r2) ballots[i].push_back(c);
      }
    }
    if (nonempty(m, ballots)) {
      out.attempts = attempt;
      out.profile = build_profile(n, m, ballots);
      return out;
    }
  }
  throw Error(ErrorCode::ResampleLimitExceeded, "no Euclidean instance without empty ballots or candidates");
}

ApprovalProfile gen_resampling(int n, int m, double p, double phi, SeededRng& rng) {
  check_sizes(n, m);
  if (!(p >= 0 && p <= 1 && phi >= 0 && phi <= 1)) throw Error(ErrorCode::OutOfRange, "p and phi must lie in [0, 1]");
  std::vector<CandidateSet> ballots(n);
  std::vector<char> central(m);
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    for (int c = 0; c < m; ++c) central[c] = rng.bernoulli(p);
    for (int i = 0; i < n; ++i) {
      ballots[i].clear();
      for (int c = 0; c < m; ++c) {
        bool approve = rng.bernoulli(phi) ? rng.bernoulli(p) : central[c] != 0;
        if (approve) ballots[i].push_back(c);
      }
    }
    if (nonempty(m, ballots)) return build_profile(n, m, ballots);
  }
  throw Error(ErrorCode::ResampleLimitExceeded, "no resampling instance without empty ballots or candidates");
}

Rational spatial_weight(double distance) {
  const double w = std::exp(-distance * distance / (2 * 0.09));
  Rational q(static_cast<long>(std::llround(w * 1e12)), 1'000'000'000'000L);
  q.canonicalize();
  return q;
}

std::vector<Rational> gen_spatial_weights(const std::vector<Point>& voters, SeededRng& rng) {
  const Point centre{rng.uniform01(), rng.uniform01()};
  std::vector<Rational> w;
  w.reserve(voters.size());
  for (const auto& v : voters) w.push_back(spatial_weight(std::hypot(v.x - centre.x, v.y - centre.y)));
  return w;
}

namespace {

// Smallest ρ with Σ_{i∈V[c]} min(b_i, ρ) = 1, if the supporters can afford c at all.
std::optional<Rational> min_rho(const std::vector<int>& supporters, const std::vector<Rational>& budget) {
  std::vector<Rational> b;
  for (int i : supporters) b.push_back(budget[i]);
  std::sort(b.begin(), b.end());
  Rational remaining = 1;
  long left = static_cast<long>(b.size());
  for (const auto& x : b) {
    if (x * left >= remaining) return Rational(remaining / left);
    remaining -= x;
    --left;
  }
  return std::nullopt;
}

}  // namespace

Committee weighted_mes(const ApprovalProfile& profile, int k, MesCompletion completion) {
  const int n = profile.voter_count(), m = profile.candidate_count();
  if (k < 0 || k > m) throw Error(ErrorCode::OutOfRange, "committee size outside [0, m]");
  Rational total;
  for (int i = 0; i < n; ++i) total += profile.weight(i);
  std::vector<Rational> budget(n);
  for (int i = 0; i < n; ++i) budget[i] = k * profile.weight(i) / total;

  std::vector<char> chosen(m, 0);
  std::vector<int> members;
  while (static_cast<int>(members.size()) < k) {
    int best = -1;
    Rational best_rho;
    for (int c = 0; c < m; ++c) {
      if (chosen[c]) continue;
      auto rho = min_rho(profile.supporters(c), budget);
      if (rho && (best < 0 || *rho < best_rho)) {
        best = c;
        best_rho = *rho;
      }
    }
    if (best >= 0) {
      for (int i : profile.supporters(best)) budget[i] -= std::min(budget[i], best_rho);
      chosen[best] = 1;
      members.push_back(best);
      continue;
    }
    if (completion == MesCompletion::ApprovalScore) {
      std::vector<int> rest;
      for (int c = 0; c < m; ++c)
        if (!chosen[c]) rest.push_back(c);
      std::stable_sort(rest.begin(), rest.end(),
                       [&](int x, int y) { return profile.approval_score(x) > profile.approval_score(y); });
      rest.resize(k - members.size());
      members.insert(members.end(), rest.begin(), rest.end());
      break;
    }
    Rational richest;
    for (int c = 0; c < m; ++c) {
      if (chosen[c]) continue;
      Rational s;
      for (int i : profile.supporters(c)) s += budget[i];
      richest = std::max(richest, s);
    }
    if (sgn(richest) == 0) break;
    for (auto& b : budget) b /= richest;
  }
  if (members.empty()) throw Error(ErrorCode::InvalidCommittee, "equal shares selected no candidate");
  return make_committee(m, members);
}

Committee random_committee(const ApprovalProfile& profile, int k, SeededRng& rng) {
  const int m = profile.candidate_count();
  if (k < 1 || k > m) throw Error(ErrorCode::OutOfRange, "committee size outside [1, m]");
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  for (int t = 0; t < k; ++t) std::swap(pool[t], pool[t + rng.below(m - t)]);
  pool.resize(k);
  return make_committee(m, pool);
}

}  // namespace pricekit
