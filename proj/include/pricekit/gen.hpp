#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pricekit/profile.hpp"

namespace pricekit {

// mt19937_64 seeded through splitmix64. Draw helpers avoid std distributions so that
// streams are identical across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  // Independent stream for work item `index`; depends only on (seed, index).
  SeededRng substream(std::uint64_t index) const;

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform in [0, bound), bound > 0, without modulo bias.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct Point {
  double x = 0;
  double y = 0;
};

struct EuclideanInstance {
  ApprovalProfile profile;
  std::vector<Point> voters;
  std::vector<Point> candidates;
  double radius = 0;
  int attempts = 0;
};

inline constexpr int kMaxResampleAttempts = 10'000;

// Uniform points in the unit square, radius uniform in [0.05, 0.3], approval within distance
// radius. Instances with an empty ballot or an unsupported candidate are redrawn whole.
EuclideanInstance gen_euclidean_vcr(int n, int m, SeededRng& rng);

// Central ballot with approval probability p; each voter keeps each entry with probability
// 1 - phi and otherwise redraws it with probability p. Redrawn whole on emptiness.
ApprovalProfile gen_resampling(int n, int m, double p, double phi, SeededRng& rng);

// exp(-d^2 / (2 * 0.3^2)) around a uniform centre, rounded to 12 decimal places.
std::vector<Rational> gen_spatial_weights(const std::vector<Point>& voters, SeededRng& rng);
Rational spatial_weight(double distance);

// Seats left once no candidate is affordable:
//   ApprovalScore  fill by unweighted approval score, lowest index first;
//   BudgetScaling  scale all budgets by the smallest factor making some candidate affordable, repeat.
enum class MesCompletion { ApprovalScore, BudgetScaling };

// Method of Equal Shares with budgets k * w_i / Σ w; lowest candidate index breaks ρ ties.
Committee weighted_mes(const ApprovalProfile& profile, int k,
                       MesCompletion completion = MesCompletion::ApprovalScore);

// Uniform k-subset.
Committee random_committee(const ApprovalProfile& profile, int k, SeededRng& rng);

}  // namespace pricekit
