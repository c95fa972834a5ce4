#pragma once

#include <string>
#include <vector>

#include "pricekit/gen.hpp"
#include "pricekit/price_system.hpp"

namespace pricekit::fixtures {

struct Instance {
  ApprovalProfile profile;
  Committee committee;
};

// Canonical num/den.
Rational frac(long num, long den);

Instance make_instance(int n, int m, std::vector<CandidateSet> ballots, std::vector<int> committee);

// ---- hand-built instances (0-based) -------------------------------------------

// 4 voters; c0,c1 unanimous; c2..c4 approved by voters 0,1; c5..c7 by voters 2,3; W = {c0..c3}.
Instance four_voter_laminar();
// Budgets 5/4 each, but voters 0 and 1 share a ballot and pay differently.
PriceSystem four_voter_unequal_payments(const Instance& inst);
// Each voter pays 1/2 to each of the two committee members in its own block; no residuals.
PriceSystem four_voter_block_payments(const Instance& inst);

// Voter 0 approves all six candidates; voters 1,2 approve the odd ones and voters 3,4 the
// even ones; W = {c0..c3}.
Instance brick_wall();

// 2q voters; c0 approved by voters 1..2q-1, c1 by voters 0..q-1; W = {c1}.
Instance single_winner_minority(int q);

// 3 voters; c0 approved by voters 0,1 and c1 by voters 1,2; W = {c1}.
Instance three_voter_chain();

// 5 voters, 10 candidates, W = {c0, c1}. Removing voter 3's approval of c1 reverses a budget
// comparison under both continuous Phragmén and equal split.
Instance monotonicity_counterexample();
inline constexpr int kMonotonicityVoter = 3;
inline constexpr int kMonotonicityCandidate = 1;

// 8 voters, 9 candidates, W = {c1, c4, c7}; Pareto optimal without a weakly stable price system.
Instance no_weakly_stable_system();

// Two voters approving the single candidate, which is selected.
Instance two_identical_voters();

// Two voters; delta+1 shared candidates, delta+1 own candidates each; W = shared plus voter 0's own.
Instance lopsided_pair(int delta);

// 11 voters; c0 unanimous; c1,c2 approved by voter 0; c3..c13 by voters 1..10;
// W = {c0, c1, c3..c12} is laminar proportional.
Instance eleven_voter_laminar();

// ---- random generators --------------------------------------------------------

// Euclidean-VCR or resampling with n in [n_min, n_max] and m in [m_min, m_max].
ApprovalProfile random_profile(SeededRng& rng, int n_min, int n_max, int m_min, int m_max);
// Uniform size in [1, m], then a uniform subset of that size.
Committee random_subset(const ApprovalProfile& profile, SeededRng& rng);
Instance random_instance(SeededRng& rng, int n_max, int m_max);

// Random voter and candidate relabelling of an instance.
Instance shuffled(const Instance& inst, SeededRng& rng);

struct LaminarCase {
  Instance instance;
  bool proportional_by_construction = false;
};
// Random laminar profile with roughly max_voters voters. With `proportional`, the committee is
// built top down so that every split receives seats in proportion to its voters; otherwise
// it is a uniform random subset.
LaminarCase random_laminar(SeededRng& rng, int max_voters, bool proportional);

// Each voter approves exactly one member; outsiders have at most as many supporters as the
// least supported member.
Instance random_perfect_coverage(SeededRng& rng, int n_max, int m_max);

// All candidates pairwise isomorphic and W takes the same number of each type; n <= 7, m <= 8.
Instance random_perfect_symmetry(SeededRng& rng);

// |W| = 1 and the member is not an approval winner.
Instance random_single_winner_non_winner(SeededRng& rng, int n_max, int m_max);

// ---- brute-force oracles ------------------------------------------------------

// Enumerates every disjoint X, Y ⊆ V[c] and every S ⊆ W literally.
bool weakly_stable_exhaustive(const ApprovalProfile& profile, const PriceSystem& ps);

// Largest |V'|·|W| / (ℓ·n) over every group V' ⊆ V[c], c ∉ W, whose members have fewer than ℓ
// representatives; 0 when there is none.
Rational min_alpha_ejr_plus_exhaustive(const ApprovalProfile& profile, const Committee& committee);

// α-PJR+ by enumerating every ℓ ∈ [|W|] and every group.
bool alpha_pjr_plus_literal(const ApprovalProfile& profile, const Committee& committee, const Rational& alpha);

// Equal shares with budgets k·w_i/Σw: each round buys the candidate with the smallest price
// per supporter found by scanning supporter budgets as breakpoints; unfilled seats go by
// approval score.
Committee equal_shares_reference(const ApprovalProfile& profile, int k);

// max_i b_i - min_i b_i
Rational budget_spread(const PriceSystem& ps);

}  // namespace pricekit::fixtures
