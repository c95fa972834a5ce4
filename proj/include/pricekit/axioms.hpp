#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pricekit/price_system.hpp"

namespace pricekit {

struct CheckResult {
  bool ok = true;
  std::string witness;  // empty when ok
  explicit operator bool() const { return ok; }
};

// Guards for the exponential checkers; raise them deliberately in tests.
struct SearchLimits {
  int max_voters = 8;
  int max_candidates = 10;
};

// ---- stability family -------------------------------------------------------

CheckResult check_residual_stability(const ApprovalProfile& profile, const PriceSystem& ps);
CheckResult check_one_stability(const ApprovalProfile& profile, const PriceSystem& ps);
inline bool is_residual_stable(const ApprovalProfile& a, const PriceSystem& ps) { return check_residual_stability(a, ps).ok; }
inline bool is_one_stable(const ApprovalProfile& a, const PriceSystem& ps) { return check_one_stability(a, ps).ok; }

CheckResult check_stability(const ApprovalProfile& profile, const PriceSystem& ps);
inline bool is_stable(const ApprovalProfile& a, const PriceSystem& ps) { return check_stability(a, ps).ok; }

// Per unselected c: |V[c]| <= 12 and |W| <= 12, otherwise InstanceTooLarge.
CheckResult check_weak_stability_bruteforce(const ApprovalProfile& profile, const PriceSystem& ps);
inline bool is_weakly_stable_bruteforce(const ApprovalProfile& a, const PriceSystem& ps) {
  return check_weak_stability_bruteforce(a, ps).ok;
}

// ---- symmetry ---------------------------------------------------------------

struct Automorphism {
  std::vector<int> sigma;  // voter permutation
  std::vector<int> pi;     // candidate permutation
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
  friend auto operator<=>(const Automorphism&, const Automorphism&) = default;
};

// With a committee, only automorphisms with π(W) = W. Throws InstanceTooLarge beyond the limits.
std::vector<Automorphism> enumerate_automorphisms(const ApprovalProfile& profile, const Committee* committee,
                                                  const SearchLimits& limits = {});

CheckResult check_symmetry(const ApprovalProfile& profile, const PriceSystem& ps, const SearchLimits& limits = {});
inline bool is_symmetric(const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits& limits = {}) {
  return check_symmetry(a, ps, limits).ok;
}

CheckResult check_equal_treatment(const ApprovalProfile& profile, const PriceSystem& ps);
inline bool is_equal_treatment(const ApprovalProfile& a, const PriceSystem& ps) { return check_equal_treatment(a, ps).ok; }

// ---- laminar profiles -------------------------------------------------------

struct LaminarNode {
  enum class Kind { Unanimous, Strip, Split };
  Kind kind = Kind::Unanimous;
  std::vector<int> voters;
  std::vector<int> candidates;
  std::vector<int> stripped;           // Strip: unanimously approved candidates removed here
  std::vector<LaminarNode> children;   // Strip: 1, Split: 2
};

std::optional<LaminarNode> is_laminar(const ApprovalProfile& profile);

// Each of these throws NotLaminar on non-laminar input.
CheckResult check_laminar_coherence(const ApprovalProfile& profile, const PriceSystem& ps);
inline bool is_laminar_coherent(const ApprovalProfile& a, const PriceSystem& ps) { return check_laminar_coherence(a, ps).ok; }
bool is_laminar_proportional(const ApprovalProfile& profile, const Committee& committee);
int max_laminar_unproportionality(const ApprovalProfile& profile, const Committee& committee);

// ---- uniformity preconditions -----------------------------------------------

bool provides_perfect_coverage(const ApprovalProfile& profile, const Committee& committee);
bool is_perfect_symmetry_instance(const ApprovalProfile& profile, const Committee& committee,
                                  const SearchLimits& limits = {});

// ---- residual and payment axioms --------------------------------------------

// Throws NotOneStable when ps is not 1-stable.
CheckResult check_budget_averaging(const ApprovalProfile& profile, const PriceSystem& ps);
inline bool is_budget_averaging(const ApprovalProfile& a, const PriceSystem& ps) { return check_budget_averaging(a, ps).ok; }

// nullopt when not applicable (|W| != 1, or the member is an approval winner).
std::optional<CheckResult> check_single_winner_payment_responsiveness(const ApprovalProfile& profile,
                                                                       const PriceSystem& ps);

using ExplanationRule = std::function<PriceSystem(const ApprovalProfile&, const Committee&)>;

struct MonotonicityReport {
  bool ok = true;
  std::vector<int> violators;  // voters j breaking one of the two implications
  std::vector<Rational> before;
  std::vector<Rational> after;
};

// Deletes the approval of `voter` for `candidate` and compares budget orders. Throws PreconditionViolated.
MonotonicityReport check_monotonicity_pair(const ExplanationRule& rule, const ApprovalProfile& profile,
                                           const Committee& committee, int voter, int candidate);

// ---- proportionality --------------------------------------------------------

// Tight EJR+ threshold: W satisfies α-EJR+ exactly for α strictly above the returned value.
Rational min_alpha_ejr_plus(const ApprovalProfile& profile, const Committee& committee);

// n <= 14, otherwise InstanceTooLarge.
bool satisfies_alpha_pjr_plus_bruteforce(const ApprovalProfile& profile, const Committee& committee,
                                         const Rational& alpha);

struct MaximinSupportReport {
  Rational bound;             // 1 / max_i b_i
  std::optional<Rational> mms;  // exact value when n, |W| <= 12
  bool verified = false;      // mms >= bound
};
MaximinSupportReport maximin_support_lower_bound(const ApprovalProfile& profile, const PriceSystem& ps);

// C(m, |W|) <= 10^6 alternatives, otherwise InstanceTooLarge.
bool is_pareto_optimal_bruteforce(const ApprovalProfile& profile, const Committee& committee);

// Candidates with maximum approval score.
std::vector<int> approval_winners(const ApprovalProfile& profile);

}  // namespace pricekit
