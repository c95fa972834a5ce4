#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pricekit/profile.hpp"
#include "pricekit/rational.hpp"

namespace pricekit {

class PriceSystem {
 public:
  PriceSystem() = default;
  // All payments and residuals zero.
  PriceSystem(Committee committee, int voter_count);

  const Committee& committee() const { return committee_; }
  int voter_count() const { return n_; }

  // p(i,c); zero for candidates outside the committee.
  Rational payment(int voter, int candidate) const;
  // Throws OutOfRange unless the voter exists and the candidate is a member.
  void set_payment(int voter, int candidate, const Rational& value);
  // Positional access, slot = committee().position(c).
  const Rational& payment_at(int voter, int slot) const { return payments_[index(voter, slot)]; }
  Rational& payment_at(int voter, int slot) { return payments_[index(voter, slot)]; }

  const Rational& residual(int voter) const { return residuals_[voter]; }
  void set_residual(int voter, const Rational& value) { residuals_[voter] = value; }
  const std::vector<Rational>& residuals() const { return residuals_; }
  std::vector<Rational>& residuals() { return residuals_; }

  // p_i
  Rational total_payment(int voter) const;
  // b_i = r_i + p_i
  Rational budget(int voter) const;

  friend bool operator==(const PriceSystem& a, const PriceSystem& b);

 private:
  size_t index(int voter, int slot) const { return static_cast<size_t>(voter) * committee_.size() + slot; }

  Committee committee_;
  int n_ = 0;
  std::vector<Rational> payments_;
  std::vector<Rational> residuals_;
};

struct PriceViolation {
  std::string clause;  // "underfunded candidate", "payment outside approval set", ...
  int voter = -1;
  int candidate = -1;
  std::string message;
};

std::optional<PriceViolation> validate_price_system(const ApprovalProfile& profile, const PriceSystem& ps);

std::vector<Rational> budgets(const PriceSystem& ps);
std::vector<Rational> total_payments(const PriceSystem& ps);

bool is_budget_uniform(const PriceSystem& ps);

}  // namespace pricekit
