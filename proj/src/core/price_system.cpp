#include "pricekit/price_system.hpp"

#include <string>

#include "pricekit/error.hpp"

namespace pricekit {

PriceSystem::PriceSystem(Committee committee, int voter_count)
    : committee_(std::move(committee)), n_(voter_count) {
  payments_.assign(static_cast<size_t>(n_) * committee_.size(), Rational(0));
  residuals_.assign(n_, Rational(0));
}

Rational PriceSystem::payment(int voter, int candidate) const {
  int slot = committee_.position(candidate);
  if (slot < 0) return Rational(0);
  return payments_[index(voter, slot)];
}

void PriceSystem::set_payment(int voter, int candidate, const Rational& value) {
  if (voter < 0 || voter >= n_ || candidate < 0 || candidate >= committee_.candidate_count() ||
      !committee_.contains(candidate))
    throw Error(ErrorCode::OutOfRange, "payment slot outside voters x committee", candidate);
  payments_[index(voter, committee_.position(candidate))] = value;
}

Rational PriceSystem::total_payment(int voter) const {
  Rational sum = 0;
  for (int s = 0; s < committee_.size(); ++s) sum += payments_[index(voter, s)];
  return sum;
}

Rational PriceSystem::budget(int voter) const { return residuals_[voter] + total_payment(voter); }

bool operator==(const PriceSystem& a, const PriceSystem& b) {
  return a.n_ == b.n_ && a.committee_.members() == b.committee_.members() && a.payments_ == b.payments_ &&
         a.residuals_ == b.residuals_;
}

std::optional<PriceViolation> validate_price_system(const ApprovalProfile& profile, const PriceSystem& ps) {
  const Committee& w = ps.committee();
  if (ps.voter_count() != profile.voter_count())
    return PriceViolation{"voter count mismatch", -1, -1, "price system and profile disagree on n"};
  if (w.candidate_count() != profile.candidate_count())
    return PriceViolation{"candidate count mismatch", -1, -1, "committee built for a different candidate pool"};
  for (int i = 0; i < profile.voter_count(); ++i) {
    if (sgn(ps.residual(i)) < 0)
      return PriceViolation{"negative residual", i, -1, "voter " + std::to_string(i) + " has a negative residual"};
    for (int s = 0; s < w.size(); ++s) {
      int c = w.members()[s];
      const Rational& p = ps.payment_at(i, s);
      if (sgn(p) < 0)
        return PriceViolation{"negative payment", i, c,
                              "voter " + std::to_string(i) + " pays a negative amount to " + std::to_string(c)};
      if (sgn(p) != 0 && !profile.approves(i, c))
        return PriceViolation{"payment outside approval set", i, c,
                              "voter " + std::to_string(i) + " pays non-approved candidate " + std::to_string(c)};
    }
  }
  for (int s = 0; s < w.size(); ++s) {
    Rational sum = 0;
    for (int i = 0; i < profile.voter_count(); ++i) sum += ps.payment_at(i, s);
    int c = w.members()[s];
    if (sum < 1)
      return PriceViolation{"underfunded candidate", -1, c,
                            "candidate " + std::to_string(c) + " receives " + to_fraction_string(sum)};
    if (sum > 1)
      return PriceViolation{"overfunded candidate", -1, c,
                            "candidate " + std::to_string(c) + " receives " + to_fraction_string(sum)};
  }
  return std::nullopt;
}

std::vector<Rational> budgets(const PriceSystem& ps) {
  std::vector<Rational> b(ps.voter_count());
  for (int i = 0; i < ps.voter_count(); ++i) b[i] = ps.budget(i);
  return b;
}

std::vector<Rational> total_payments(const PriceSystem& ps) {
  std::vector<Rational> p(ps.voter_count());
  for (int i = 0; i < ps.voter_count(); ++i) p[i] = ps.total_payment(i);
  return p;
}

bool is_budget_uniform(const PriceSystem& ps) {
  auto b = budgets(ps);
  for (const auto& x : b)
    if (x != b.front()) return false;
  return true;
}

}  // namespace pricekit
