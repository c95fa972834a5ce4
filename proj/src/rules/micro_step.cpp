#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "pricekit/error.hpp"
#include "pricekit/rules.hpp"

// Literal fixed-step execution on an integer grid. Amounts are multiples of 1/S where
// S = q · lcm(1..|W|) · G, so every per-step share ε/|C_i| is an exact grid value.

namespace pricekit {
namespace {

using i64 = std::int64_t;
using i128 = __int128;

class MicroStep {
 public:
  MicroStep(const ApprovalProfile& a, const Committee& w, i64 q, long max_steps)
      : a_(a), w_(w), n_(a.voter_count()), k_(w.size()), max_steps_(max_steps) {
    i64 l = 1;
    for (int d = 2; d <= k_; ++d) {
      l = std::lcm(l, static_cast<i64>(d));
      if (l > 1'000'000'000'000LL) throw Error(ErrorCode::PreconditionViolated, "committee too large for the step grid");
    }
    const i64 limit = 1'000'000'000'000'000LL;
    if (static_cast<i128>(q) * l > limit) throw Error(ErrorCode::PreconditionViolated, "step grid exceeds 64-bit range");
    i64 g = limit / (q * l);
    unit_ = q * l * g;
    step_ = l * g;
    for (int i = 0; i < n_; ++i)
      for (int c : a.approvals(i)) (w.contains(c) ? slots_[i] : outs_[i]).push_back(c);
  }

  PriceSystem run() {
    h_.assign(k_, unit_);
    pay_.assign(static_cast<size_t>(n_) * k_, 0);
    res_.assign(n_, 0);
    active_.assign(n_, 1);
    critical_.assign(k_, 0);
    long steps = 0;
    while (std::any_of(h_.begin(), h_.end(), [](i64 x) { return x > 0; })) {
      if (++steps > max_steps_) throw Error(ErrorCode::StepBudgetExceeded, "micro-step oracle exceeded " + std::to_string(max_steps_) + " steps");
      plan();
      spend();
      prune();
      for (int s = 0; s < k_; ++s)
        if (h_[s] <= 0) critical_[s] = 0;
    }
    residual_phase(steps);
    return export_system();
  }

 private:
  i64& pay(int i, int s) { return pay_[static_cast<size_t>(i) * k_ + s]; }
  i64 pay(int i, int s) const { return pay_[static_cast<size_t>(i) * k_ + s]; }
  int slot(int c) const { return w_.position(c); }

  i64 residual_sum(int c) const {
    i64 t = 0;
    for (int i : a_.supporters(c)) t += res_[i];
    return t;
  }
  i64 pair_sum(int c, int c2) const {
    i64 t = 0;
    for (int i : a_.supporters(c)) t += a_.approves(i, c2) ? pay(i, slot(c2)) : res_[i];
    return t;
  }

  std::vector<std::vector<int>> money_flow() const {
    std::vector<std::vector<int>> sets(n_);
    std::vector<int> open;
    for (int i = 0; i < n_; ++i)
      if (active_[i] && std::any_of(slots_[i].begin(), slots_[i].end(), [&](int c) { return h_[slot(c)] > 0; }))
        open.push_back(i);
    while (!open.empty()) {
      std::vector<i64> d(k_, 0);
      for (int i : open)
        for (int c : slots_[i])
          if (h_[slot(c)] > 0) ++d[slot(c)];
      int best = -1;
      for (int s = 0; s < k_; ++s)
        if (d[s] > 0 && (best < 0 || static_cast<i128>(h_[s]) * d[best] < static_cast<i128>(h_[best]) * d[s])) best = s;
      std::vector<char> arg(k_, 0);
      for (int s = 0; s < k_; ++s)
        arg[s] = d[s] > 0 && static_cast<i128>(h_[s]) * d[best] == static_cast<i128>(h_[best]) * d[s];
      std::vector<int> rest;
      for (int i : open) {
        for (int c : slots_[i])
          if (arg[slot(c)]) sets[i].push_back(c);
        if (sets[i].empty()) rest.push_back(i);
      }
      open = std::move(rest);
    }
    return sets;
  }

  // Voters on a constraint within one step of 1, in the role that makes it grow.
  std::vector<int> blocking(const std::vector<std::vector<int>>& sets, const std::vector<char>& crit) const {
    std::vector<char> mark(n_, 0);
    auto guarded = [&](int i) {
      if (!active_[i]) return true;
      for (int c : slots_[i])
        if (crit[slot(c)]) return true;
      return false;
    };
    for (int c : w_.outsiders()) {
      i64 res = residual_sum(c);
      for (int i : a_.supporters(c))
        if (!guarded(i) && sets[i].empty() && res + step_ > unit_) mark[i] = 1;
      for (int c2 : w_.members()) {
        i64 f = pair_sum(c, c2);
        for (int i : a_.supporters(c)) {
          if (guarded(i)) continue;
          if (a_.approves(i, c2)) {
            if (std::binary_search(sets[i].begin(), sets[i].end(), c2) && f + step_ > unit_)
              mark[i] = 1;
          } else if (sets[i].empty() && f + step_ > unit_) {
            mark[i] = 1;
          }
        }
      }
    }
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (mark[i]) out.push_back(i);
    return out;
  }

  void plan() {
    for (int round = 0;; ++round) {
      if (round > n_ + k_ + 1) throw Error(ErrorCode::Internal, "oracle planning phase did not stabilise");
      sets_ = money_flow();
      bool changed = false;
      for (int i : blocking(sets_, critical_)) {
        active_[i] = 0;
        changed = true;
      }
      std::vector<int> unsupported;
      for (int s = 0; s < k_; ++s) {
        if (h_[s] <= 0) continue;
        const auto& v = a_.supporters(w_.members()[s]);
        if (std::none_of(v.begin(), v.end(), [&](int i) { return active_[i] != 0; })) unsupported.push_back(s);
      }
      for (int s : unsupported) {
        critical_[s] = 1;
        for (int i : a_.supporters(w_.members()[s])) active_[i] = 1;
        changed = true;
      }
      if (!changed) return;
    }
  }

  void spend() {
    std::vector<i64> incoming(k_, 0);
    for (int i = 0; i < n_; ++i) {
      if (!active_[i]) continue;
      if (sets_[i].empty()) {
        res_[i] += step_;
        continue;
      }
      for (int c : sets_[i]) incoming[slot(c)] += step_ / static_cast<i64>(sets_[i].size());
    }
    for (int s = 0; s < k_; ++s) {
      if (incoming[s] == 0) continue;
      const bool clip = incoming[s] > h_[s];
      i64 paid = 0;
      std::vector<int> contributors;
      for (int i = 0; i < n_; ++i) {
        if (!active_[i] || !std::binary_search(sets_[i].begin(), sets_[i].end(), w_.members()[s])) continue;
        i64 share = step_ / static_cast<i64>(sets_[i].size());
        if (clip) share = static_cast<i64>(static_cast<i128>(share) * h_[s] / incoming[s]);
        pay(i, s) += share;
        paid += share;
        contributors.push_back(i);
      }
      if (clip)
        for (size_t x = 0; paid < h_[s]; x = (x + 1) % contributors.size()) {
          ++pay(contributors[x], s);
          ++paid;
        }
      h_[s] -= paid;
    }
  }

  void prune() {
    // Largest reduction fraction δ/R per voter, kept as (δ, R).
    std::vector<i64> num(n_, 0), den(n_, 1);
    bool any = false;
    for (int c : w_.outsiders())
      for (int c2 : w_.members()) {
        i64 delta = pair_sum(c, c2) - unit_;
        if (delta <= 0) continue;
        i64 mass = 0;
        for (int i : a_.supporters(c))
          if (!a_.approves(i, c2)) mass += res_[i];
        if (mass == 0) continue;
        delta = std::min(delta, mass);
        for (int i : a_.supporters(c))
          if (!a_.approves(i, c2) && static_cast<i128>(delta) * den[i] > static_cast<i128>(num[i]) * mass) {
            num[i] = delta;
            den[i] = mass;
            any = true;
          }
      }
    if (!any) return;
    for (int i = 0; i < n_; ++i) {
      if (num[i] == 0) continue;
      i128 cut = (static_cast<i128>(res_[i]) * num[i] + den[i] - 1) / den[i];
      res_[i] -= static_cast<i64>(std::min<i128>(cut, res_[i]));
    }
  }

  i64 budget(int i) const {
    i64 b = res_[i];
    for (int s = 0; s < k_; ++s) b += pay(i, s);
    return b;
  }

  void residual_phase(long& steps) {
    std::fill(active_.begin(), active_.end(), 1);
    std::vector<std::vector<int>> empty(n_);
    std::vector<char> none(k_, 0);
    i64 max_b = 0;
    for (int i = 0; i < n_; ++i) max_b = std::max(max_b, budget(i));
    while (true) {
      if (++steps > max_steps_) throw Error(ErrorCode::StepBudgetExceeded, "micro-step oracle exceeded " + std::to_string(max_steps_) + " steps");
      for (int i : blocking(empty, none)) active_[i] = 0;
      i64 min_b = 0;
      bool have = false;
      for (int i = 0; i < n_; ++i)
        if (active_[i] && (!have || budget(i) < min_b)) {
          min_b = budget(i);
          have = true;
        }
      if (!have || min_b >= max_b) return;
      for (int i = 0; i < n_; ++i)
        if (active_[i] && budget(i) == min_b) res_[i] += std::min(step_, max_b - min_b);
    }
  }

  PriceSystem export_system() const {
    PriceSystem ps(w_, n_);
    for (int i = 0; i < n_; ++i) {
      ps.set_residual(i, Rational(mpz_class(res_[i]), mpz_class(unit_)));
      for (int s = 0; s < k_; ++s)
        if (pay(i, s) != 0) ps.payment_at(i, s) = Rational(mpz_class(pay(i, s)), mpz_class(unit_));
    }
    for (auto& r : ps.residuals()) r.canonicalize();
    for (int i = 0; i < n_; ++i)
      for (int s = 0; s < k_; ++s) ps.payment_at(i, s).canonicalize();
    return ps;
  }

  const ApprovalProfile& a_;
  const Committee& w_;
  int n_, k_;
  long max_steps_;
  i64 unit_ = 1;
  i64 step_ = 1;
  std::vector<std::vector<int>> slots_{std::vector<std::vector<int>>(static_cast<size_t>(n_))};
  std::vector<std::vector<int>> outs_{std::vector<std::vector<int>>(static_cast<size_t>(n_))};
  std::vector<i64> h_;
  std::vector<i64> pay_;
  std::vector<i64> res_;
  std::vector<char> active_;
  std::vector<char> critical_;
  std::vector<std::vector<int>> sets_;
};

}  // namespace

PriceSystem micro_step_oracle(const ApprovalProfile& profile, const Committee& committee, const Rational& epsilon,
                              long max_steps) {
  if (sgn(epsilon) <= 0 || epsilon.get_num() != 1 || !epsilon.get_den().fits_slong_p())
    throw Error(ErrorCode::PreconditionViolated, "step must be 1/q for a positive integer q");
  return MicroStep(profile, committee, epsilon.get_den().get_si(), max_steps).run();
}

}  // namespace pricekit
