#include <algorithm>
#include <optional>
#include <string>

#include "incidence.hpp"
#include "pricekit/error.hpp"
#include "pricekit/rules.hpp"

namespace pricekit {
namespace {

using detail::Incidence;

struct Layer {
  std::vector<int> members;
  std::vector<int> eligible;
  std::vector<int> denom;  // |V[c] ∩ V*| per slot at this layer
};

struct Plan {
  std::vector<std::vector<int>> sets;  // slots, ascending
  std::vector<Layer> layers;
};

using TieKeys = std::vector<const std::vector<Rational>*>;

// Negative when slot a has the smaller money-flow key. Ties on h/D go to the larger t/D.
int compare_slots(const std::vector<Rational>& h, const Layer& layer, const TieKeys& ties, int a, int b) {
  const long da = layer.denom[a], db = layer.denom[b];
  int c = cmp(h[a] * db, h[b] * da);
  if (c != 0) return c;
  for (const auto* t : ties) {
    c = cmp((*t)[b] * da, (*t)[a] * db);
    if (c != 0) return c;
  }
  return 0;
}

Plan flow(const Incidence& inc, const std::vector<char>& active, const std::vector<Rational>& h, const TieKeys& ties) {
  Plan plan;
  plan.sets.assign(inc.n, {});
  std::vector<int> open;
  for (int i = 0; i < inc.n; ++i) {
    if (!active[i]) continue;
    for (int s : inc.member_slots[i])
      if (sgn(h[s]) > 0) {
        open.push_back(i);
        break;
      }
  }
  std::vector<char> chosen(inc.k);
  while (!open.empty()) {
    Layer layer;
    layer.denom.assign(inc.k, 0);
    for (int i : open)
      for (int s : inc.member_slots[i])
        if (sgn(h[s]) > 0) ++layer.denom[s];
    int best = -1;
    for (int s = 0; s < inc.k; ++s) {
      if (layer.denom[s] == 0) continue;
      layer.eligible.push_back(s);
      if (best < 0 || compare_slots(h, layer, ties, s, best) < 0) best = s;
    }
    std::fill(chosen.begin(), chosen.end(), 0);
    for (int s : layer.eligible)
      if (compare_slots(h, layer, ties, s, best) == 0) {
        layer.members.push_back(s);
        chosen[s] = 1;
      }
    std::vector<int> rest;
    for (int i : open) {
      auto& set = plan.sets[i];
      for (int s : inc.member_slots[i])
        if (chosen[s]) set.push_back(s);
      if (set.empty()) rest.push_back(i);
    }
    open = std::move(rest);
    plan.layers.push_back(std::move(layer));
  }
  return plan;
}

std::vector<Rational> funding_rates(const Incidence& inc, const Plan& plan) {
  std::vector<Rational> a(inc.k, Rational(0));
  for (const auto& set : plan.sets) {
    if (set.empty()) continue;
    Rational share(1, static_cast<long>(set.size()));
    for (int s : set) a[s] += share;
  }
  return a;
}

// Money-flow plan in the limit of vanishing steps. Ratio ties are broken by `acc`, the funding
// received during earlier infinitesimal transients (first-order term of h). Each round is one
// transient step; the plan is final once ranking by its own funding rates reproduces it.
Plan stable_flow(const Incidence& inc, const std::vector<char>& active, const std::vector<Rational>& h,
                 std::vector<Rational>& acc, PhragmenStats* stats) {
  Plan plan = flow(inc, active, h, {&acc});
  for (int round = 0; round < 64; ++round) {
    std::vector<Rational> a = funding_rates(inc, plan);
    Plan check = flow(inc, active, h, {&a, &acc});
    if (check.sets == plan.sets) return plan;
    for (int s = 0; s < inc.k; ++s) acc[s] += a[s];
    plan = flow(inc, active, h, {&acc});
  }
  if (stats) ++stats->unresolved_ties;
  return plan;
}

bool contains_slot(const std::vector<int>& set, int s) { return std::binary_search(set.begin(), set.end(), s); }

std::vector<char> blocking_mask(const Incidence& inc, const std::vector<char>& active,
                                const std::vector<char>& critical_approver, const std::vector<std::vector<int>>& sets,
                                const ConstraintValues& f) {
  std::vector<char> mark(inc.n, 0);
  auto eligible = [&](int i) { return active[i] && !critical_approver[i]; };
  for (int u = 0; u < inc.rows; ++u) {
    if (f.residual[u] == 1)
      for (int i : inc.row_voters[u])
        if (eligible(i) && sets[i].empty()) mark[i] = 1;
    for (int s = 0; s < inc.k; ++s) {
      if (f.pair[inc.sc.pair_index(u, s)] != 1) continue;
      for (int i : inc.row_voters[u]) {
        if (!eligible(i)) continue;
        if (inc.approves_slot(i, s) ? contains_slot(sets[i], s) : sets[i].empty()) mark[i] = 1;
      }
    }
  }
  return mark;
}

std::vector<char> critical_approvers(const Incidence& inc, const std::vector<char>& critical) {
  std::vector<char> out(inc.n, 0);
  for (int i = 0; i < inc.n; ++i)
    for (int s : inc.member_slots[i])
      if (critical[s]) out[i] = 1;
  return out;
}

struct Pinned {
  Rational growth;
  std::vector<int> voters;  // V[c] ∖ V[c'] with positive residual
};

class Run {
 public:
  Run(const ApprovalProfile& profile, const Committee& committee, PhragmenStats* stats)
      : inc_(profile, committee),
        ps_(committee, profile.voter_count()),
        f_(detail::zero_constraints(inc_)),
        h_(committee.size(), Rational(1)),
        active_(inc_.n, 1),
        critical_(inc_.k, 0),
        transient_(inc_.k, Rational(0)),
        stats_(stats) {}

  PriceSystem execute() {
    const long max_events = 1'000'000;
    long events = 0;
    while (std::any_of(h_.begin(), h_.end(), [](const Rational& x) { return sgn(x) > 0; })) {
      if (++events > max_events) throw Error(ErrorCode::Internal, "continuous Phragmén exceeded its event budget");
      plan_phase();
      step();
    }
    if (stats_) stats_->events += events;
    long residual_events = 0;
    detail::distribute_residual_in_place(inc_, ps_, f_, &residual_events);
    if (stats_) stats_->residual_events += residual_events;
    return std::move(ps_);
  }

 private:
  void plan_phase() {
    const int cap = inc_.n + inc_.k + 1;
    for (int round = 0;; ++round) {
      if (round > cap)
        throw Error(ErrorCode::Internal, "planning phase did not reach a fixed point in " + std::to_string(cap) + " rounds");
      if (stats_) ++stats_->planning_rounds;
      plan_ = stable_flow(inc_, active_, h_, transient_, stats_);
      bool changed = false;
      std::vector<char> blocked = blocking_mask(inc_, active_, critical_approvers(inc_, critical_), plan_.sets, f_);
      for (int i = 0; i < inc_.n; ++i)
        if (blocked[i]) {
          active_[i] = 0;
          changed = true;
        }
      // Judge every remaining candidate against the same mask so slot order cannot matter.
      std::vector<int> unsupported;
      for (int s = 0; s < inc_.k; ++s) {
        if (sgn(h_[s]) <= 0) continue;
        bool supported = std::any_of(inc_.slot_voters[s].begin(), inc_.slot_voters[s].end(),
                                     [&](int i) { return active_[i] != 0; });
        if (!supported) unsupported.push_back(s);
      }
      for (int s : unsupported) {
        critical_[s] = 1;
        for (int i : inc_.slot_voters[s]) active_[i] = 1;
        changed = true;
      }
      if (!changed) return;
    }
  }

  // Per-voter residual decay that keeps every pinned pair constraint at exactly 1.
  // Highest demanded decay level first; voters keep the first level assigned to them.
  void pinned_decay(std::vector<Pinned> pinned, std::vector<Rational>& rate) {
    if (pinned.empty()) return;
    if (stats_) ++stats_->pinned_events;
    std::vector<char> fixed(inc_.n, 0);
    std::vector<Rational> level(inc_.n, Rational(0));
    while (!pinned.empty()) {
      int best = -1;
      Rational best_level;
      std::vector<Pinned> keep;
      for (auto& p : pinned) {
        Rational need = p.growth, free_mass = 0;
        for (int j : p.voters) {
          if (fixed[j])
            need -= level[j] * ps_.residual(j);
          else
            free_mass += ps_.residual(j);
        }
        if (sgn(need) <= 0 || sgn(free_mass) == 0) continue;
        Rational lv = need / free_mass;
        keep.push_back(std::move(p));
        if (best < 0 || lv > best_level) {
          best = static_cast<int>(keep.size()) - 1;
          best_level = lv;
        }
      }
      if (best < 0) break;
      for (int j : keep[best].voters)
        if (!fixed[j]) {
          fixed[j] = 1;
          level[j] = best_level;
        }
      keep.erase(keep.begin() + best);
      pinned = std::move(keep);
    }
    for (int j = 0; j < inc_.n; ++j)
      if (fixed[j]) rate[j] -= level[j] * ps_.residual(j);
  }

  void step() {
    const int n = inc_.n, k = inc_.k, rows = inc_.rows;
    const auto& sets = plan_.sets;
    std::vector<Rational> share(n, Rational(0));
    std::vector<Rational> rate(n, Rational(0));
    for (int i = 0; i < n; ++i) {
      if (!active_[i]) continue;
      if (sets[i].empty())
        rate[i] = 1;
      else
        share[i] = Rational(1, static_cast<long>(sets[i].size()));
    }
    std::vector<Rational> a = funding_rates(inc_, plan_);

    std::vector<Pinned> pinned;
    for (int u = 0; u < rows; ++u)
      for (int s = 0; s < k; ++s) {
        if (f_.pair[inc_.sc.pair_index(u, s)] != 1) continue;
        Pinned p;
        for (int j : inc_.sc.overlap(u, s))
          if (contains_slot(sets[j], s)) p.growth += share[j];
        for (int j : inc_.row_voters[u]) {
          if (inc_.approves_slot(j, s)) continue;
          p.growth += rate[j];
          if (sgn(ps_.residual(j)) > 0) p.voters.push_back(j);
        }
        if (sgn(p.growth) > 0) pinned.push_back(std::move(p));
      }
    pinned_decay(std::move(pinned), rate);

    std::vector<Rational> slope_res(rows, Rational(0));
    std::vector<Rational> slope_pair(static_cast<size_t>(rows) * k, Rational(0));
    for (int j = 0; j < n; ++j) {
      if (sgn(rate[j]) != 0)
        for (int u : inc_.outsider_rows[j]) {
          slope_res[u] += rate[j];
          for (int s : inc_.member_slots[j]) slope_pair[inc_.sc.pair_index(u, s)] -= rate[j];
        }
      for (int s : sets[j])
        for (int u : inc_.outsider_rows[j]) slope_pair[inc_.sc.pair_index(u, s)] += share[j];
    }
    for (int u = 0; u < rows; ++u)
      for (int s = 0; s < k; ++s) slope_pair[inc_.sc.pair_index(u, s)] += slope_res[u];

    std::optional<Rational> dt;
    auto consider = [&](Rational v) {
      if (!dt || v < *dt) dt = std::move(v);
    };
    for (int s = 0; s < k; ++s)
      if (sgn(a[s]) > 0) consider(h_[s] / a[s]);
    auto gap = [&](const Rational& value, const Rational& slope, const char* what) {
      if (sgn(slope) <= 0) return;
      if (value >= 1) throw Error(ErrorCode::Internal, std::string("tight ") + what + " constraint keeps growing");
      consider((1 - value) / slope);
    };
    for (int u = 0; u < rows; ++u) {
      gap(f_.residual[u], slope_res[u], "residual");
      for (int s = 0; s < k; ++s) gap(f_.pair[inc_.sc.pair_index(u, s)], slope_pair[inc_.sc.pair_index(u, s)], "pair");
    }
    for (int j = 0; j < n; ++j)
      if (sgn(rate[j]) < 0) consider(ps_.residual(j) / -rate[j]);
    for (const auto& layer : plan_.layers)
      for (int e : layer.eligible) {
        if (std::binary_search(layer.members.begin(), layer.members.end(), e)) continue;
        for (int m : layer.members) {
          Rational num = h_[e] * layer.denom[m] - h_[m] * layer.denom[e];
          Rational den = a[e] * layer.denom[m] - a[m] * layer.denom[e];
          if (sgn(num) > 0 && sgn(den) > 0) consider(num / den);
        }
      }
    if (!dt) throw Error(ErrorCode::Internal, "no progress possible with remaining candidates");

    const Rational& t = *dt;
    for (int s = 0; s < k; ++s)
      if (sgn(a[s]) > 0) {
        h_[s] -= a[s] * t;
        if (sgn(h_[s]) < 0) throw Error(ErrorCode::Internal, "candidate overpaid", s);
        if (sgn(h_[s]) == 0) critical_[s] = 0;
      }
    for (int j = 0; j < n; ++j) {
      for (int s : sets[j]) ps_.payment_at(j, s) += share[j] * t;
      if (sgn(rate[j]) != 0) ps_.residuals()[j] += rate[j] * t;
    }
    for (int u = 0; u < rows; ++u) {
      if (sgn(slope_res[u]) != 0) f_.residual[u] += slope_res[u] * t;
      for (int s = 0; s < k; ++s) {
        const size_t idx = inc_.sc.pair_index(u, s);
        if (sgn(slope_pair[idx]) != 0) f_.pair[idx] += slope_pair[idx] * t;
      }
    }
  }

  Incidence inc_;
  PriceSystem ps_;
  ConstraintValues f_;
  std::vector<Rational> h_;
  std::vector<char> active_;
  std::vector<char> critical_;
  std::vector<Rational> transient_;
  Plan plan_;
  PhragmenStats* stats_;
};

std::vector<char> to_mask(int size, const std::vector<bool>& v) {
  std::vector<char> out(size, 0);
  for (int i = 0; i < size && i < static_cast<int>(v.size()); ++i) out[i] = v[i];
  return out;
}

}  // namespace

PriceSystem continuous_phragmen(const ApprovalProfile& profile, const Committee& committee, PhragmenStats* stats) {
  return Run(profile, committee, stats).execute();
}

SpendingSets money_flow(const ApprovalProfile& profile, const Committee& committee, const std::vector<bool>& active,
                        const std::vector<Rational>& remaining_cost) {
  Incidence inc(profile, committee);
  Plan plan = flow(inc, to_mask(inc.n, active), remaining_cost, {});
  SpendingSets out(inc.n);
  for (int i = 0; i < inc.n; ++i)
    for (int s : plan.sets[i]) out[i].push_back(committee.members()[s]);
  for (auto& set : out) std::sort(set.begin(), set.end());
  return out;
}

std::vector<int> check_blocking(const ApprovalProfile& profile, const std::vector<bool>& active,
                                const std::vector<int>& critical, const PriceSystem& ps, const SpendingSets& sets) {
  const Committee& committee = ps.committee();
  Incidence inc(profile, committee);
  std::vector<char> crit(inc.k, 0);
  for (int c : critical)
    if (committee.contains(c)) crit[committee.position(c)] = 1;
  std::vector<std::vector<int>> slot_sets(inc.n);
  for (int i = 0; i < inc.n && i < static_cast<int>(sets.size()); ++i) {
    for (int c : sets[i])
      if (committee.contains(c)) slot_sets[i].push_back(committee.position(c));
    std::sort(slot_sets[i].begin(), slot_sets[i].end());
  }
  ConstraintValues f = evaluate_constraints_serial(inc.sc, ps);
  std::vector<char> mark = blocking_mask(inc, to_mask(inc.n, active), critical_approvers(inc, crit), slot_sets, f);
  std::vector<int> out;
  for (int i = 0; i < inc.n; ++i)
    if (mark[i]) out.push_back(i);
  return out;
}

}  // namespace pricekit
