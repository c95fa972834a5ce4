#include <algorithm>
#include <optional>

#include "incidence.hpp"
#include "pricekit/rules.hpp"

namespace pricekit {
namespace detail {

Incidence::Incidence(const ApprovalProfile& p, const Committee& w)
    : profile(&p), committee(&w), sc(p, w), n(p.voter_count()), k(w.size()), rows(static_cast<int>(w.outsiders().size())) {
  member_slots.resize(n);
  outsider_rows.resize(n);
  slot_voters.resize(k);
  row_voters.resize(rows);
  std::vector<int> row_of(p.candidate_count(), -1);
  for (int u = 0; u < rows; ++u) row_of[w.outsiders()[u]] = u;
  for (int i = 0; i < n; ++i)
    for (int c : p.approvals(i)) {
      if (w.contains(c))
        member_slots[i].push_back(w.position(c));
      else
        outsider_rows[i].push_back(row_of[c]);
    }
  for (auto& slots : member_slots) std::sort(slots.begin(), slots.end());
  for (int s = 0; s < k; ++s) slot_voters[s] = p.supporters(w.members()[s]);
  for (int u = 0; u < rows; ++u) row_voters[u] = p.supporters(w.outsiders()[u]);
}

ConstraintValues zero_constraints(const Incidence& inc) {
  ConstraintValues f;
  f.residual.assign(inc.rows, Rational(0));
  f.pair.assign(static_cast<size_t>(inc.rows) * inc.k, Rational(0));
  return f;
}

void distribute_residual_in_place(const Incidence& inc, PriceSystem& ps, ConstraintValues& f, long* events) {
  const int n = inc.n, k = inc.k;
  std::vector<Rational> b(n);
  for (int i = 0; i < n; ++i) b[i] = ps.budget(i);
  if (n == 0) return;
  const Rational max_b = *std::max_element(b.begin(), b.end());

  std::vector<char> active(n, 1);
  std::vector<int> res_count(inc.rows);
  std::vector<int> pair_count(static_cast<size_t>(inc.rows) * k);
  while (true) {
    for (int u = 0; u < inc.rows; ++u) {
      if (f.residual[u] == 1)
        for (int i : inc.row_voters[u]) active[i] = 0;
      for (int s = 0; s < k; ++s)
        if (f.pair[inc.sc.pair_index(u, s)] == 1)
          for (int i : inc.row_voters[u])
            if (!inc.approves_slot(i, s)) active[i] = 0;
    }

    std::optional<Rational> min_b;
    for (int i = 0; i < n; ++i)
      if (active[i] && (!min_b || b[i] < *min_b)) min_b = b[i];
    if (!min_b || *min_b >= max_b) break;

    std::vector<int> growers;
    Rational next = max_b;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (b[i] == *min_b)
        growers.push_back(i);
      else if (b[i] < next)
        next = b[i];
    }
    Rational dt = next - *min_b;

    std::fill(res_count.begin(), res_count.end(), 0);
    std::fill(pair_count.begin(), pair_count.end(), 0);
    for (int j : growers)
      for (int u : inc.outsider_rows[j]) {
        ++res_count[u];
        for (int s : inc.member_slots[j]) --pair_count[inc.sc.pair_index(u, s)];
      }
    for (int u = 0; u < inc.rows; ++u) {
      if (res_count[u] == 0) continue;
      Rational gap = (1 - f.residual[u]) / res_count[u];
      if (gap < dt) dt = gap;
      for (int s = 0; s < k; ++s) {
        int slope = res_count[u] + pair_count[inc.sc.pair_index(u, s)];
        if (slope <= 0) continue;
        Rational pgap = (1 - f.pair[inc.sc.pair_index(u, s)]) / slope;
        if (pgap < dt) dt = pgap;
      }
    }

    for (int j : growers) {
      ps.residuals()[j] += dt;
      b[j] += dt;
    }
    for (int u = 0; u < inc.rows; ++u) {
      if (res_count[u] == 0) continue;
      f.residual[u] += res_count[u] * dt;
      for (int s = 0; s < k; ++s) {
        int slope = res_count[u] + pair_count[inc.sc.pair_index(u, s)];
        if (slope != 0) f.pair[inc.sc.pair_index(u, s)] += slope * dt;
      }
    }
    if (events) ++*events;
  }
}

}  // namespace detail

PriceSystem distribute_residual(const ApprovalProfile& profile, PriceSystem ps) {
  Committee committee = ps.committee();
  detail::Incidence inc(profile, committee);
  ConstraintValues f = evaluate_constraints_serial(inc.sc, ps);
  detail::distribute_residual_in_place(inc, ps, f);
  return ps;
}

PriceSystem equal_split(const ApprovalProfile& profile, const Committee& committee) {
  PriceSystem ps(committee, profile.voter_count());
  for (int s = 0; s < committee.size(); ++s) {
    const auto& supporters = profile.supporters(committee.members()[s]);
    Rational share(1, static_cast<long>(supporters.size()));
    for (int i : supporters) ps.payment_at(i, s) = share;
  }
  return distribute_residual(profile, std::move(ps));
}

}  // namespace pricekit
