#include "pricekit/constraints.hpp"

namespace pricekit {

StabilityConstraints::StabilityConstraints(const ApprovalProfile& profile, const Committee& committee)
    : profile_(&profile), committee_(&committee) {
  overlap_.resize(static_cast<size_t>(outsider_count()) * member_count());
  for (int u = 0; u < outsider_count(); ++u)
    for (int s = 0; s < member_count(); ++s) {
      auto& list = overlap_[pair_index(u, s)];
      for (int i : profile.supporters(outsider(u)))
        if (profile.approves(i, member(s))) list.push_back(i);
    }
}

std::vector<int> StabilityConstraints::exclusive(int u, int s) const {
  std::vector<int> out;
  int c2 = member(s);
  for (int i : profile_->supporters(outsider(u)))
    if (!profile_->approves(i, c2)) out.push_back(i);
  return out;
}

namespace {

void evaluate_row(const StabilityConstraints& sc, const PriceSystem& ps, int u, ConstraintValues& out) {
  Rational res = 0;
  for (int i : sc.profile().supporters(sc.outsider(u))) res += ps.residual(i);
  for (int s = 0; s < sc.member_count(); ++s) {
    Rational v = res;
    for (int i : sc.overlap(u, s)) {
      v -= ps.residual(i);
      v += ps.payment_at(i, s);
    }
    out.pair[sc.pair_index(u, s)] = std::move(v);
  }
  out.residual[u] = std::move(res);
}

ConstraintValues allocate(const StabilityConstraints& sc) {
  ConstraintValues out;
  out.residual.resize(sc.outsider_count());
  out.pair.resize(static_cast<size_t>(sc.outsider_count()) * sc.member_count());
  return out;
}

}  // namespace

ConstraintValues evaluate_constraints_serial(const StabilityConstraints& sc, const PriceSystem& ps) {
  ConstraintValues out = allocate(sc);
  for (int u = 0; u < sc.outsider_count(); ++u) evaluate_row(sc, ps, u, out);
  return out;
}

ConstraintValues evaluate_constraints(const StabilityConstraints& sc, const PriceSystem& ps) {
  ConstraintValues out = allocate(sc);
  const int rows = sc.outsider_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (rows * sc.member_count() > 256)
#endif
  for (int u = 0; u < rows; ++u) evaluate_row(sc, ps, u, out);
  return out;
}

}  // namespace pricekit
