#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "pricekit/cli.hpp"
#include "pricekit/error.hpp"
#include "pricekit/optimize.hpp"
#include "pricekit/rules.hpp"

namespace pricekit {

const char* rule_id_name(RuleId rule) {
  switch (rule) {
    case RuleId::ContPhragmen: return "cont-phragmen";
    case RuleId::EqualSplit: return "equal-split";
    case RuleId::ApproxPrice: return "approx-price";
  }
  return "?";
}

std::optional<RuleId> parse_rule_id(std::string_view name) {
  for (RuleId r : kAllRules)
    if (name == rule_id_name(r)) return r;
  return std::nullopt;
}

PriceSystem run_rule(RuleId rule, const ApprovalProfile& profile, const Committee& committee) {
  switch (rule) {
    case RuleId::ContPhragmen: return continuous_phragmen(profile, committee);
    case RuleId::EqualSplit: return equal_split(profile, committee);
    case RuleId::ApproxPrice: return approximate_priceability(profile, committee);
  }
  throw Error(ErrorCode::Internal, "unknown rule");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::SkippedTooLarge: return "skipped-too-large";
  }
  return "?";
}

namespace {

using Check = std::function<AuditRecord(const ApprovalProfile&, const PriceSystem&, const SearchLimits&)>;

AuditRecord from(const CheckResult& r) { return {"", r.ok ? Verdict::Pass : Verdict::Fail, r.witness}; }

AuditRecord not_applicable(std::string why) { return {"", Verdict::NotApplicable, std::move(why)}; }

// Budget-uniformity demanded whenever the precondition holds.
AuditRecord uniform_when(bool precondition, const PriceSystem& ps, const char* missing) {
  if (!precondition) return not_applicable(missing);
  if (is_budget_uniform(ps)) return {};
  auto b = budgets(ps);
  auto [lo, hi] = std::minmax_element(b.begin(), b.end());
  return {"", Verdict::Fail,
          "budgets range from " + to_fraction_string(*lo) + " (voter " + std::to_string(lo - b.begin()) + ") to " +
              to_fraction_string(*hi) + " (voter " + std::to_string(hi - b.begin()) + ")"};
}

const std::vector<std::pair<std::string, Check>>& registry() {
  static const std::vector<std::pair<std::string, Check>> checks = {
      {"valid",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) {
         auto v = validate_price_system(a, ps);
         return v ? AuditRecord{"", Verdict::Fail, v->clause + ": " + v->message} : AuditRecord{};
       }},
      {"residual-stability",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) { return from(check_residual_stability(a, ps)); }},
      {"1-stability",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) { return from(check_one_stability(a, ps)); }},
      {"weak-stability",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) {
         return from(check_weak_stability_bruteforce(a, ps));
       }},
      {"stability",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) { return from(check_stability(a, ps)); }},
      {"equal-treatment",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) { return from(check_equal_treatment(a, ps)); }},
      {"symmetry",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits& l) { return from(check_symmetry(a, ps, l)); }},
      {"laminar-coherence",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) {
         if (!is_laminar(a)) return not_applicable("profile is not laminar");
         return from(check_laminar_coherence(a, ps));
       }},
      {"budget-averaging",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) {
         if (!is_one_stable(a, ps)) return not_applicable("price system is not 1-stable");
         return from(check_budget_averaging(a, ps));
       }},
      {"sw-payment-responsiveness",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) {
         auto r = check_single_winner_payment_responsiveness(a, ps);
         return r ? from(*r) : not_applicable("needs a single member that is not an approval winner");
       }},
      {"laminar-proportional-uniformity",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) {
         bool pre = is_laminar(a) && is_laminar_proportional(a, ps.committee());
         return uniform_when(pre, ps, "committee is not laminar-proportional");
       }},
      {"perfect-coverage-uniformity",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) {
         return uniform_when(provides_perfect_coverage(a, ps.committee()), ps, "committee lacks perfect coverage");
       }},
      {"perfect-symmetry-uniformity",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits& l) {
         return uniform_when(is_perfect_symmetry_instance(a, ps.committee(), l), ps, "not a perfect-symmetry instance");
       }},
      {"1-unproportional-responsiveness",
       [](const ApprovalProfile& a, const PriceSystem& ps, const SearchLimits&) {
         if (!is_laminar(a) || max_laminar_unproportionality(a, ps.committee()) < 1)
           return not_applicable("committee is not 1-laminar-unproportional");
         if (!is_budget_uniform(ps)) return AuditRecord{};
         return AuditRecord{"", Verdict::Fail, "budgets are uniform"};
       }},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& audit_axiom_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, check] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

std::vector<AuditRecord> run_audit(const ApprovalProfile& profile, const PriceSystem& ps,
                                   const std::vector<std::string>& axioms, const SearchLimits& limits) {
  if (ps.voter_count() != profile.voter_count() || ps.committee().candidate_count() != profile.candidate_count())
    throw Error(ErrorCode::PreconditionViolated, "price system does not match the profile's voters and candidates");
  std::vector<AuditRecord> out;
  for (const auto& id : axioms) {
    auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == id; });
    if (it == registry().end()) throw Error(ErrorCode::OutOfRange, "unknown axiom '" + id + "'");
    AuditRecord rec;
    try {
      rec = it->second(profile, ps, limits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InstanceTooLarge) throw;
      rec = {"", Verdict::SkippedTooLarge, e.what()};
    }
    rec.axiom = id;
    out.push_back(std::move(rec));
  }
  return out;
}

std::string audit_report_json(const std::vector<AuditRecord>& records) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : records) a.push_back({{"axiom", r.axiom}, {"verdict", verdict_name(r.verdict)}, {"witness", r.witness}});
  return a.dump(1) + "\n";
}

std::string price_system_summary(const ApprovalProfile& profile, const PriceSystem& ps, int top) {
  std::ostringstream out;
  const Committee& w = ps.committee();
  const int n = ps.voter_count();
  Rational fair(w.size(), n);
  fair.canonicalize();
  out << "committee:";
  for (int c : w.members()) out << ' ' << c;
  out << "\nuniform budget |W|/n = " << to_fraction_string(fair) << "\n\nbudgets (voter: budget = payments + residual)\n";
  for (int i = 0; i < n; ++i)
    out << "  " << i << ": " << to_fraction_string(ps.budget(i)) << " = " << to_fraction_string(ps.total_payment(i))
        << " + " << to_fraction_string(ps.residual(i)) << "\n";
  out << "\ntop payments per candidate\n";
  for (int s = 0; s < w.size(); ++s) {
    const int c = w.members()[s];
    std::vector<int> payers;
    for (int i : profile.supporters(c))
      if (sgn(ps.payment_at(i, s)) > 0) payers.push_back(i);
    std::stable_sort(payers.begin(), payers.end(),
                     [&](int x, int y) { return ps.payment_at(x, s) > ps.payment_at(y, s); });
    out << "  " << c << ":";
    for (int t = 0; t < std::min<int>(top, static_cast<int>(payers.size())); ++t)
      out << " v" << payers[t] << "=" << to_fraction_string(ps.payment_at(payers[t], s));
    if (static_cast<int>(payers.size()) > top) out << " (+" << payers.size() - top << " more)";
    out << "\n";
  }
  out << "\nresiduals\n";
  bool any = false;
  for (int i = 0; i < n; ++i)
    if (sgn(ps.residual(i)) != 0) {
      out << "  " << i << ": " << to_fraction_string(ps.residual(i)) << "\n";
      any = true;
    }
  if (!any) out << "  none\n";
  return out.str();
}

}  // namespace pricekit
