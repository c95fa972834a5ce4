#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pricekit/axioms.hpp"
#include "pricekit/gen.hpp"
#include "pricekit/price_system.hpp"

namespace pricekit {

// ---- rules by identifier ------------------------------------------------------

enum class RuleId { ContPhragmen, EqualSplit, ApproxPrice };

inline constexpr RuleId kAllRules[] = {RuleId::ContPhragmen, RuleId::EqualSplit, RuleId::ApproxPrice};

// "cont-phragmen" | "equal-split" | "approx-price"
const char* rule_id_name(RuleId rule);
std::optional<RuleId> parse_rule_id(std::string_view name);
PriceSystem run_rule(RuleId rule, const ApprovalProfile& profile, const Committee& committee);

// ---- audit ------------------------------------------------------------------

enum class Verdict { Pass, Fail, NotApplicable, SkippedTooLarge };
const char* verdict_name(Verdict v);  // pass | fail | not-applicable | skipped-too-large

struct AuditRecord {
  std::string axiom;
  Verdict verdict = Verdict::Pass;
  std::string witness;
};

// Identifiers accepted by run_audit, in report order.
const std::vector<std::string>& audit_axiom_ids();

// Throws OutOfRange on an unknown id; an empty selection yields an empty report.
std::vector<AuditRecord> run_audit(const ApprovalProfile& profile, const PriceSystem& ps,
                                   const std::vector<std::string>& axioms, const SearchLimits& limits = {});

// JSON array of {axiom, verdict, witness}.
std::string audit_report_json(const std::vector<AuditRecord>& records);

// Human-readable budgets, payments per candidate (largest first, at most `top`) and residuals.
std::string price_system_summary(const ApprovalProfile& profile, const PriceSystem& ps, int top = 5);

// ---- statistics ---------------------------------------------------------------

// Sample Pearson correlation. Throws LengthMismatch (or fewer than 2 points) and ConstantVector.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// min_i b_i / (|W| / n)
Rational min_budget_fraction(const PriceSystem& ps);

// ---- experiment harness -------------------------------------------------------

enum class Model { EuclideanVcr, Resampling };
const char* model_name(Model model);  // "euclidean-vcr" | "resampling"
std::optional<Model> parse_model(std::string_view name);

struct ExperimentConfig {
  Model model = Model::EuclideanVcr;
  long count = 200;
  int n_min = 10, n_max = 100;
  int m_min = 10, m_max = 100;
  int k_divisor = 2;        // k = max(1, floor(m / k_divisor)) unless k is set
  std::optional<int> k;
  std::vector<RuleId> rules{std::begin(kAllRules), std::end(kAllRules)};
  MesCompletion mes_completion = MesCompletion::ApprovalScore;  // recovery committees
  std::uint64_t seed = 0;
  int workers = 0;          // 0: OpenMP default; PRICEKIT_THREADS caps either way
};

int committee_size(const ExperimentConfig& config, int m);
// Requested workers capped by PRICEKIT_THREADS; at least 1.
int effective_workers(int requested);

struct SampledInstance {
  long id = 0;
  std::uint64_t seed = 0;  // substream seed; regenerates this instance alone
  int k = 0;
  EuclideanInstance euclidean;  // points are empty for the resampling model
  double p = 0, phi = 0;        // resampling parameters
};

// Instance `id` of the configured model, drawn from substream `id` of the seed.
SampledInstance sample_instance(const ExperimentConfig& config, long id);
// Uniform k-subset from the instance's own follow-up stream; the EJR experiment's committee.
Committee sample_committee(const SampledInstance& instance);

struct ExperimentRow {
  long instance = 0;
  int n = 0, m = 0, k = 0;
  RuleId rule = RuleId::ContPhragmen;
  std::optional<Rational> min_budget_fraction;
  std::optional<Rational> ejr_alpha;
  std::optional<double> pcc;  // recovery only; empty when budgets are constant
};

struct ExperimentFailure {
  long instance = 0;
  std::string rule;  // empty for instance-level failures
  std::string message;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // ordered by instance, then by rule order in the config
  std::vector<ExperimentFailure> failures;
};

ExperimentResult run_ejr_experiment(const ExperimentConfig& config);
ExperimentResult run_ejr_experiment_serial(const ExperimentConfig& config);
ExperimentResult run_recovery_experiment(const ExperimentConfig& config);
ExperimentResult run_recovery_experiment_serial(const ExperimentConfig& config);

// Header "instance,n,m,k,rule,min_budget_fraction,ejr_alpha[,pcc]"; 12 significant digits.
std::string experiment_csv(const std::vector<ExperimentRow>& rows, bool with_pcc);

struct RecoverySummary {
  RuleId rule = RuleId::ContPhragmen;
  long instances = 0;  // rows for this rule
  long undefined = 0;  // constant budgets
  double above_04 = 0, above_07 = 0, above_09 = 0;  // fractions of `instances` with PCC above the threshold
};

std::vector<RecoverySummary> summarize_recovery(const ExperimentResult& result, const std::vector<RuleId>& rules);
// "rule,instances,undefined,pcc_gt_0.4,pcc_gt_0.7,pcc_gt_0.9"
std::string recovery_summary_csv(const std::vector<RecoverySummary>& summary);

}  // namespace pricekit
