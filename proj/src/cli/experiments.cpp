#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pricekit/cli.hpp"
#include "pricekit/error.hpp"

namespace pricekit {

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::LengthMismatch, "vectors differ in length");
  if (xs.size() < 2) throw Error(ErrorCode::LengthMismatch, "need at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (sxx == 0 || syy == 0) throw Error(ErrorCode::ConstantVector, "a vector is constant");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Rational min_budget_fraction(const PriceSystem& ps) {
  auto b = budgets(ps);
  Rational lo = *std::min_element(b.begin(), b.end());
  return Rational(lo * ps.voter_count() / ps.committee().size());
}

const char* model_name(Model model) { return model == Model::EuclideanVcr ? "euclidean-vcr" : "resampling"; }

std::optional<Model> parse_model(std::string_view name) {
  if (name == "euclidean-vcr") return Model::EuclideanVcr;
  if (name == "resampling") return Model::Resampling;
  return std::nullopt;
}

int committee_size(const ExperimentConfig& config, int m) {
  if (config.k) return *config.k;
  return std::max(1, m / config.k_divisor);
}

int effective_workers(int requested) {
#ifdef _OPENMP
  int w = requested > 0 ? requested : omp_get_max_threads();
#else
  int w = 1;
  (void)requested;
#endif
  if (const char* cap = std::getenv("PRICEKIT_THREADS")) {
    int c = std::atoi(cap);
    if (c > 0) w = std::min(w, c);
  }
  return std::max(1, w);
}

SampledInstance sample_instance(const ExperimentConfig& config, long id) {
  if (config.n_min < 1 || config.n_min > config.n_max || config.m_min < 1 || config.m_min > config.m_max)
    throw Error(ErrorCode::OutOfRange, "empty n or m range");
  SeededRng rng = SeededRng(config.seed).substream(static_cast<std::uint64_t>(id));
  SampledInstance out;
  out.id = id;
  out.seed = rng.seed();
  const int n = config.n_min + static_cast<int>(rng.below(config.n_max - config.n_min + 1));
  const int m = config.m_min + static_cast<int>(rng.below(config.m_max - config.m_min + 1));
  out.k = committee_size(config, m);
  if (config.model == Model::EuclideanVcr) {
    out.euclidean = gen_euclidean_vcr(n, m, rng);
  } else {
    // Some (p, phi) cannot cover every candidate; redraw the parameters from the same stream.
    for (int draw = 1;; ++draw) {
      out.p = rng.uniform01();
      out.phi = rng.uniform01();
      try {
        out.euclidean.profile = gen_resampling(n, m, out.p, out.phi, rng);
        out.euclidean.attempts = draw;
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ResampleLimitExceeded || draw == 100) throw;
      }
    }
  }
  return out;
}

namespace {

// Everything after sampling draws from a second substream so adding draws there never shifts instances.
SeededRng task_rng(const SampledInstance& inst) { return SeededRng(inst.seed).substream(1); }

}  // namespace

Committee sample_committee(const SampledInstance& instance) {
  SeededRng rng = task_rng(instance);
  return random_committee(instance.euclidean.profile, instance.k, rng);
}

namespace {

struct InstanceOutput {
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentFailure> failures;
};

ExperimentRow row_header(const SampledInstance& inst, RuleId rule) {
  ExperimentRow row;
  row.instance = inst.id;
  row.n = inst.euclidean.profile.voter_count();
  row.m = inst.euclidean.profile.candidate_count();
  row.k = inst.k;
  row.rule = rule;
  return row;
}

InstanceOutput ejr_instance(const ExperimentConfig& config, long id) {
  InstanceOutput out;
  SampledInstance inst;
  Committee committee;
  Rational alpha;
  try {
    inst = sample_instance(config, id);
    committee = sample_committee(inst);
    alpha = min_alpha_ejr_plus(inst.euclidean.profile, committee);
  } catch (const std::exception& e) {
    out.failures.push_back({id, "", e.what()});
    return out;
  }
  for (RuleId rule : config.rules) {
    ExperimentRow row = row_header(inst, rule);
    row.ejr_alpha = alpha;
    try {
      row.min_budget_fraction = min_budget_fraction(run_rule(rule, inst.euclidean.profile, committee));
    } catch (const std::exception& e) {
      out.failures.push_back({id, rule_id_name(rule), e.what()});
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

InstanceOutput recovery_instance(const ExperimentConfig& config, long id) {
  ExperimentConfig euclidean = config;
  euclidean.model = Model::EuclideanVcr;
  InstanceOutput out;
  SampledInstance inst;
  Committee committee;
  std::vector<double> truth;
  Rational alpha;
  try {
    inst = sample_instance(euclidean, id);
    SeededRng rng = task_rng(inst);
    const ApprovalProfile& a = inst.euclidean.profile;
    auto weights = gen_spatial_weights(inst.euclidean.voters, rng);
    for (const auto& w : weights) truth.push_back(w.get_d());
    ApprovalProfile weighted = build_profile(a.voter_count(), a.candidate_count(), a.all_approvals(), weights);
    committee = weighted_mes(weighted, inst.k, config.mes_completion);
    alpha = min_alpha_ejr_plus(a, committee);
  } catch (const std::exception& e) {
    out.failures.push_back({id, "", e.what()});
    return out;
  }
  for (RuleId rule : config.rules) {
    ExperimentRow row = row_header(inst, rule);
    row.ejr_alpha = alpha;
    try {
      PriceSystem ps = run_rule(rule, inst.euclidean.profile, committee);
      row.min_budget_fraction = min_budget_fraction(ps);
      std::vector<double> b;
      for (const auto& x : budgets(ps)) b.push_back(x.get_d());
      try {
        row.pcc = pearson(truth, b);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ConstantVector) throw;
      }
    } catch (const std::exception& e) {
      out.failures.push_back({id, rule_id_name(rule), e.what()});
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

using InstanceFn = InstanceOutput (*)(const ExperimentConfig&, long);

ExperimentResult collect(std::vector<InstanceOutput>& per) {
  ExperimentResult result;
  for (auto& o : per) {
    for (auto& r : o.rows) result.rows.push_back(std::move(r));
    for (auto& f : o.failures) result.failures.push_back(std::move(f));
  }
  return result;
}

ExperimentResult run_parallel(const ExperimentConfig& config, InstanceFn fn) {
  std::vector<InstanceOutput> per(std::max(0L, config.count));
  const long count = static_cast<long>(per.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(effective_workers(config.workers))
#endif
  for (long id = 0; id < count; ++id) per[id] = fn(config, id);
  return collect(per);
}

ExperimentResult run_serial(const ExperimentConfig& config, InstanceFn fn) {
  std::vector<InstanceOutput> per(std::max(0L, config.count));
  for (long id = 0; id < static_cast<long>(per.size()); ++id) per[id] = fn(config, id);
  return collect(per);
}

}  // namespace

ExperimentResult run_ejr_experiment(const ExperimentConfig& config) { return run_parallel(config, ejr_instance); }
ExperimentResult run_ejr_experiment_serial(const ExperimentConfig& config) { return run_serial(config, ejr_instance); }
ExperimentResult run_recovery_experiment(const ExperimentConfig& config) { return run_parallel(config, recovery_instance); }
ExperimentResult run_recovery_experiment_serial(const ExperimentConfig& config) {
  return run_serial(config, recovery_instance);
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows, bool with_pcc) {
  std::ostringstream out;
  out << "instance,n,m,k,rule,min_budget_fraction,ejr_alpha" << (with_pcc ? ",pcc" : "") << "\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << r.m << ',' << r.k << ',' << rule_id_name(r.rule) << ','
        << (r.min_budget_fraction ? to_decimal_string(*r.min_budget_fraction, 12) : "") << ','
        << (r.ejr_alpha ? to_decimal_string(*r.ejr_alpha, 12) : "");
    if (with_pcc) {
      out << ',';
      if (r.pcc) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", *r.pcc);
        out << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

std::vector<RecoverySummary> summarize_recovery(const ExperimentResult& result, const std::vector<RuleId>& rules) {
  std::vector<RecoverySummary> out;
  for (RuleId rule : rules) {
    RecoverySummary s;
    s.rule = rule;
    long a4 = 0, a7 = 0, a9 = 0;
    for (const auto& r : result.rows) {
      if (r.rule != rule || !r.min_budget_fraction) continue;
      ++s.instances;
      if (!r.pcc) {
        ++s.undefined;
        continue;
      }
      a4 += *r.pcc > 0.4;
      a7 += *r.pcc > 0.7;
      a9 += *r.pcc > 0.9;
    }
    if (s.instances > 0) {
      s.above_04 = static_cast<double>(a4) / s.instances;
      s.above_07 = static_cast<double>(a7) / s.instances;
      s.above_09 = static_cast<double>(a9) / s.instances;
    }
    out.push_back(s);
  }
  return out;
}

std::string recovery_summary_csv(const std::vector<RecoverySummary>& summary) {
  std::ostringstream out;
  out << "rule,instances,undefined,pcc_gt_0.4,pcc_gt_0.7,pcc_gt_0.9\n";
  for (const auto& s : summary) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s,%ld,%ld,%.4f,%.4f,%.4f\n", rule_id_name(s.rule), s.instances, s.undefined,
                  s.above_04, s.above_07, s.above_09);
    out << buf;
  }
  return out.str();
}

}  // namespace pricekit
