#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pricekit/cli.hpp"
#include "pricekit/error.hpp"
#include "pricekit/io.hpp"

namespace fs = std::filesystem;
using namespace pricekit;

namespace {

enum Exit { kOk = 0, kAxiomFail = 1, kUsage = 2, kStrictSkip = 3, kIo = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SamplingFlags {
  std::string model = "euclidean-vcr";
  long count = 200;
  std::uint64_t seed = 0;
  int n_min = 10, n_max = 100, m_min = 10, m_max = 100;
  std::string k_frac = "1/2";
  int k = 0;
};

void add_sampling_flags(CLI::App* app, SamplingFlags& f) {
  app->add_option("--count", f.count, "Number of instances")->capture_default_str()->check(CLI::NonNegativeNumber);
  app->add_option("--seed", f.seed, "Root seed")->capture_default_str();
  app->add_option("--n-min", f.n_min, "Smallest voter count")->capture_default_str();
  app->add_option("--n-max", f.n_max, "Largest voter count")->capture_default_str();
  app->add_option("--m-min", f.m_min, "Smallest candidate count")->capture_default_str();
  app->add_option("--m-max", f.m_max, "Largest candidate count")->capture_default_str();
  app->add_option("--k-frac", f.k_frac, "Committee size floor(m * k-frac): 1/8, 1/4 or 1/2")->capture_default_str();
  app->add_option("--k", f.k, "Explicit committee size (overrides --k-frac)");
}

ExperimentConfig to_config(const SamplingFlags& f) {
  ExperimentConfig c;
  auto model = parse_model(f.model);
  if (!model) throw UsageError("unknown model '" + f.model + "' (euclidean-vcr | resampling)");
  c.model = *model;
  c.count = f.count;
  c.seed = f.seed;
  c.n_min = f.n_min;
  c.n_max = f.n_max;
  c.m_min = f.m_min;
  c.m_max = f.m_max;
  if (f.n_min < 1 || f.n_min > f.n_max || f.m_min < 1 || f.m_min > f.m_max) throw UsageError("empty n or m range");
  if (f.k_frac == "1/8") c.k_divisor = 8;
  else if (f.k_frac == "1/4") c.k_divisor = 4;
  else if (f.k_frac == "1/2") c.k_divisor = 2;
  else throw UsageError("--k-frac must be 1/8, 1/4 or 1/2");
  if (f.k > 0) {
    if (f.k > f.m_min) throw UsageError("--k exceeds the smallest candidate count");
    c.k = f.k;
  }
  return c;
}

std::vector<int> parse_committee(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("committee must be comma-separated candidate indices, got '" + item + "'");
    }
  }
  return out;
}

std::vector<RuleId> parse_rules(const std::vector<std::string>& names) {
  std::vector<RuleId> out;
  for (const auto& n : names) {
    auto r = parse_rule_id(n);
    if (!r) throw UsageError("unknown rule '" + n + "' (cont-phragmen | equal-split | approx-price)");
    out.push_back(*r);
  }
  return out;
}

std::string instance_file(long id) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "instance_%06ld.json", id);
  return buf;
}

int cmd_gen(const SamplingFlags& f, const std::string& out_dir) {
  ExperimentConfig c = to_config(f);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out_dir + ": " + ec.message());
  nlohmann::ordered_json manifest;
  manifest["model"] = f.model;
  manifest["seed"] = f.seed;
  manifest["count"] = f.count;
  manifest["k_frac"] = f.k_frac;
  if (c.k) manifest["k"] = *c.k;
  manifest["instances"] = nlohmann::ordered_json::array();
  for (long id = 0; id < c.count; ++id) {
    SampledInstance inst = sample_instance(c, id);
    ProfileDocument doc{inst.euclidean.profile, std::nullopt, std::nullopt, std::nullopt, inst.seed};
    if (c.model == Model::EuclideanVcr) {
      doc.voter_points = inst.euclidean.voters;
      doc.candidate_points = inst.euclidean.candidates;
      doc.radius = inst.euclidean.radius;
    }
    const std::string name = instance_file(id);
    write_file((fs::path(out_dir) / name).string(), write_profile_json(doc));
    nlohmann::ordered_json entry = {{"instance", id},
                                    {"file", name},
                                    {"n", inst.euclidean.profile.voter_count()},
                                    {"m", inst.euclidean.profile.candidate_count()},
                                    {"k", inst.k},
                                    {"committee", sample_committee(inst).members()}};
    if (c.model == Model::Resampling) {
      entry["p"] = inst.p;
      entry["phi"] = inst.phi;
    }
    manifest["instances"].push_back(std::move(entry));
  }
  write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(1) + "\n");
  std::cout << "wrote " << c.count << " instance(s) to " << out_dir << "\n";
  return kOk;
}

int cmd_explain(const std::string& rule_name, const std::string& profile_path, const std::string& committee_text,
                const std::string& out_path, int top) {
  auto rule = parse_rule_id(rule_name);
  if (!rule) throw UsageError("unknown rule '" + rule_name + "' (cont-phragmen | equal-split | approx-price)");
  ProfileDocument doc = read_profile_json(read_file(profile_path));
  Committee committee;
  try {
    committee = make_committee(doc.profile, parse_committee(committee_text));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  PriceSystem ps = run_rule(*rule, doc.profile, committee);
  if (!out_path.empty()) write_file(out_path, write_price_system(ps));
  std::cout << "rule: " << rule_id_name(*rule) << "\n" << price_system_summary(doc.profile, ps, top);
  if (auto v = validate_price_system(doc.profile, ps)) {
    std::cerr << "invalid price system: " << v->clause << ": " << v->message << "\n";
    return kAxiomFail;
  }
  return kOk;
}

int cmd_audit(const std::string& profile_path, const std::string& ps_path, std::vector<std::string> axioms, bool all,
              bool strict, const std::string& json_path, SearchLimits limits) {
  ProfileDocument doc = read_profile_json(read_file(profile_path));
  PriceSystem ps = read_price_system(read_file(ps_path));
  if (all) axioms = audit_axiom_ids();
  std::vector<AuditRecord> report;
  try {
    report = run_audit(doc.profile, ps, axioms, limits);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OutOfRange || e.code() == ErrorCode::PreconditionViolated) throw UsageError(e.what());
    throw;
  }
  bool failed = false, skipped = false;
  for (const auto& r : report) {
    std::cout << r.axiom << ": " << verdict_name(r.verdict);
    if (!r.witness.empty()) std::cout << "  (" << r.witness << ")";
    std::cout << "\n";
    failed = failed || r.verdict == Verdict::Fail;
    skipped = skipped || r.verdict == Verdict::SkippedTooLarge;
  }
  if (report.empty()) std::cout << "no axioms selected\n";
  if (!json_path.empty()) write_file(json_path, audit_report_json(report));
  if (failed) return kAxiomFail;
  if (strict && skipped) return kStrictSkip;
  return kOk;
}

int cmd_experiment(bool recovery, const SamplingFlags& f, const std::vector<std::string>& rules, int workers,
                   bool serial, const std::string& out_path, const std::string& summary_path,
                   MesCompletion completion = MesCompletion::ApprovalScore) {
  ExperimentConfig c = to_config(f);
  c.mes_completion = completion;
  c.rules = parse_rules(rules);
  c.workers = workers;
  ExperimentResult r = recovery ? (serial ? run_recovery_experiment_serial(c) : run_recovery_experiment(c))
                                : (serial ? run_ejr_experiment_serial(c) : run_ejr_experiment(c));
  const std::string csv = experiment_csv(r.rows, recovery);
  if (out_path.empty()) std::cout << csv;
  else write_file(out_path, csv);
  for (const auto& fail : r.failures)
    std::cerr << "instance " << fail.instance << (fail.rule.empty() ? "" : " rule " + fail.rule) << ": " << fail.message
              << "\n";
  if (recovery) {
    const std::string summary = recovery_summary_csv(summarize_recovery(r, c.rules));
    if (!summary_path.empty()) write_file(summary_path, summary);
    (out_path.empty() ? std::cerr : std::cout) << summary;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Price-system explanations for approval-based committees"};
  app.require_subcommand(1);

  SamplingFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write sampled profiles and a manifest");
  gen->add_option("model", gen_flags.model, "euclidean-vcr | resampling")->required();
  add_sampling_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "Output directory")->required();

  std::string rule, profile_path, committee_text, explain_out;
  int top = 5;
  auto* explain = app.add_subcommand("explain", "Compute a price system for a committee");
  explain->add_option("rule", rule, "cont-phragmen | equal-split | approx-price")->required();
  explain->add_option("--profile", profile_path, "Profile JSON")->required();
  explain->add_option("--committee", committee_text, "Comma-separated candidate indices (0-based)")->required();
  explain->add_option("--out", explain_out, "Price-system JSON output");
  explain->add_option("--top", top, "Payments listed per candidate")->capture_default_str();

  std::string audit_profile, audit_ps, audit_json;
  std::vector<std::string> axioms;
  bool all = false, strict = false;
  SearchLimits limits;
  auto* audit = app.add_subcommand("audit", "Check axioms on a price system");
  audit->add_option("--profile", audit_profile, "Profile JSON")->required();
  audit->add_option("--ps", audit_ps, "Price-system JSON")->required();
  audit->add_option("--axiom", axioms, "Axiom id (repeatable)")->check(CLI::IsMember(audit_axiom_ids()));
  audit->add_flag("--all", all, "Check every axiom");
  audit->add_flag("--strict", strict, "Exit 3 when a check is skipped as too large");
  audit->add_option("--json", audit_json, "Write the report as JSON");
  audit->add_option("--max-voters", limits.max_voters, "Voter guard for exhaustive checks")->capture_default_str();
  audit->add_option("--max-candidates", limits.max_candidates, "Candidate guard for exhaustive checks")
      ->capture_default_str();

  auto* experiment = app.add_subcommand("experiment", "Run an experiment and write CSV");
  experiment->require_subcommand(1);
  SamplingFlags exp_flags;
  std::vector<std::string> rules{"cont-phragmen", "equal-split", "approx-price"};
  int workers = 0;
  bool serial = false;
  std::string exp_out, summary_out;
  auto add_experiment = [&](const char* name, const char* help) {
    auto* sub = experiment->add_subcommand(name, help);
    add_sampling_flags(sub, exp_flags);
    sub->add_option("--rules", rules, "Rules to run")->delimiter(',')->capture_default_str();
    sub->add_option("--workers", workers, "Worker threads (0: all; PRICEKIT_THREADS caps)")->capture_default_str();
    sub->add_flag("--serial", serial, "Use the serial reference loop");
    sub->add_option("--out", exp_out, "CSV output (default stdout)");
    return sub;
  };
  auto* ejr = add_experiment("ejr", "Min-budget fraction vs EJR+ on random committees");
  ejr->add_option("--model", exp_flags.model, "euclidean-vcr | resampling")->capture_default_str();
  auto* recover = add_experiment("recover", "Weight recovery from budgets on equal-shares committees");
  recover->add_option("--summary", summary_out, "Threshold summary CSV output");
  std::string completion = "approval-score";
  recover->add_option("--mes-completion", completion, "Equal-shares completion")
      ->check(CLI::IsMember({"approval-score", "budget-scaling"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_flags, gen_out);
    if (*explain) return cmd_explain(rule, profile_path, committee_text, explain_out, top);
    if (*audit) return cmd_audit(audit_profile, audit_ps, axioms, all, strict, audit_json, limits);
    if (*ejr) return cmd_experiment(false, exp_flags, rules, workers, serial, exp_out, "");
    if (*recover)
      return cmd_experiment(true, exp_flags, rules, workers, serial, exp_out, summary_out,
                            completion == "budget-scaling" ? MesCompletion::BudgetScaling : MesCompletion::ApprovalScore);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == ErrorCode::Io || e.code() == ErrorCode::ParseError) return kIo;
    return e.code() == ErrorCode::InstanceTooLarge ? kStrictSkip : kUsage;
  }
  return kUsage;
}
