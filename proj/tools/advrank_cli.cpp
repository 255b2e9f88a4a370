// advrank: score perturbed-vs-benign prediction records from the command line.
//
//   advrank evaluate <input.jsonl> [options]   per-record and per-group metrics
//   advrank curves <input.jsonl> [options]     mean NDCG curve per condition
//   advrank gen-fixtures --kind K --out PATH   synthetic record files
//
// Exit status: 0 success, 1 input or validation error, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "advrank/advrank.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitUsage = 2;

struct EvalOptions {
  std::string input;
  advrank::MetricConfig config;
  bool filter_misclassified = false;
  advrank::ReportFormat format = advrank::ReportFormat::kCsv;
  std::string out;
  std::string summary_out;
};

void AddMetricOptions(CLI::App* cmd, EvalOptions& opts) {
  cmd->add_option("input", opts.input, "Line-delimited JSON record file")
      ->required();
  cmd->add_option("--gamma-b", opts.config.gamma_b,
                  "Benign probability threshold for relevance")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--gamma-a", opts.config.gamma_a,
                  "Perturbed probability threshold for relevance transfer")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--drr-k", opts.config.drr_k, "DRR cut-off rank")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--depth", opts.config.curve_depth, "NDCG curve depth")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  const std::map<std::string, advrank::ProbSource> sources = {
      {"softmax", advrank::ProbSource::kSoftmax},
      {"linear-logits", advrank::ProbSource::kLinearLogits}};
  cmd->add_option("--prob-source", opts.config.prob_source,
                  "Probability source for DRR")
      ->transform(CLI::CheckedTransformer(sources, CLI::ignore_case));
  cmd->add_flag("--filter-misclassified", opts.filter_misclassified,
                "Drop records whose benign top-1 is not the true category");
  cmd->add_option("--out", opts.out, "Output path (default: stdout)");
}

int RunEvaluate(const EvalOptions& opts) {
  const auto records = advrank::ReadRecords(opts.input);
  const auto eval =
      advrank::EvaluateAll(records, opts.config, opts.filter_misclassified);
  if (!opts.out.empty()) {
    advrank::WriteReports(eval.reports, eval.summaries, opts.format, opts.out);
  } else if (opts.format == advrank::ReportFormat::kJson) {
    std::cout << advrank::ReportsToJson(eval.reports, eval.summaries).dump(2)
              << '\n';
  } else {
    advrank::WriteReportsCsv(eval.reports, std::cout);
  }
  if (!opts.summary_out.empty()) {
    std::ofstream s(opts.summary_out);
    if (!s) {
      throw advrank::Error(advrank::ErrorKind::kIoError,
                           "cannot open '" + opts.summary_out + "'");
    }
    advrank::WriteSummariesCsv(eval.summaries, s);
  }
  return 0;
}

int RunCurves(const EvalOptions& opts) {
  const auto records = advrank::ReadRecords(opts.input);
  const auto eval =
      advrank::EvaluateAll(records, opts.config, opts.filter_misclassified);
  if (opts.out.empty()) {
    advrank::EmitCurveData(eval.summaries, std::cout);
  } else {
    advrank::EmitCurveData(eval.summaries, std::filesystem::path(opts.out));
  }
  return 0;
}

struct GenOptions {
  std::string kind;
  advrank::ScenarioSpec spec;
  std::string out;
};

int RunGenerate(const GenOptions& opts) {
  std::vector<advrank::EvalRecord> records;
  if (opts.kind == "worked-example") {
    records = advrank::worked_example::Records();
  } else {
    static const std::map<std::string, advrank::ScenarioKind> kinds = {
        {"identity", advrank::ScenarioKind::kIdentity},
        {"swap-top2", advrank::ScenarioKind::kSwapTop2},
        {"push-down", advrank::ScenarioKind::kPushDown},
        {"flatten", advrank::ScenarioKind::kFlatten},
        {"random-wrong", advrank::ScenarioKind::kRandomWrong}};
    advrank::ScenarioSpec spec = opts.spec;
    spec.kind = kinds.at(opts.kind);
    records = advrank::Generate(spec);
  }
  if (opts.out.empty() || opts.out == "-") {
    advrank::WriteRecords(records, std::cout);
  } else {
    advrank::WriteRecords(records, std::filesystem::path(opts.out));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranking-aware evaluation of adversarial attacks and defenses"};
  app.require_subcommand(1);

  EvalOptions eval_opts;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Per-record NDCG, DRR and top-k metrics with group summaries");
  AddMetricOptions(evaluate, eval_opts);
  const std::map<std::string, advrank::ReportFormat> formats = {
      {"csv", advrank::ReportFormat::kCsv},
      {"json", advrank::ReportFormat::kJson}};
  evaluate->add_option("--format", eval_opts.format, "Report format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  evaluate->add_option("--summary-out", eval_opts.summary_out,
                       "Also write the group summary CSV here");

  EvalOptions curve_opts;
  auto* curves = app.add_subcommand(
      "curves", "Mean NDCG per rank, one column per condition");
  AddMetricOptions(curves, curve_opts);

  GenOptions gen;
  auto* generate =
      app.add_subcommand("gen-fixtures", "Write synthetic record files");
  generate
      ->add_option("--kind", gen.kind,
                   "identity, swap-top2, push-down, flatten, random-wrong, "
                   "worked-example")
      ->required()
      ->check(CLI::IsMember({"identity", "swap-top2", "push-down", "flatten",
                             "random-wrong", "worked-example"}));
  generate->add_option("--n", gen.spec.n, "Label-space size")
      ->capture_default_str();
  generate->add_option("--count", gen.spec.count, "Number of records")
      ->capture_default_str();
  generate->add_option("--seed", gen.spec.seed, "Random seed")
      ->capture_default_str();
  generate->add_option("--push-depth", gen.spec.push_depth,
                       "Target rank of the true category for push-down")
      ->capture_default_str();
  generate->add_option("--factor", gen.spec.flatten_factor,
                       "Deviation scale for flatten, in (0, 1]")
      ->capture_default_str();
  generate->add_option("--gap", gen.spec.benign_gap,
                       "Benign logit gap between rank 1 and rank 2")
      ->capture_default_str();
  generate->add_option("--condition", gen.spec.condition,
                       "Condition name (default derived from kind)");
  generate->add_option("--out", gen.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evaluate) return RunEvaluate(eval_opts);
    if (*curves) return RunCurves(curve_opts);
    if (*generate) return RunGenerate(gen);
  } catch (const advrank::Error& e) {
    std::cerr << "advrank: " << e.what() << '\n';
    return e.kind() == advrank::ErrorKind::kInvalidSpec ? kExitUsage
                                                        : kExitInput;
  }
  return kExitUsage;
}
