#pragma once

// Batch scoring of experimental groups and per-group aggregation.
//
// Aggregates are computed by plain sequential summation in input order so
// that reports are bit-identical for a given input and config.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "advrank/baseline.hpp"
#include "advrank/drr.hpp"
#include "advrank/error.hpp"
#include "advrank/ndcg.hpp"
#include "advrank/prediction.hpp"
#include "advrank/ranking.hpp"

namespace advrank {

struct MetricReport {
  std::string id;
  std::string condition;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::vector<double> ndcg_curve;
  double ndcg_1 = 0.0;
  double ndcg_total = 0.0;
  double drr = 0.0;
  std::optional<std::size_t> drr_rank;
  bool top1_hit = false;
  bool top5_hit = false;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

struct Moments {
  double mean = 0.0;
  // Sample (n - 1) standard deviation; 0 for a single value.
  double stddev = 0.0;

  friend bool operator==(const Moments&, const Moments&) = default;
};

struct GroupSummary {
  std::string condition;
  std::size_t count = 0;
  Moments k1;
  Moments k2;
  Moments ndcg_1;
  Moments ndcg_total;
  Moments drr;
  Moments top1_hit;
  Moments top5_hit;
  std::vector<double> mean_curve;

  friend bool operator==(const GroupSummary&, const GroupSummary&) = default;
};

struct GroupEvaluation {
  GroupSummary summary;
  std::vector<MetricReport> reports;
};

struct Evaluation {
  // Input order, after filtering.
  std::vector<MetricReport> reports;
  // One per condition, in order of first appearance.
  std::vector<GroupSummary> summaries;
};

inline MetricReport EvaluateRecord(const EvalRecord& record,
                                   const MetricConfig& config) {
  try {
    NdcgResult ndcg = Ndcg(record, config);
    const DrrResult drr = Drr(record, config);
    MetricReport out;
    out.id = record.id;
    out.condition = record.condition;
    out.k1 = ndcg.k1;
    out.k2 = ndcg.k2;
    out.ndcg_1 = ndcg.curve.front();
    out.ndcg_total = ndcg.total;
    out.ndcg_curve = std::move(ndcg.curve);
    out.drr = drr.score;
    out.drr_rank = drr.rank;
    out.top1_hit = TopKHit(record, 1, Side::kPerturbed);
    out.top5_hit = TopKHit(record, 5, Side::kPerturbed);
    return out;
  } catch (const Error& e) {
    if (!e.record_id().empty()) throw;
    throw Error(e.kind(), e.detail(), e.field(), record.id, e.line());
  }
}

template <typename Fn>
Moments ComputeMoments(std::span<const MetricReport> reports, Fn field) {
  Moments out;
  const double n = static_cast<double>(reports.size());
  double sum = 0.0;
  for (const auto& r : reports) sum += static_cast<double>(field(r));
  out.mean = sum / n;
  if (reports.size() > 1) {
    double sq = 0.0;
    for (const auto& r : reports) {
      const double d = static_cast<double>(field(r)) - out.mean;
      sq += d * d;
    }
    out.stddev = std::sqrt(sq / (n - 1.0));
  }
  return out;
}

inline std::vector<double> MeanNdcgCurve(
    std::span<const MetricReport> reports) {
  if (reports.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "mean curve of an empty group");
  }
  const std::size_t depth = reports.front().ndcg_curve.size();
  std::vector<double> sum(depth, 0.0);
  for (const auto& r : reports) {
    if (r.ndcg_curve.size() != depth) {
      throw Error(ErrorKind::kLengthMismatch, "curve depths differ",
                  "ndcg_curve", r.id);
    }
    for (std::size_t i = 0; i < depth; ++i) sum[i] += r.ndcg_curve[i];
  }
  for (double& s : sum) s /= static_cast<double>(reports.size());
  return sum;
}

inline GroupSummary Summarize(std::string condition,
                              std::span<const MetricReport> reports) {
  if (reports.empty()) {
    throw Error(ErrorKind::kEmptyGroup,
                "no records left in group '" + condition + "'");
  }
  GroupSummary out;
  out.condition = std::move(condition);
  out.count = reports.size();
  out.k1 = ComputeMoments(reports, [](const MetricReport& r) { return r.k1; });
  out.k2 = ComputeMoments(reports, [](const MetricReport& r) { return r.k2; });
  out.ndcg_1 =
      ComputeMoments(reports, [](const MetricReport& r) { return r.ndcg_1; });
  out.ndcg_total = ComputeMoments(
      reports, [](const MetricReport& r) { return r.ndcg_total; });
  out.drr = ComputeMoments(reports, [](const MetricReport& r) { return r.drr; });
  out.top1_hit = ComputeMoments(
      reports, [](const MetricReport& r) { return r.top1_hit ? 1.0 : 0.0; });
  out.top5_hit = ComputeMoments(
      reports, [](const MetricReport& r) { return r.top5_hit ? 1.0 : 0.0; });
  out.mean_curve = MeanNdcgCurve(reports);
  return out;
}

// True when the benign top-1 prediction is the true category.
inline bool BenignCorrect(const EvalRecord& record) {
  return TopKHit(record, 1, Side::kBenign);
}

inline GroupEvaluation EvaluateGroup(std::span<const EvalRecord> records,
                                     const MetricConfig& config,
                                     bool filter_misclassified) {
  if (records.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "empty group");
  }
  const std::string& condition = records.front().condition;
  GroupEvaluation out;
  out.reports.reserve(records.size());
  for (const auto& record : records) {
    if (record.condition != condition) {
      throw Error(ErrorKind::kValidationError,
                  "group '" + condition + "' contains condition '" +
                      record.condition + "'",
                  "condition", record.id);
    }
    if (filter_misclassified && !BenignCorrect(record)) continue;
    out.reports.push_back(EvaluateRecord(record, config));
  }
  out.summary = Summarize(condition, out.reports);
  return out;
}

// Splits records by condition and evaluates each group.
inline Evaluation EvaluateAll(std::span<const EvalRecord> records,
                              const MetricConfig& config,
                              bool filter_misclassified) {
  if (records.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "no records");
  }
  ValidateConfig(config);
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<MetricReport>> by_condition;
  Evaluation out;
  for (const auto& record : records) {
    auto [it, inserted] = by_condition.try_emplace(record.condition);
    if (inserted) order.push_back(record.condition);
    if (filter_misclassified && !BenignCorrect(record)) continue;
    out.reports.push_back(EvaluateRecord(record, config));
    it->second.push_back(out.reports.back());
  }
  for (const auto& condition : order) {
    out.summaries.push_back(Summarize(condition, by_condition[condition]));
  }
  return out;
}

}  // namespace advrank
