#pragma once

// Line-delimited record ingestion and report serialization.
//
// Input, one JSON object per line:
//   {"id": str, "condition": str, "true_category": int,
//    "benign_logits": [num...], "perturbed_logits": [num...],
//    "labels": [str...]}            // labels optional
//
// CSV reports carry 6 decimal places; JSON reports carry full precision.

#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "advrank/error.hpp"
#include "advrank/harness.hpp"
#include "advrank/prediction.hpp"
#include "json.hpp"

namespace advrank {

enum class ReportFormat { kCsv, kJson };

namespace internal {

inline bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

inline std::vector<double> ParseNumbers(const nlohmann::json& j,
                                        const char* field) {
  if (!j.is_array()) {
    throw Error(ErrorKind::kParseError,
                std::string("'") + field + "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw Error(ErrorKind::kParseError,
                  std::string("'") + field + "' holds a non-numeric entry");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

inline EvalRecord ParseRecordObject(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw Error(ErrorKind::kParseError, "line is not a JSON object");
  }
  auto require = [&](const char* key) -> const nlohmann::json& {
    auto it = j.find(key);
    if (it == j.end()) {
      throw Error(ErrorKind::kParseError,
                  std::string("missing field '") + key + "'");
    }
    return *it;
  };
  EvalRecord r;
  const auto& id = require("id");
  const auto& condition = require("condition");
  const auto& truth = require("true_category");
  if (!id.is_string()) {
    throw Error(ErrorKind::kParseError, "'id' must be a string");
  }
  if (!condition.is_string()) {
    throw Error(ErrorKind::kParseError, "'condition' must be a string");
  }
  if (!truth.is_number_integer()) {
    throw Error(ErrorKind::kParseError, "'true_category' must be an integer");
  }
  r.id = id.get<std::string>();
  r.condition = condition.get<std::string>();
  if (truth.is_number_unsigned()) {
    r.true_category = CategoryId{truth.get<std::size_t>()};
  } else {
    throw Error(ErrorKind::kValidationError,
                "CategoryOutOfRange in field 'true_category': negative index",
                "true_category", r.id);
  }
  r.benign.logits = ParseNumbers(require("benign_logits"), "benign_logits");
  r.perturbed.logits =
      ParseNumbers(require("perturbed_logits"), "perturbed_logits");
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array()) {
      throw Error(ErrorKind::kParseError, "'labels' must be an array");
    }
    for (const auto& s : *it) {
      if (!s.is_string()) {
        throw Error(ErrorKind::kParseError, "'labels' holds a non-string");
      }
      r.labels.push_back(s.get<std::string>());
    }
  }
  return r;
}

inline std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::kIoError, "cannot open '" + path.string() +
                                         "' for writing");
  }
  return out;
}

inline void CheckWritten(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw Error(ErrorKind::kIoError, "write to '" + path.string() + "' failed");
  }
}

}  // namespace internal

// Parses and validates every record. Blank lines are skipped but still
// counted for line numbers.
inline std::vector<EvalRecord> ParseRecords(std::istream& in) {
  std::vector<EvalRecord> out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> label_space;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::IsBlank(line)) continue;
    EvalRecord record;
    try {
      record = internal::ParseRecordObject(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParseError, e.what(), {}, {}, line_no);
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail(), e.field(), e.record_id(), line_no);
    }
    try {
      record = ValidateRecord(std::move(record));
    } catch (const Error& e) {
      throw Error(ErrorKind::kValidationError, e.what(), e.field(),
                  e.record_id(), line_no);
    }
    if (!label_space) {
      label_space = record.num_categories();
    } else if (*label_space != record.num_categories()) {
      throw Error(ErrorKind::kInconsistentLabelSpace,
                  "label space size " + std::to_string(record.num_categories()) +
                      " differs from " + std::to_string(*label_space) +
                      " on earlier lines",
                  {}, record.id, line_no);
    }
    out.push_back(std::move(record));
  }
  if (out.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "no records in input");
  }
  return out;
}

inline std::vector<EvalRecord> ReadRecords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIoError, "cannot open '" + path.string() + "'");
  }
  return ParseRecords(in);
}

inline nlohmann::json RecordToJson(const EvalRecord& r) {
  nlohmann::json j = {{"id", r.id},
                      {"condition", r.condition},
                      {"true_category", r.true_category.index},
                      {"benign_logits", r.benign.logits},
                      {"perturbed_logits", r.perturbed.logits}};
  if (!r.labels.empty()) j["labels"] = r.labels;
  return j;
}

inline void WriteRecords(std::span<const EvalRecord> records,
                         std::ostream& out) {
  for (const auto& r : records) out << RecordToJson(r).dump() << '\n';
}

inline void WriteRecords(std::span<const EvalRecord> records,
                         const std::filesystem::path& path) {
  auto out = internal::OpenForWrite(path);
  WriteRecords(records, out);
  internal::CheckWritten(out, path);
}

// ---- CSV ---------------------------------------------------------------

inline void WriteReportsCsv(std::span<const MetricReport> reports,
                            std::ostream& out) {
  const std::size_t depth =
      reports.empty() ? 0 : reports.front().ndcg_curve.size();
  out << "id,condition,k1,k2,ndcg_1,ndcg_total,drr,drr_rank,top1_hit,top5_hit";
  for (std::size_t r = 1; r <= depth; ++r) out << ",ndcg_r" << r;
  out << '\n';
  for (const auto& rep : reports) {
    out << internal::CsvField(rep.id) << ',' << internal::CsvField(rep.condition)
        << ',' << rep.k1 << ',' << rep.k2 << ',' << internal::Fixed6(rep.ndcg_1)
        << ',' << internal::Fixed6(rep.ndcg_total) << ','
        << internal::Fixed6(rep.drr) << ',';
    if (rep.drr_rank) out << *rep.drr_rank;
    out << ',' << (rep.top1_hit ? 1 : 0) << ',' << (rep.top5_hit ? 1 : 0);
    for (double v : rep.ndcg_curve) out << ',' << internal::Fixed6(v);
    out << '\n';
  }
}

inline void WriteSummariesCsv(std::span<const GroupSummary> summaries,
                              std::ostream& out) {
  const std::size_t depth =
      summaries.empty() ? 0 : summaries.front().mean_curve.size();
  out << "condition,count";
  for (const char* m : {"k1", "k2", "ndcg_1", "ndcg_total", "drr", "top1_acc",
                        "top5_acc"}) {
    out << ',' << m << "_mean," << m << "_std";
  }
  for (std::size_t r = 1; r <= depth; ++r) out << ",ndcg_r" << r << "_mean";
  out << '\n';
  for (const auto& s : summaries) {
    out << internal::CsvField(s.condition) << ',' << s.count;
    for (const Moments* m : {&s.k1, &s.k2, &s.ndcg_1, &s.ndcg_total, &s.drr,
                             &s.top1_hit, &s.top5_hit}) {
      out << ',' << internal::Fixed6(m->mean) << ','
          << internal::Fixed6(m->stddev);
    }
    for (double v : s.mean_curve) out << ',' << internal::Fixed6(v);
    out << '\n';
  }
}

// ---- JSON --------------------------------------------------------------

inline nlohmann::json ToJson(const MetricReport& r) {
  return {{"id", r.id},
          {"condition", r.condition},
          {"k1", r.k1},
          {"k2", r.k2},
          {"ndcg_1", r.ndcg_1},
          {"ndcg_total", r.ndcg_total},
          {"drr", r.drr},
          {"drr_rank", r.drr_rank ? nlohmann::json(*r.drr_rank) : nullptr},
          {"top1_hit", r.top1_hit},
          {"top5_hit", r.top5_hit},
          {"ndcg_curve", r.ndcg_curve}};
}

inline nlohmann::json ToJson(const Moments& m) {
  return {{"mean", m.mean}, {"std", m.stddev}};
}

inline nlohmann::json ToJson(const GroupSummary& s) {
  return {{"condition", s.condition},   {"count", s.count},
          {"k1", ToJson(s.k1)},         {"k2", ToJson(s.k2)},
          {"ndcg_1", ToJson(s.ndcg_1)}, {"ndcg_total", ToJson(s.ndcg_total)},
          {"drr", ToJson(s.drr)},       {"top1_acc", ToJson(s.top1_hit)},
          {"top5_acc", ToJson(s.top5_hit)}, {"mean_curve", s.mean_curve}};
}

inline nlohmann::json ReportsToJson(std::span<const MetricReport> reports,
                                    std::span<const GroupSummary> summaries) {
  nlohmann::json j;
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(ToJson(r));
  j["summaries"] = nlohmann::json::array();
  for (const auto& s : summaries) j["summaries"].push_back(ToJson(s));
  return j;
}

inline Evaluation ReportsFromJson(const nlohmann::json& j) {
  Evaluation out;
  try {
    for (const auto& r : j.at("reports")) {
      MetricReport m;
      m.id = r.at("id").get<std::string>();
      m.condition = r.at("condition").get<std::string>();
      m.k1 = r.at("k1").get<std::size_t>();
      m.k2 = r.at("k2").get<std::size_t>();
      m.ndcg_1 = r.at("ndcg_1").get<double>();
      m.ndcg_total = r.at("ndcg_total").get<double>();
      m.drr = r.at("drr").get<double>();
      if (!r.at("drr_rank").is_null()) {
        m.drr_rank = r.at("drr_rank").get<std::size_t>();
      }
      m.top1_hit = r.at("top1_hit").get<bool>();
      m.top5_hit = r.at("top5_hit").get<bool>();
      m.ndcg_curve = r.at("ndcg_curve").get<std::vector<double>>();
      out.reports.push_back(std::move(m));
    }
    auto moments = [](const nlohmann::json& m) {
      return Moments{m.at("mean").get<double>(), m.at("std").get<double>()};
    };
    for (const auto& s : j.at("summaries")) {
      GroupSummary g;
      g.condition = s.at("condition").get<std::string>();
      g.count = s.at("count").get<std::size_t>();
      g.k1 = moments(s.at("k1"));
      g.k2 = moments(s.at("k2"));
      g.ndcg_1 = moments(s.at("ndcg_1"));
      g.ndcg_total = moments(s.at("ndcg_total"));
      g.drr = moments(s.at("drr"));
      g.top1_hit = moments(s.at("top1_acc"));
      g.top5_hit = moments(s.at("top5_acc"));
      g.mean_curve = s.at("mean_curve").get<std::vector<double>>();
      out.summaries.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
  return out;
}

inline Evaluation ReadReportsJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIoError, "cannot open '" + path.string() + "'");
  }
  try {
    return ReportsFromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
}

// CSV summaries go next to the report file: reports.csv -> reports.summary.csv.
inline std::filesystem::path SummaryPathFor(const std::filesystem::path& path) {
  std::filesystem::path out = path;
  out.replace_extension();
  out += ".summary.csv";
  return out;
}

inline void WriteReports(std::span<const MetricReport> reports,
                         std::span<const GroupSummary> summaries,
                         ReportFormat format,
                         const std::filesystem::path& path) {
  if (reports.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "no reports to write");
  }
  auto out = internal::OpenForWrite(path);
  if (format == ReportFormat::kJson) {
    out << ReportsToJson(reports, summaries).dump(2) << '\n';
    internal::CheckWritten(out, path);
    return;
  }
  WriteReportsCsv(reports, out);
  internal::CheckWritten(out, path);
  const auto summary_path = SummaryPathFor(path);
  auto sout = internal::OpenForWrite(summary_path);
  WriteSummariesCsv(summaries, sout);
  internal::CheckWritten(sout, summary_path);
}

// One row per rank, one column per condition.
inline void EmitCurveData(std::span<const GroupSummary> summaries,
                          std::ostream& out) {
  if (summaries.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "no summaries");
  }
  const std::size_t depth = summaries.front().mean_curve.size();
  for (const auto& s : summaries) {
    if (s.mean_curve.size() != depth) {
      throw Error(ErrorKind::kLengthMismatch, "curve depths differ",
                  "mean_curve");
    }
  }
  out << "rank";
  for (const auto& s : summaries) out << ',' << internal::CsvField(s.condition);
  out << '\n';
  for (std::size_t r = 0; r < depth; ++r) {
    out << r + 1;
    for (const auto& s : summaries) {
      out << ',' << internal::Fixed6(s.mean_curve[r]);
    }
    out << '\n';
  }
}

inline void EmitCurveData(std::span<const GroupSummary> summaries,
                          const std::filesystem::path& path) {
  auto out = internal::OpenForWrite(path);
  EmitCurveData(summaries, out);
  internal::CheckWritten(out, path);
}

}  // namespace advrank
