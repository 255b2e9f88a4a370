#pragma once

// Core record types shared by every metric, plus ingestion-time validation.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "advrank/error.hpp"

namespace advrank {

// Position in the shared label space [0, n). Identity of a category across the
// benign and perturbed lists is this index, never a label name.
struct CategoryId {
  std::size_t index = 0;

  friend auto operator<=>(const CategoryId&, const CategoryId&) = default;
};

// Raw pre-softmax activations for one input.
struct PredictionVector {
  std::vector<double> logits;

  std::size_t size() const { return logits.size(); }
  double operator[](std::size_t i) const { return logits[i]; }
  std::span<const double> values() const { return logits; }

  friend bool operator==(const PredictionVector&,
                         const PredictionVector&) = default;
};

struct ProbabilityVector {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }
  std::span<const double> values() const { return probs; }
};

struct EvalRecord {
  std::string id;
  // Attack or defense group the record belongs to.
  std::string condition;
  CategoryId true_category;
  PredictionVector benign;
  PredictionVector perturbed;
  // Optional human-readable names; metadata only.
  std::vector<std::string> labels;

  std::size_t num_categories() const { return benign.size(); }

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

enum class ProbSource {
  kSoftmax,
  // Min-max rescaled logits divided by their sum.
  kLinearLogits,
};

struct MetricConfig {
  double gamma_b = 0.01;
  double gamma_a = 0.001;
  std::size_t drr_k = 5;
  std::size_t curve_depth = 10;
  ProbSource prob_source = ProbSource::kSoftmax;
};

inline void ValidateConfig(const MetricConfig& config) {
  auto in_unit = [](double g) { return std::isfinite(g) && g >= 0.0 && g <= 1.0; };
  if (!in_unit(config.gamma_b)) {
    throw Error(ErrorKind::kInvalidSpec, "must lie in [0,1]", "gamma_b");
  }
  if (!in_unit(config.gamma_a)) {
    throw Error(ErrorKind::kInvalidSpec, "must lie in [0,1]", "gamma_a");
  }
  if (config.drr_k < 1) {
    throw Error(ErrorKind::kInvalidSpec, "must be >= 1", "drr_k");
  }
  if (config.curve_depth < 1) {
    throw Error(ErrorKind::kInvalidSpec, "must be >= 1", "curve_depth");
  }
}

namespace internal {

inline void CheckLogits(std::span<const double> logits, const char* field,
                        const std::string& id) {
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (!std::isfinite(logits[i])) {
      throw Error(ErrorKind::kNonFiniteValue,
                  "entry " + std::to_string(i) + " is not finite", field, id);
    }
  }
  if (logits.size() < 2) {
    throw Error(ErrorKind::kDegenerateLogits,
                "needs at least 2 entries, got " +
                    std::to_string(logits.size()),
                field, id);
  }
  const auto [lo, hi] = std::minmax_element(logits.begin(), logits.end());
  if (!(*hi > *lo)) {
    throw Error(ErrorKind::kDegenerateLogits, "all entries are equal", field,
                id);
  }
}

}  // namespace internal

// Returns the record unchanged when every invariant holds. Otherwise throws an
// Error for the first violation, checking fields in declaration order:
// true_category, benign, perturbed, labels.
inline EvalRecord ValidateRecord(EvalRecord record) {
  const std::size_t n = record.benign.size();
  if (record.true_category.index >= n) {
    throw Error(ErrorKind::kCategoryOutOfRange,
                "index " + std::to_string(record.true_category.index) +
                    " outside label space of size " + std::to_string(n),
                "true_category", record.id);
  }
  internal::CheckLogits(record.benign.values(), "benign", record.id);
  if (record.perturbed.size() != n) {
    throw Error(ErrorKind::kLengthMismatch,
                "length " + std::to_string(record.perturbed.size()) +
                    " differs from benign length " + std::to_string(n),
                "perturbed", record.id);
  }
  internal::CheckLogits(record.perturbed.values(), "perturbed", record.id);
  if (!record.labels.empty() && record.labels.size() != n) {
    throw Error(ErrorKind::kLengthMismatch,
                "length " + std::to_string(record.labels.size()) +
                    " differs from label space size " + std::to_string(n),
                "labels", record.id);
  }
  return record;
}

}  // namespace advrank
