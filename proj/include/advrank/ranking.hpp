#pragma once

// Normalization and ranking primitives.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "advrank/error.hpp"
#include "advrank/prediction.hpp"

namespace advrank {

struct RankedEntry {
  CategoryId category;
  double score = 0.0;
};

// Categories by score, highest first. Equal scores keep ascending index order.
struct RankedList {
  std::vector<RankedEntry> entries;

  std::size_t size() const { return entries.size(); }
  const RankedEntry& operator[](std::size_t rank0) const {
    return entries[rank0];
  }
  auto begin() const { return entries.begin(); }
  auto end() const { return entries.end(); }

  // Scores in rank order.
  std::vector<double> scores() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.score);
    return out;
  }
};

// Max-shifted softmax. Accepts any finite input, including constant vectors.
inline ProbabilityVector Softmax(std::span<const double> logits) {
  ProbabilityVector out;
  if (logits.empty()) return out;
  const double max = *std::max_element(logits.begin(), logits.end());
  out.probs.resize(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out.probs[i] = std::exp(logits[i] - max);
    sum += out.probs[i];
  }
  for (double& p : out.probs) p /= sum;
  return out;
}

inline ProbabilityVector Softmax(const PredictionVector& v) {
  return Softmax(v.values());
}

// (v - min) / (max - min). The maximum maps to exactly 1 and the minimum to 0.
inline std::vector<double> MinMaxRescale(std::span<const double> v) {
  if (v.empty()) {
    throw Error(ErrorKind::kDegenerateLogits, "empty vector");
  }
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) {
    throw Error(ErrorKind::kDegenerateLogits, "max equals min");
  }
  const double range = hi - lo;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] == hi ? 1.0 : (v[i] - lo) / range;
  }
  return out;
}

inline std::vector<double> MinMaxRescale(const PredictionVector& v) {
  return MinMaxRescale(v.values());
}

// Min-max rescaled logits normalized to sum 1.
inline ProbabilityVector LinearLogitProbabilities(std::span<const double> v) {
  ProbabilityVector out{MinMaxRescale(v)};
  const double sum = std::accumulate(out.probs.begin(), out.probs.end(), 0.0);
  for (double& p : out.probs) p /= sum;
  return out;
}

inline ProbabilityVector Probabilities(const PredictionVector& v,
                                       ProbSource source) {
  return source == ProbSource::kSoftmax ? Softmax(v.values())
                                        : LinearLogitProbabilities(v.values());
}

namespace internal {

inline bool RanksBefore(double score_a, std::size_t a, double score_b,
                        std::size_t b) {
  if (score_a != score_b) return score_a > score_b;
  return a < b;
}

}  // namespace internal

inline RankedList RankDescending(std::span<const double> scores) {
  RankedList out;
  out.entries.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out.entries.push_back({CategoryId{i}, scores[i]});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              return internal::RanksBefore(a.score, a.category.index, b.score,
                                           b.category.index);
            });
  return out;
}

inline RankedList RankDescending(const ProbabilityVector& p) {
  return RankDescending(p.values());
}

// 1-based rank `category` would receive from RankDescending(scores), in O(n).
inline std::size_t RankOf(std::span<const double> scores,
                          CategoryId category) {
  const std::size_t c = category.index;
  std::size_t ahead = 0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (j != c && internal::RanksBefore(scores[j], j, scores[c], c)) ++ahead;
  }
  return ahead + 1;
}

// Number of leading entries of a descending sequence with value >= gamma.
inline std::size_t CountAboveThreshold(std::span<const double> descending,
                                       double gamma) {
  std::size_t k = 0;
  while (k < descending.size() && descending[k] >= gamma) ++k;
  return k;
}

inline std::size_t CountAboveThreshold(const RankedList& ranked,
                                       double gamma) {
  std::size_t k = 0;
  while (k < ranked.size() && ranked[k].score >= gamma) ++k;
  return k;
}

}  // namespace advrank
