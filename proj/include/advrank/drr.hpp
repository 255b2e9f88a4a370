#pragma once

// Defense Reciprocal Rank: the reciprocal rank of the true category in the
// perturbed list, moved within the band [1/(r+1), 1/r] by the probability the
// model assigns to it. Zero when the true category ranks below drr_k.

#include <cstddef>
#include <optional>

#include "advrank/prediction.hpp"
#include "advrank/ranking.hpp"

namespace advrank {

struct DrrResult {
  double score = 0.0;
  // 1-based; empty when the true category ranks below drr_k.
  std::optional<std::size_t> rank;
  // Probability of the true category under the configured source.
  double confidence = 0.0;
};

// Band placement for a category at 1-based `rank` holding `probability`.
inline double DrrScore(std::size_t rank, double probability) {
  const double denom = static_cast<double>(rank) + 1.0;
  return probability / denom + 1.0 / denom;
}

inline DrrResult Drr(const EvalRecord& record, const MetricConfig& config) {
  const ProbabilityVector probs =
      Probabilities(record.perturbed, config.prob_source);
  const std::size_t rank = RankOf(probs.values(), record.true_category);

  DrrResult out;
  out.confidence = probs[record.true_category.index];
  if (rank <= config.drr_k) {
    out.rank = rank;
    out.score = DrrScore(rank, out.confidence);
  }
  return out;
}

}  // namespace advrank
