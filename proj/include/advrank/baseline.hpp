#pragma once

// Conventional top-k hit and accuracy, ranked by softmax probability.

#include <algorithm>
#include <cstddef>
#include <span>

#include "advrank/error.hpp"
#include "advrank/prediction.hpp"
#include "advrank/ranking.hpp"

namespace advrank {

enum class Side { kBenign, kPerturbed };

// k larger than the label space counts every category.
inline bool TopKHit(const EvalRecord& record, std::size_t k, Side side) {
  const PredictionVector& v =
      side == Side::kBenign ? record.benign : record.perturbed;
  return RankOf(Softmax(v).values(), record.true_category) <= k;
}

inline double TopKAccuracy(std::span<const EvalRecord> records, std::size_t k,
                           Side side) {
  if (records.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "top-k accuracy of an empty set");
  }
  const auto hits = std::count_if(
      records.begin(), records.end(),
      [&](const EvalRecord& r) { return TopKHit(r, k, side); });
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

}  // namespace advrank
