#pragma once

// A 1000-category "toy poodle" scenario with a benign prediction and two
// perturbed predictions: a mild one that swaps the top two categories, and a
// strong targeted one that spreads probability over ~600 categories and
// pushes the true category to rank 11.
//
// Benign logits are given directly. Perturbed logits are log-probabilities,
// so their softmax reproduces the intended probabilities exactly.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "advrank/prediction.hpp"

namespace advrank::worked_example {

constexpr std::size_t kNumCategories = 1000;

enum Category : std::size_t {
  kToyPoodle = 0,
  kMiniaturePoodle = 1,
  kStandardPoodle = 2,
  kCockerSpaniel = 3,
  kSeatBelt = 4,
  kIrishWaterSpaniel = 5,
  kSnowmobile = 6,
  kChesapeakeBayRetriever = 7,
  kHyena = 8,
  kJeep = 9,
};

// Number of targeted-attack probabilities that are >= 0.001.
constexpr std::size_t kTargetedAboveMilli = 613;

inline std::vector<std::string> Labels() {
  std::vector<std::string> labels = {
      "toy poodle", "miniature poodle",    "standard poodle",
      "cocker spaniel", "seat belt",       "Irish water spaniel",
      "snowmobile", "Chesapeake Bay retriever", "hyena",
      "jeep"};
  for (std::size_t c = labels.size(); c < kNumCategories; ++c) {
    labels.push_back("class_" + std::to_string(c));
  }
  return labels;
}

inline PredictionVector BenignLogits() {
  std::vector<double> l(kNumCategories);
  l[kToyPoodle] = 20.328;
  l[kMiniaturePoodle] = 19.829;
  l[kStandardPoodle] = 14.286;
  l[kCockerSpaniel] = 12.98;
  l[kSeatBelt] = 10.6;
  // Remaining 995 categories descend linearly from 8 to the global minimum.
  const std::size_t first = 5;
  const std::size_t tail = kNumCategories - first;
  for (std::size_t i = 0; i < tail; ++i) {
    l[first + i] = 8.0 - (8.0 + 6.023) * static_cast<double>(i) /
                             static_cast<double>(tail - 1);
  }
  l[kNumCategories - 1] = -6.023;
  return {std::move(l)};
}

namespace internal {

inline PredictionVector FromProbabilities(
    const std::vector<std::size_t>& order, const std::vector<double>& probs) {
  std::vector<double> l(kNumCategories);
  for (std::size_t r = 0; r < order.size(); ++r) l[order[r]] = std::log(probs[r]);
  return {std::move(l)};
}

}  // namespace internal

// Untargeted single-step attack: miniature poodle 0.566, toy poodle 0.428.
inline PredictionVector MildAttackLogits() {
  std::vector<std::size_t> order = {kMiniaturePoodle, kToyPoodle,
                                    kStandardPoodle, kCockerSpaniel,
                                    kIrishWaterSpaniel, kSeatBelt};
  for (std::size_t c = kSnowmobile; c < kNumCategories; ++c) order.push_back(c);

  std::vector<double> probs = {0.566, 0.428, 0.004, 0.0004, 6.42e-5};
  double rest = 1.0;
  for (double p : probs) rest -= p;
  // Geometric decay over the remaining categories, scaled to the leftover
  // mass; the largest of these stays well below 6.42e-5.
  const std::size_t m = kNumCategories - probs.size();
  const double ratio = 0.995;
  const double scale = rest * (1.0 - ratio) / (1.0 - std::pow(ratio, m));
  for (std::size_t i = 0; i < m; ++i) {
    probs.push_back(scale * std::pow(ratio, static_cast<double>(i)));
  }
  return internal::FromProbabilities(order, probs);
}

// Targeted attack: ~0.005 on each of the top twelve, toy poodle at rank 11,
// miniature poodle at rank 4, exactly 613 probabilities >= 0.001.
inline PredictionVector TargetedAttackLogits() {
  std::vector<std::size_t> order = {kSnowmobile, kChesapeakeBayRetriever,
                                    kHyena,      kMiniaturePoodle,
                                    kJeep,       10,
                                    11,          12,
                                    13,          14,
                                    kToyPoodle,  kStandardPoodle,
                                    kCockerSpaniel, kSeatBelt,
                                    kIrishWaterSpaniel};
  for (std::size_t c = 15; c < kNumCategories; ++c) order.push_back(c);

  // Unnormalized weights; the softmax divides by their sum (~1.012), which
  // keeps ranks 13..613 above 0.001 and the rest below it.
  std::vector<double> w;
  w.reserve(kNumCategories);
  for (std::size_t r = 1; r <= 12; ++r) {
    w.push_back(0.0052 - 0.00002 * static_cast<double>(r - 1));
  }
  const std::size_t mid = kTargetedAboveMilli - 12;
  for (std::size_t i = 0; i < mid; ++i) {
    w.push_back(0.00115 - 0.0001 * static_cast<double>(i) /
                              static_cast<double>(mid - 1));
  }
  const std::size_t low = kNumCategories - kTargetedAboveMilli;
  for (std::size_t i = 0; i < low; ++i) {
    w.push_back(0.0009 - 0.0003 * static_cast<double>(i) /
                             static_cast<double>(low - 1));
  }
  return internal::FromProbabilities(order, w);
}

inline EvalRecord MakeRecord(std::string id, std::string condition,
                             PredictionVector perturbed) {
  EvalRecord r;
  r.id = std::move(id);
  r.condition = std::move(condition);
  r.true_category = CategoryId{kToyPoodle};
  r.benign = BenignLogits();
  r.perturbed = std::move(perturbed);
  r.labels = Labels();
  return r;
}

inline EvalRecord BenignRecord() {
  return MakeRecord("toy_poodle_benign", "benign", BenignLogits());
}
inline EvalRecord MildAttackRecord() {
  return MakeRecord("toy_poodle_fgsm", "fgsm", MildAttackLogits());
}
inline EvalRecord TargetedAttackRecord() {
  return MakeRecord("toy_poodle_cw", "cw_targeted", TargetedAttackLogits());
}

inline std::vector<EvalRecord> Records() {
  return {BenignRecord(), MildAttackRecord(), TargetedAttackRecord()};
}

}  // namespace advrank::worked_example
