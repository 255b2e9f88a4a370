#pragma once

// NDCG of a perturbed prediction list, graded against the benign list.
//
// Relevance comes from the benign prediction itself: the categories whose
// benign softmax probability reaches gamma_b share a unit of relevance in
// proportion to their min-max rescaled logits. The perturbed list inherits
// those relevances by category identity for its leading k2 positions (those
// with probability >= gamma_a). Gains are 2^rel - 1 discounted by
// log2(1 + rank), and each rank's cumulative DCG is divided by the benign
// cumulative DCG at the same rank.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "advrank/error.hpp"
#include "advrank/prediction.hpp"
#include "advrank/ranking.hpp"

namespace advrank {

struct RelevanceAssignment {
  // Indexed by category.
  std::vector<double> by_category;
  // Indexed by 0-based rank of the list the assignment was built for.
  std::vector<double> by_position;
  // Number of leading positions eligible for relevance (k1 or k2).
  std::size_t k = 0;
};

// Cumulative DCG; values[r - 1] is the DCG at rank r.
struct DcgCurve {
  std::vector<double> values;

  double at_rank(std::size_t r) const { return values.at(r - 1); }
};

struct NdcgResult {
  // curve[r - 1] is the NDCG at rank r, for r = 1..curve_depth.
  std::vector<double> curve;
  double total = 0.0;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
};

inline RelevanceAssignment BenignRelevance(const PredictionVector& benign,
                                           double gamma_b) {
  const RankedList ranked = RankDescending(Softmax(benign));
  const std::vector<double> rescaled = MinMaxRescale(benign);
  const std::size_t n = benign.size();

  RelevanceAssignment out;
  // Clamped so the top category always carries relevance and the NDCG
  // denominator stays positive.
  out.k = std::max<std::size_t>(1, CountAboveThreshold(ranked, gamma_b));

  double norm = 0.0;
  for (std::size_t r = 0; r < out.k; ++r) {
    norm += rescaled[ranked[r].category.index];
  }
  out.by_category.assign(n, 0.0);
  out.by_position.assign(n, 0.0);
  for (std::size_t r = 0; r < out.k; ++r) {
    const std::size_t c = ranked[r].category.index;
    out.by_category[c] = rescaled[c] / norm;
    out.by_position[r] = out.by_category[c];
  }
  return out;
}

inline RelevanceAssignment AdversarialRelevance(
    const PredictionVector& perturbed, const RelevanceAssignment& benign_rel,
    double gamma_a) {
  const std::size_t n = perturbed.size();
  if (benign_rel.by_category.size() != n) {
    throw Error(ErrorKind::kLengthMismatch,
                "perturbed list and benign relevance differ in length",
                "perturbed");
  }
  const RankedList ranked = RankDescending(Softmax(perturbed));

  RelevanceAssignment out;
  out.k = CountAboveThreshold(ranked, gamma_a);
  out.by_category.assign(n, 0.0);
  out.by_position.assign(n, 0.0);
  for (std::size_t r = 0; r < out.k; ++r) {
    const std::size_t c = ranked[r].category.index;
    out.by_category[c] = benign_rel.by_category[c];
    out.by_position[r] = out.by_category[c];
  }
  return out;
}

inline double DcgGain(double relevance, std::size_t rank) {
  return (std::exp2(relevance) - 1.0) / std::log2(1.0 + static_cast<double>(rank));
}

// Positions past the end of `rel_by_position` contribute zero gain.
inline DcgCurve Dcg(std::span<const double> rel_by_position,
                    std::size_t depth) {
  DcgCurve out;
  out.values.resize(depth);
  double sum = 0.0;
  for (std::size_t r = 1; r <= depth; ++r) {
    if (r <= rel_by_position.size()) sum += DcgGain(rel_by_position[r - 1], r);
    out.values[r - 1] = sum;
  }
  return out;
}

inline NdcgResult Ndcg(const EvalRecord& record, const MetricConfig& config) {
  const RelevanceAssignment benign_rel =
      BenignRelevance(record.benign, config.gamma_b);
  const RelevanceAssignment adv_rel =
      AdversarialRelevance(record.perturbed, benign_rel, config.gamma_a);

  // Both relevance sequences vanish beyond n, so evaluating to
  // max(n, curve_depth) covers the requested curve and the saturated total.
  const std::size_t full = std::max(record.num_categories(), config.curve_depth);
  const DcgCurve benign_dcg = Dcg(benign_rel.by_position, full);
  const DcgCurve adv_dcg = Dcg(adv_rel.by_position, full);

  // Ratios can exceed 1 only by rounding, when the adversarial list holds
  // the same relevances as the benign prefix in a different order.
  auto ratio = [&](std::size_t i) {
    return std::min(1.0, adv_dcg.values[i] / benign_dcg.values[i]);
  };

  NdcgResult out;
  out.k1 = benign_rel.k;
  out.k2 = adv_rel.k;
  out.curve.resize(config.curve_depth);
  for (std::size_t i = 0; i < config.curve_depth; ++i) out.curve[i] = ratio(i);
  out.total = ratio(full - 1);
  return out;
}

inline double NdcgAt1(const EvalRecord& record, const MetricConfig& config) {
  MetricConfig one = config;
  one.curve_depth = 1;
  return Ndcg(record, one).curve.front();
}

}  // namespace advrank
