#pragma once

// Seeded synthetic benign/perturbed pairs for property tests and demos.
//
// These are test scaffolding, not a model of real attacks. Benign logits have
// a clear winner at the true category (rank 1 sits `benign_gap` above rank 2),
// a head of eight closely spaced runners-up, and a long low tail. Perturbed
// logits are derived per scenario kind.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "advrank/error.hpp"
#include "advrank/prediction.hpp"

namespace advrank {

enum class ScenarioKind {
  kIdentity,
  // Exchange the two largest logits.
  kSwapTop2,
  // Exchange the true category's logit with the push_depth-th largest.
  kPushDown,
  // Scale deviations from the mean by flatten_factor; order is preserved.
  kFlatten,
  // Fresh logits with the true category ranked below 5.
  kRandomWrong,
};

inline std::string_view ScenarioKindName(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kIdentity: return "identity";
    case ScenarioKind::kSwapTop2: return "swap_top2";
    case ScenarioKind::kPushDown: return "push_down";
    case ScenarioKind::kFlatten: return "flatten";
    case ScenarioKind::kRandomWrong: return "random_wrong";
  }
  return "unknown";
}

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kIdentity;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::size_t push_depth = 6;
  double flatten_factor = 0.5;
  double benign_gap = 1.5;
  // Defaults to a name derived from kind and parameters.
  std::string condition;
};

inline std::string DefaultCondition(const ScenarioSpec& spec) {
  std::string name(ScenarioKindName(spec.kind));
  if (spec.kind == ScenarioKind::kPushDown) {
    name += "_" + std::to_string(spec.push_depth);
  } else if (spec.kind == ScenarioKind::kFlatten) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_%g", spec.flatten_factor);
    name += buf;
  }
  return name;
}

inline void ValidateSpec(const ScenarioSpec& spec) {
  if (spec.n < 2) throw Error(ErrorKind::kInvalidSpec, "must be >= 2", "n");
  if (spec.count < 1) {
    throw Error(ErrorKind::kInvalidSpec, "must be >= 1", "count");
  }
  if (spec.kind == ScenarioKind::kPushDown &&
      (spec.push_depth < 2 || spec.push_depth > spec.n)) {
    throw Error(ErrorKind::kInvalidSpec, "must lie in [2, n]", "push_depth");
  }
  if (spec.kind == ScenarioKind::kFlatten &&
      !(spec.flatten_factor > 0.0 && spec.flatten_factor <= 1.0)) {
    throw Error(ErrorKind::kInvalidSpec, "must lie in (0, 1]",
                "flatten_factor");
  }
  if (spec.kind == ScenarioKind::kRandomWrong && spec.n < 6) {
    throw Error(ErrorKind::kInvalidSpec,
                "random_wrong needs n >= 6 to rank the true category below 5",
                "n");
  }
  if (!(std::isfinite(spec.benign_gap) && spec.benign_gap > 0.0)) {
    throw Error(ErrorKind::kInvalidSpec, "must be positive", "benign_gap");
  }
}

namespace internal {

// Standard distributions are implementation-defined; these helpers keep the
// output identical across standard libraries for a given seed.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}

  double Uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // Uniform integer in [0, bound).
  std::size_t Index(std::size_t bound) {
    return static_cast<std::size_t>(Uniform(0.0, 1.0) *
                                    static_cast<double>(bound));
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::size_t kHeadSize = 8;

// Strictly decreasing logit values, largest first.
inline std::vector<double> DescendingLogits(FixtureRng& rng, std::size_t n,
                                            double gap) {
  std::vector<double> values;
  values.reserve(n);
  double runner_up = 10.0;
  values.push_back(runner_up + gap);
  double v = runner_up;
  for (std::size_t i = 0; i < kHeadSize && values.size() < n; ++i) {
    values.push_back(v);
    v -= rng.Uniform(0.2, 0.5);
  }
  const double tail_top = values.back() - 2.0;
  std::vector<double> tail;
  while (values.size() + tail.size() < n) {
    tail.push_back(rng.Uniform(-4.0, tail_top));
  }
  std::sort(tail.begin(), tail.end(), std::greater<>());
  values.insert(values.end(), tail.begin(), tail.end());
  return values;
}

// Assigns descending `values` to categories so that category order[r] gets
// values[r].
inline std::vector<double> AssignByRank(const std::vector<double>& values,
                                        const std::vector<std::size_t>& order) {
  std::vector<double> out(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = values[r];
  return out;
}

}  // namespace internal

inline std::vector<EvalRecord> Generate(const ScenarioSpec& spec) {
  ValidateSpec(spec);
  const std::string condition =
      spec.condition.empty() ? DefaultCondition(spec) : spec.condition;
  internal::FixtureRng rng(spec.seed);
  std::vector<EvalRecord> out;
  out.reserve(spec.count);

  for (std::size_t i = 0; i < spec.count; ++i) {
    const std::size_t n = spec.n;
    const std::size_t truth = rng.Index(n);

    // Benign ranking: truth first, the rest shuffled.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::swap(order[0], order[truth]);
    std::vector<std::size_t> rest(order.begin() + 1, order.end());
    rng.Shuffle(rest);
    std::copy(rest.begin(), rest.end(), order.begin() + 1);

    const std::vector<double> values =
        internal::DescendingLogits(rng, n, spec.benign_gap);

    EvalRecord record;
    record.id = condition + "-" + std::to_string(i);
    record.condition = condition;
    record.true_category = CategoryId{truth};
    record.benign.logits = internal::AssignByRank(values, order);

    switch (spec.kind) {
      case ScenarioKind::kIdentity:
        record.perturbed = record.benign;
        break;
      case ScenarioKind::kSwapTop2:
      case ScenarioKind::kPushDown: {
        const std::size_t depth =
            spec.kind == ScenarioKind::kSwapTop2 ? 2 : spec.push_depth;
        std::vector<std::size_t> moved = order;
        std::swap(moved[0], moved[depth - 1]);
        record.perturbed.logits = internal::AssignByRank(values, moved);
        break;
      }
      case ScenarioKind::kFlatten: {
        const auto& b = record.benign.logits;
        const double mean =
            std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
        record.perturbed.logits.resize(n);
        for (std::size_t c = 0; c < n; ++c) {
          record.perturbed.logits[c] = mean + spec.flatten_factor * (b[c] - mean);
        }
        break;
      }
      case ScenarioKind::kRandomWrong: {
        const std::vector<double> fresh =
            internal::DescendingLogits(rng, n, spec.benign_gap);
        std::vector<std::size_t> others;
        others.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c) {
          if (c != truth) others.push_back(c);
        }
        rng.Shuffle(others);
        // 0-based slot in [5, n).
        const std::size_t slot = 5 + rng.Index(n - 5);
        std::vector<std::size_t> wrong;
        wrong.reserve(n);
        wrong.insert(wrong.end(), others.begin(), others.begin() + slot);
        wrong.push_back(truth);
        wrong.insert(wrong.end(), others.begin() + slot, others.end());
        record.perturbed.logits = internal::AssignByRank(fresh, wrong);
        break;
      }
    }
    out.push_back(std::move(record));
  }
  return out;
}

}  // namespace advrank
