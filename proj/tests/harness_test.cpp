#include "advrank/harness.hpp"

#include "advrank/fixtures.hpp"
#include "advrank/worked_example.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace advrank {
namespace {

namespace we = worked_example;

ScenarioSpec Spec(ScenarioKind kind, std::size_t n, std::uint64_t seed,
                  std::size_t count) {
  ScenarioSpec s;
  s.kind = kind;
  s.n = n;
  s.seed = seed;
  s.count = count;
  return s;
}

TEST(EvaluateRecord, MildAttack) {
  const auto rep = EvaluateRecord(we::MildAttackRecord(), MetricConfig{});
  EXPECT_EQ(rep.id, "toy_poodle_fgsm");
  EXPECT_NEAR(rep.ndcg_1, 0.977, 1e-3);
  EXPECT_NEAR(rep.drr, 0.476, 1e-3);
  EXPECT_EQ(rep.drr_rank, 2u);
  EXPECT_FALSE(rep.top1_hit);
  EXPECT_TRUE(rep.top5_hit);
  EXPECT_EQ(rep.ndcg_curve.size(), 10u);
  EXPECT_EQ(rep.ndcg_1, rep.ndcg_curve[0]);
}

TEST(EvaluateRecord, Identity) {
  const auto rep = EvaluateRecord(we::BenignRecord(), MetricConfig{});
  EXPECT_EQ(rep.ndcg_total, 1.0);
  EXPECT_GE(rep.drr, 0.5);
  EXPECT_TRUE(rep.top1_hit);
}

TEST(EvaluateRecord, TargetedAttack) {
  const auto rep = EvaluateRecord(we::TargetedAttackRecord(), MetricConfig{});
  EXPECT_EQ(rep.ndcg_1, 0.0);
  EXPECT_EQ(rep.drr, 0.0);
  EXPECT_FALSE(rep.drr_rank.has_value());
  EXPECT_FALSE(rep.top5_hit);
  EXPECT_EQ(rep.k2, 613u);
}

TEST(EvaluateRecord, TagsErrorsWithRecordId) {
  EvalRecord bad{"bad-1", "c", CategoryId{0}, {{1, 1}}, {{1, 2}}, {}};
  try {
    EvaluateRecord(bad, MetricConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateLogits);
    EXPECT_EQ(e.record_id(), "bad-1");
  }
}

TEST(EvaluateGroup, IdentityGroup) {
  const auto records = Generate(Spec(ScenarioKind::kIdentity, 50, 1, 20));
  const auto g = EvaluateGroup(records, MetricConfig{}, false);
  EXPECT_EQ(g.summary.count, 20u);
  EXPECT_EQ(g.summary.ndcg_total.mean, 1.0);
  EXPECT_EQ(g.summary.ndcg_total.stddev, 0.0);
  EXPECT_EQ(g.summary.top1_hit.mean, 1.0);
  for (double v : g.summary.mean_curve) EXPECT_EQ(v, 1.0);
}

TEST(EvaluateGroup, WorkedExampleAttacks) {
  auto mild = we::MildAttackRecord();
  auto targeted = we::TargetedAttackRecord();
  mild.condition = targeted.condition = "attacks";
  const std::vector<EvalRecord> group = {mild, targeted};
  const auto g = EvaluateGroup(group, MetricConfig{}, false);
  EXPECT_EQ(g.summary.count, 2u);
  EXPECT_NEAR(g.summary.ndcg_1.mean, (0.977 + 0.0) / 2, 1e-3);
  EXPECT_EQ(g.summary.top1_hit.mean, 0.0);
  EXPECT_EQ(g.summary.top5_hit.mean, 0.5);
}

TEST(EvaluateGroup, SingletonHasZeroStd) {
  const std::vector<EvalRecord> one = {we::MildAttackRecord()};
  const auto g = EvaluateGroup(one, MetricConfig{}, false);
  EXPECT_EQ(g.summary.ndcg_1.stddev, 0.0);
  EXPECT_EQ(g.summary.drr.stddev, 0.0);
}

TEST(EvaluateGroup, FiltersMisclassifiedBenign) {
  auto records = Generate(Spec(ScenarioKind::kSwapTop2, 30, 2, 6));
  // Make record 3's benign top-1 wrong.
  auto& b = records[3].benign.logits;
  const std::size_t truth = records[3].true_category.index;
  b[truth] = *std::min_element(b.begin(), b.end()) - 1.0;
  EXPECT_EQ(EvaluateGroup(records, MetricConfig{}, false).summary.count, 6u);
  const auto filtered = EvaluateGroup(records, MetricConfig{}, true);
  EXPECT_EQ(filtered.summary.count, 5u);
  for (const auto& rep : filtered.reports) EXPECT_NE(rep.id, records[3].id);
}

TEST(EvaluateGroup, EmptyAfterFilteringIsAnError) {
  EvalRecord wrong{"w", "c", CategoryId{1}, {{3, 2, 1}}, {{3, 2, 1}}, {}};
  const std::vector<EvalRecord> group = {wrong};
  try {
    EvaluateGroup(group, MetricConfig{}, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyGroup);
  }
  EXPECT_THROW(EvaluateGroup({}, MetricConfig{}, false), Error);
}

TEST(EvaluateGroup, RejectsMixedConditions) {
  const std::vector<EvalRecord> group = {we::MildAttackRecord(),
                                         we::TargetedAttackRecord()};
  EXPECT_THROW(EvaluateGroup(group, MetricConfig{}, false), Error);
}

TEST(MeanNdcgCurve, Basics) {
  MetricReport a;
  a.ndcg_curve = {0.2, 0.4, 0.6};
  EXPECT_EQ(MeanNdcgCurve(std::vector<MetricReport>{a}), a.ndcg_curve);
  MetricReport ones, zeros;
  ones.ndcg_curve.assign(10, 1.0);
  zeros.ndcg_curve.assign(10, 0.0);
  EXPECT_EQ(MeanNdcgCurve(std::vector<MetricReport>{ones, zeros}),
            std::vector<double>(10, 0.5));
  EXPECT_THROW(MeanNdcgCurve({}), Error);
  MetricReport short_curve;
  short_curve.ndcg_curve = {1.0};
  EXPECT_THROW(MeanNdcgCurve(std::vector<MetricReport>{ones, short_curve}),
               Error);
}

TEST(MeanNdcgCurve, StrongAttackBelowWeakAttack) {
  // Same seed, so both groups share their benign logits; exchanging rank 1
  // with rank 6 loses more gain at every rank than exchanging it with rank 2.
  ScenarioSpec weak = Spec(ScenarioKind::kSwapTop2, 200, 5, 100);
  ScenarioSpec strong = weak;
  strong.kind = ScenarioKind::kPushDown;
  strong.push_depth = 6;
  const auto weak_records = Generate(weak);
  const auto strong_records = Generate(strong);
  for (std::size_t i = 0; i < weak_records.size(); ++i) {
    ASSERT_EQ(weak_records[i].benign, strong_records[i].benign);
  }
  MetricConfig c;
  c.curve_depth = 12;
  const auto weak_curve =
      EvaluateGroup(weak_records, c, false).summary.mean_curve;
  const auto strong_curve =
      EvaluateGroup(strong_records, c, false).summary.mean_curve;
  for (std::size_t r = 0; r < weak_curve.size(); ++r) {
    EXPECT_LE(strong_curve[r], weak_curve[r]) << "rank " << r + 1;
  }
  EXPECT_LT(strong_curve[0], weak_curve[0]);
}

TEST(EvaluateAll, GroupsByFirstAppearanceAndKeepsInputOrder) {
  std::vector<EvalRecord> records = we::Records();
  records.push_back(we::BenignRecord());
  records.back().id = "again";
  const auto eval = EvaluateAll(records, MetricConfig{}, false);
  ASSERT_EQ(eval.reports.size(), 4u);
  EXPECT_EQ(eval.reports[0].id, "toy_poodle_benign");
  EXPECT_EQ(eval.reports[3].id, "again");
  ASSERT_EQ(eval.summaries.size(), 3u);
  EXPECT_EQ(eval.summaries[0].condition, "benign");
  EXPECT_EQ(eval.summaries[0].count, 2u);
  EXPECT_EQ(eval.summaries[1].condition, "fgsm");
  EXPECT_EQ(eval.summaries[2].condition, "cw_targeted");
}

TEST(EvaluateAll, RejectsBadConfig) {
  MetricConfig c;
  c.gamma_b = 2.0;
  EXPECT_THROW(EvaluateAll(we::Records(), c, false), Error);
}

TEST(HarnessProperties, DeterministicAndConsistent) {
  testing::Gen gen(97);
  std::vector<EvalRecord> records;
  for (int i = 0; i < 300; ++i) {
    auto r = gen.Record(40);
    r.condition = "g" + std::to_string(i % 3);
    records.push_back(r);
  }
  const auto a = EvaluateAll(records, MetricConfig{}, false);
  const auto b = EvaluateAll(records, MetricConfig{}, false);
  EXPECT_EQ(a.reports, b.reports);
  EXPECT_EQ(a.summaries, b.summaries);

  for (const auto& s : a.summaries) {
    double ndcg1 = 0, total = 0, drr = 0, top1 = 0;
    std::size_t count = 0;
    for (const auto& r : a.reports) {
      if (r.condition != s.condition) continue;
      ++count;
      ndcg1 += r.ndcg_1;
      total += r.ndcg_total;
      drr += r.drr;
      top1 += r.top1_hit;
    }
    ASSERT_EQ(count, s.count);
    EXPECT_NEAR(s.ndcg_1.mean, ndcg1 / count, 1e-12);
    EXPECT_NEAR(s.ndcg_total.mean, total / count, 1e-12);
    EXPECT_NEAR(s.drr.mean, drr / count, 1e-12);
    EXPECT_NEAR(s.top1_hit.mean, top1 / count, 1e-12);
    EXPECT_GE(s.ndcg_1.mean, 0.0);
    EXPECT_LE(s.ndcg_1.mean, 1.0);
  }
}

TEST(HarnessProperties, FilteringSoundness) {
  testing::Gen gen(101);
  std::vector<EvalRecord> records;
  for (int i = 0; i < 300; ++i) records.push_back(gen.Record(10));
  const auto eval = EvaluateAll(records, MetricConfig{}, true);
  std::size_t survivors = 0;
  for (const auto& r : records) {
    if (!BenignCorrect(r)) continue;
    ASSERT_LT(survivors, eval.reports.size());
    EXPECT_EQ(eval.reports[survivors].id, r.id);
    ++survivors;
  }
  EXPECT_EQ(survivors, eval.reports.size());
  EXPECT_LT(survivors, records.size());
}

}  // namespace
}  // namespace advrank
