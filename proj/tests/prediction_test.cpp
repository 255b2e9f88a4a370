#include "advrank/prediction.hpp"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace advrank {
namespace {

EvalRecord MakeRecord(std::vector<double> benign, std::vector<double> perturbed,
                      std::size_t truth) {
  EvalRecord r;
  r.id = "rec-7";
  r.condition = "fgsm";
  r.true_category = CategoryId{truth};
  r.benign.logits = std::move(benign);
  r.perturbed.logits = std::move(perturbed);
  return r;
}

ErrorKind KindOf(const EvalRecord& r) {
  try {
    ValidateRecord(r);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kIoError;
}

TEST(ValidateRecord, AcceptsValidRecordUnchanged) {
  const auto r = MakeRecord({1, 2, 3}, {3, 2, 1}, 0);
  EXPECT_EQ(ValidateRecord(r), r);
}

TEST(ValidateRecord, RejectsDegenerateBenign) {
  EXPECT_EQ(KindOf(MakeRecord({5, 5, 5}, {3, 2, 1}, 0)),
            ErrorKind::kDegenerateLogits);
}

TEST(ValidateRecord, RejectsDegeneratePerturbed) {
  EXPECT_EQ(KindOf(MakeRecord({1, 2, 3}, {4, 4, 4}, 0)),
            ErrorKind::kDegenerateLogits);
}

TEST(ValidateRecord, RejectsSingleCategory) {
  EXPECT_EQ(KindOf(MakeRecord({1}, {1}, 0)), ErrorKind::kDegenerateLogits);
}

TEST(ValidateRecord, RejectsLengthMismatch) {
  EXPECT_EQ(KindOf(MakeRecord({1, 2, 3}, {1, 2, 3, 4}, 0)),
            ErrorKind::kLengthMismatch);
}

TEST(ValidateRecord, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(KindOf(MakeRecord({1, nan, 3}, {3, 2, 1}, 0)),
            ErrorKind::kNonFiniteValue);
  EXPECT_EQ(KindOf(MakeRecord({1, 2, 3}, {3, -inf, 1}, 0)),
            ErrorKind::kNonFiniteValue);
}

TEST(ValidateRecord, RejectsCategoryOutOfRange) {
  EXPECT_EQ(KindOf(MakeRecord({1, 2, 3}, {3, 2, 1}, 3)),
            ErrorKind::kCategoryOutOfRange);
}

TEST(ValidateRecord, RejectsLabelsOfWrongLength) {
  auto r = MakeRecord({1, 2, 3}, {3, 2, 1}, 0);
  r.labels = {"a", "b"};
  EXPECT_EQ(KindOf(r), ErrorKind::kLengthMismatch);
}

TEST(ValidateRecord, ErrorNamesFieldAndRecord) {
  try {
    ValidateRecord(MakeRecord({1, 2, 3}, {1, 2}, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.field(), "perturbed");
    EXPECT_EQ(e.record_id(), "rec-7");
    EXPECT_NE(std::string(e.what()).find("rec-7"), std::string::npos);
  }
}

TEST(ValidateRecord, ReportsFirstViolationInFieldOrder) {
  // Out-of-range category, degenerate benign, mismatched perturbed: the
  // category comes first.
  EXPECT_EQ(KindOf(MakeRecord({5, 5}, {1, 2, 3}, 9)),
            ErrorKind::kCategoryOutOfRange);
  // Degenerate benign precedes the perturbed length check.
  EXPECT_EQ(KindOf(MakeRecord({5, 5}, {1, 2, 3}, 0)),
            ErrorKind::kDegenerateLogits);
  // Within one vector, non-finite wins over degenerate.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(KindOf(MakeRecord({nan, nan}, {1, 2}, 0)),
            ErrorKind::kNonFiniteValue);
}

TEST(ValidateRecord, IsIdempotent) {
  testing::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const auto r = gen.Record();
    const auto once = ValidateRecord(r);
    EXPECT_EQ(ValidateRecord(once), once);
    EXPECT_EQ(once, r);
  }
}

TEST(ValidateConfig, RejectsOutOfRangeValues) {
  MetricConfig c;
  EXPECT_NO_THROW(ValidateConfig(c));
  c.gamma_b = 1.5;
  EXPECT_THROW(ValidateConfig(c), Error);
  c = {};
  c.gamma_a = -0.1;
  EXPECT_THROW(ValidateConfig(c), Error);
  c = {};
  c.drr_k = 0;
  EXPECT_THROW(ValidateConfig(c), Error);
  c = {};
  c.curve_depth = 0;
  EXPECT_THROW(ValidateConfig(c), Error);
}

}  // namespace
}  // namespace advrank
