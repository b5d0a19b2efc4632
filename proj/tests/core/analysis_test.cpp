#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "bids/analysis.hpp"
#include "bids/error.hpp"
#include "bids/json_io.hpp"
#include "bids/normalize.hpp"
#include "bids/selectors.hpp"
#include "support/oracles.hpp"

namespace bids {
namespace {

using Counts = std::vector<std::size_t>;

TEST(Aid, HandExamples) {
  const auto m = AttributionMatrix::from_rows({{1, 3}, {3, 5}});
  EXPECT_EQ(aid(m), (std::vector<double>{2, 4}));
  const std::vector<std::size_t> subset{1};
  EXPECT_EQ(aid(m, subset), (std::vector<double>{3, 5}));
}

TEST(Aid, FullSelectionOfNormalizedMatrixIsZero) {
  const auto z = normalize_columns(testing::random_matrix(100, 8, 4, 2.0, 7.0));
  std::vector<std::size_t> all(100);
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (double v : aid(z, all)) EXPECT_LT(std::abs(v), 1e-12);
}

TEST(Aid, SubsetErrors) {
  const auto m = AttributionMatrix::from_rows({{1, 3}, {3, 5}});
  const std::vector<std::size_t> empty;
  const std::vector<std::size_t> dup{0, 0};
  const std::vector<std::size_t> out{2};
  EXPECT_THROW(aid(m, empty), ValidationError);
  EXPECT_THROW(aid(m, dup), ValidationError);
  EXPECT_THROW(aid(m, out), IndexError);
}

TEST(Thi, TaskLevelUsesTaskMeans) {
  // Task 0 holds the single largest cell but task 1 has the larger mean.
  const auto m = AttributionMatrix::from_rows({{0.9, -0.7, 0.7, 0.7}});
  TaskPartition p{{"t0", "t1"}, {0, 0, 1, 1}};
  const std::vector<std::size_t> rows{0};
  EXPECT_EQ(thi_task_level(m, p, rows), (Counts{0, 1}));
  EXPECT_EQ(thi_instance_level(m, p, rows), (Counts{1, 0}));
}

TEST(Thi, InstanceLevelUsesArgmaxColumn) {
  const auto m = AttributionMatrix::from_rows({{0.9, 0.1, 0.5}, {0.0, 0.2, 0.8}, {0.3, 0.3, 0.3}});
  TaskPartition p{{"t0", "t1"}, {0, 1, 1}};
  const std::vector<std::size_t> first{0};
  EXPECT_EQ(thi_instance_level(m, p, first), (Counts{1, 0}));
  const std::vector<std::size_t> all{0, 1, 2};
  // Row 2 ties across every column; the lowest column wins.
  EXPECT_EQ(thi_instance_level(m, p, all), (Counts{2, 1}));
}

TEST(Thi, TaskTiesGoToLowerTask) {
  const auto m = AttributionMatrix::from_rows({{1, 1}});
  TaskPartition p{{"a", "b"}, {0, 1}};
  const std::vector<std::size_t> rows{0};
  EXPECT_EQ(thi_task_level(m, p, rows), (Counts{1, 0}));
}

TEST(Thi, CountsSumToSubsetSize) {
  const auto m = testing::random_matrix(90, 12, 6);
  const auto p = TaskPartition::contiguous({"a", "b", "c"}, 4);
  const auto sel = select_bids(m, 33);
  const auto tl = thi_task_level(m, p, sel.indices);
  const auto il = thi_instance_level(m, p, sel.indices);
  EXPECT_EQ(std::accumulate(tl.begin(), tl.end(), std::size_t{0}), 33u);
  EXPECT_EQ(std::accumulate(il.begin(), il.end(), std::size_t{0}), 33u);
}

TEST(Balance, HandExamples) {
  const Counts even{5, 5};
  auto b = balance_metrics(even);
  EXPECT_NEAR(b.entropy, 0.6931471805599453, 1e-15);
  EXPECT_EQ(*b.max_min_ratio, 1.0);

  const Counts single{10, 0};
  b = balance_metrics(single);
  EXPECT_EQ(b.entropy, 0.0);
  EXPECT_FALSE(b.max_min_ratio.has_value());
  EXPECT_EQ(b.max_count, 10u);
  EXPECT_EQ(b.min_count, 0u);
  EXPECT_EQ(to_json(b)["max_min_ratio"], "inf");

  const Counts skew{3, 1};
  b = balance_metrics(skew);
  EXPECT_NEAR(b.entropy, 0.5623351446188083, 1e-15);
  EXPECT_EQ(*b.max_min_ratio, 3.0);
}

TEST(Balance, EntropyBoundedByLogTaskCount) {
  const Counts uniform(7, 11);
  EXPECT_NEAR(balance_metrics(uniform).entropy, std::log(7.0), 1e-14);
  const Counts uneven{1, 2, 3, 4, 5, 6, 7};
  EXPECT_LT(balance_metrics(uneven).entropy, std::log(7.0));
}

TEST(Balance, Errors) {
  const Counts empty;
  const Counts zeros{0, 0};
  EXPECT_THROW(balance_metrics(empty), ValidationError);
  EXPECT_THROW(balance_metrics(zeros), ValidationError);
}

TEST(Report, CombinesMetrics) {
  const auto raw = testing::random_matrix(60, 6, 21, 1.0, 2.0);
  const auto z = normalize_columns(raw);
  const auto p = TaskPartition::contiguous({"x", "y"}, 3);
  const auto sel = select_bids(z, 20);
  const auto r = report(z, p, sel, z);
  EXPECT_EQ(r.method, "bids");
  EXPECT_EQ(r.budget, 20u);
  EXPECT_EQ(r.aid, aid(z, std::span<const std::size_t>(sel.indices)));
  EXPECT_EQ(r.thi_instance, thi_instance_level(z, p, sel.indices));
  EXPECT_EQ(r.thi_task, thi_task_level(z, p, sel.indices));
  EXPECT_EQ(r.balance.entropy, balance_metrics(r.thi_instance).entropy);

  const auto raw_report = report(raw, p, select_bids(raw, 20), z, AidMode::raw);
  EXPECT_EQ(raw_report.aid_mode, AidMode::raw);
  const auto sel_raw = select_bids(raw, 20);
  EXPECT_EQ(raw_report.aid, aid(raw, std::span<const std::size_t>(sel_raw.indices)));

  const auto back = report_from_json(to_json(r));
  EXPECT_EQ(back.thi_instance, r.thi_instance);
  EXPECT_EQ(back.aid, r.aid);
  EXPECT_EQ(back.method, r.method);
}

}  // namespace
}  // namespace bids
