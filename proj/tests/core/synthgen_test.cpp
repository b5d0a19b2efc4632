#include <cmath>

#include <gtest/gtest.h>

#include "bids/analysis.hpp"
#include "bids/error.hpp"
#include "bids/json_io.hpp"
#include "bids/parallel.hpp"
#include "bids/selectors.hpp"
#include "bids/synthgen.hpp"

namespace bids {
namespace {

SynthConfig small_config(std::uint64_t seed) {
  SynthConfig c;
  c.n_train = 400;
  c.m = 2;
  c.cols_per_task = 20;
  c.task_mean_offsets = {0.0, 5.0};
  c.task_scales = {1.0, 1.0};
  c.quality_std = 0.3;
  c.noise_std = 0.3;
  c.col_jitter_std = 0.0;
  c.seed = seed;
  return c;
}

TEST(Synthgen, NoiselessConfigReproducesOffsets) {
  SynthConfig c;
  c.n_train = 3;
  c.m = 2;
  c.cols_per_task = 1;
  c.task_mean_offsets = {1, 2};
  c.task_scales = {1, 1};
  const auto [a, p] = generate(c);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a(i, 0), 1.0);
    EXPECT_EQ(a(i, 1), 2.0);
  }
  EXPECT_EQ(p.task_names, (std::vector<std::string>{"task0", "task1"}));
  EXPECT_EQ(p.assignment, (std::vector<std::size_t>{0, 1}));
}

TEST(Synthgen, DeterministicPerSeed) {
  EXPECT_EQ(generate(small_config(1)).first, generate(small_config(1)).first);
  EXPECT_NE(generate(small_config(1)).first, generate(small_config(2)).first);
}

TEST(Synthgen, ColumnMeansFollowTaskOffsets) {
  const auto [a, p] = generate(small_config(3));
  double means[2] = {0, 0};
  for (std::size_t j = 0; j < a.n_val(); ++j) {
    for (std::size_t i = 0; i < a.n_train(); ++i) means[p.assignment[j]] += a(i, j);
  }
  const double per_task = static_cast<double>(a.n_train() * 20);
  EXPECT_NEAR(means[1] / per_task - means[0] / per_task, 5.0, 0.1);
}

TEST(Synthgen, IndependentOfThreadCount) {
  auto c = small_config(9);
  c.task_factor_stds = {0.2, 0.4};
  c.col_jitter_std = 0.1;
  const auto parallel = generate(c).first;
  ParallelismLimit one(1);
  EXPECT_EQ(generate(c).first, parallel);
}

TEST(Synthgen, ValidationNamesTheField) {
  auto c = small_config(0);
  c.noise_std = -1.0;
  try {
    validate_config(c);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("noise_std"), std::string::npos);
  }

  c = small_config(0);
  c.task_scales = {1.0};
  EXPECT_THROW(generate(c), ValidationError);

  c = small_config(0);
  c.n_train = 0;
  EXPECT_THROW(generate(c), ValidationError);

  c = small_config(0);
  c.task_factor_stds = {0.1, 0.1, 0.1};
  EXPECT_THROW(generate(c), ValidationError);
}

TEST(Synthgen, ConfigJsonRoundTrip) {
  auto c = preset_biased(17);
  const auto back = synth_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(back.seed, 17u);
  EXPECT_EQ(back.task_factor_stds, c.task_factor_stds);
}

TEST(Synthgen, PresetRawSelectionFavoursDominantTask) {
  auto c = preset_biased(0);
  c.n_train = 4000;
  const auto [a, p] = generate(c);
  const auto sel = select_instance_max(a, 400);
  const auto counts = thi_instance_level(a, p, sel.indices);
  EXPECT_GT(static_cast<double>(counts[kPresetDominantTask]) / 400.0, 0.5);
}

}  // namespace
}  // namespace bids
