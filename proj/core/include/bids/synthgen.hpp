#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "bids/matrix.hpp"
#include "bids/partition.hpp"

namespace bids {

// Generative model, for column j owned by task k:
//   A_ij = task_mean_offsets[k] + c_j + task_scales[k] * (b_i + e_ij)
//   b_i  ~ N(0, quality_std^2)     per row (shared across columns)
//   c_j  ~ N(0, col_jitter_std^2)  per column
//   e_ij ~ N(0, noise_std^2)       per cell
//
// An optional per-task latent g_ik ~ N(0, task_factor_stds[k]^2), shared by
// the columns of task k, is added inside the scaled term:
//   A_ij = task_mean_offsets[k] + c_j + task_scales[k] * (b_i + g_ik + e_ij)
// It sets how strongly a task's columns co-vary. Unlike offsets and scales,
// this survives column normalization. Empty means all zeros.
struct SynthConfig {
  std::size_t n_train = 0;
  std::size_t m = 0;
  std::size_t cols_per_task = 0;
  std::vector<double> task_mean_offsets;
  std::vector<double> task_scales;
  double quality_std = 0.0;
  double noise_std = 0.0;
  double col_jitter_std = 0.0;
  std::vector<double> task_factor_stds;
  std::uint64_t seed = 0;

  std::size_t n_val() const noexcept { return m * cols_per_task; }
};

// Throws ValidationError naming the offending field.
void validate_config(const SynthConfig& config);

// Deterministic in (config, seed) and independent of the thread count.
std::pair<AttributionMatrix, TaskPartition> generate(const SynthConfig& config);

// Index of the task with the largest mean offset in the preset.
inline constexpr std::size_t kPresetDominantTask = 3;

// 7 tasks x 50 columns, 20,000 rows. Task 3 carries a mean offset three times
// the others; task scales span 0.5..2.0; nonzero column jitter; task factors
// between 0 and 0.45 so tasks differ in how correlated their columns are.
// These are tuning constants chosen to show the bias, not measured values.
SynthConfig preset_biased(std::uint64_t seed);

}  // namespace bids
