#include "bids/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "bids/error.hpp"
#include "bids/rng.hpp"

namespace bids {
namespace {

// Substream tags. Every random quantity comes from its own
// Xoshiro256::substream(seed, tag, index), so rows can be generated in any
// order on any number of threads.
enum Stream : std::uint64_t {
  kRowQuality = 1,  // index = row; one draw
  kColJitter = 2,   // index = column; one draw
  kCellNoise = 3,   // index = row; n_val draws in column order
  kTaskFactor = 4,  // index = row; m draws in task order
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

bool nonnegative_finite(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void validate_config(const SynthConfig& config) {
  require(config.n_train >= 1, "n_train must be >= 1");
  require(config.m >= 1, "m must be >= 1");
  require(config.cols_per_task >= 1, "cols_per_task must be >= 1");
  require(config.task_mean_offsets.size() == config.m,
          "task_mean_offsets must have m = " + std::to_string(config.m) + " entries");
  require(config.task_scales.size() == config.m,
          "task_scales must have m = " + std::to_string(config.m) + " entries");
  for (std::size_t k = 0; k < config.m; ++k) {
    require(std::isfinite(config.task_mean_offsets[k]),
            "task_mean_offsets[" + std::to_string(k) + "] must be finite");
    require(std::isfinite(config.task_scales[k]) && config.task_scales[k] > 0.0,
            "task_scales[" + std::to_string(k) + "] must be > 0");
  }
  require(nonnegative_finite(config.quality_std), "quality_std must be >= 0");
  require(nonnegative_finite(config.noise_std), "noise_std must be >= 0");
  require(nonnegative_finite(config.col_jitter_std), "col_jitter_std must be >= 0");
  require(config.task_factor_stds.empty() || config.task_factor_stds.size() == config.m,
          "task_factor_stds must be empty or have m = " + std::to_string(config.m) +
              " entries");
  for (std::size_t k = 0; k < config.task_factor_stds.size(); ++k) {
    require(nonnegative_finite(config.task_factor_stds[k]),
            "task_factor_stds[" + std::to_string(k) + "] must be >= 0");
  }
}

std::pair<AttributionMatrix, TaskPartition> generate(const SynthConfig& config) {
  validate_config(config);
  const std::size_t n = config.n_train;
  const std::size_t v = config.n_val();

  std::vector<double> column_offset(v);
  std::vector<double> column_scale(v);
  for (std::size_t j = 0; j < v; ++j) {
    const std::size_t k = j / config.cols_per_task;
    auto rng = Xoshiro256::substream(config.seed, kColJitter, j);
    column_offset[j] = config.task_mean_offsets[k] + config.col_jitter_std * rng.normal();
    column_scale[j] = config.task_scales[k];
  }

  const bool task_factors =
      std::any_of(config.task_factor_stds.begin(), config.task_factor_stds.end(),
                  [](double s) { return s > 0.0; });

  std::vector<double> values(n * v);
  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n),
                    [&](const tbb::blocked_range<std::size_t>& range) {
                      for (std::size_t i = range.begin(); i != range.end(); ++i) {
                        auto quality_rng = Xoshiro256::substream(config.seed, kRowQuality, i);
                        const double quality = config.quality_std * quality_rng.normal();
                        std::vector<double> latent(config.m, quality);
                        if (task_factors) {
                          auto factor_rng = Xoshiro256::substream(config.seed, kTaskFactor, i);
                          for (std::size_t k = 0; k < config.m; ++k) {
                            latent[k] += config.task_factor_stds[k] * factor_rng.normal();
                          }
                        }
                        auto noise_rng = Xoshiro256::substream(config.seed, kCellNoise, i);
                        double* row = values.data() + i * v;
                        for (std::size_t j = 0; j < v; ++j) {
                          const double noise = config.noise_std * noise_rng.normal();
                          row[j] = column_offset[j] +
                                   column_scale[j] * (latent[j / config.cols_per_task] + noise);
                        }
                      }
                    });

  std::vector<std::string> names;
  names.reserve(config.m);
  for (std::size_t k = 0; k < config.m; ++k) names.push_back("task" + std::to_string(k));
  return {AttributionMatrix(n, v, std::move(values)),
          TaskPartition::contiguous(std::move(names), config.cols_per_task)};
}

SynthConfig preset_biased(std::uint64_t seed) {
  SynthConfig config;
  config.n_train = 20'000;
  config.m = 7;
  config.cols_per_task = 50;
  config.task_mean_offsets = {1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0};
  config.task_scales = {0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  config.quality_std = 0.3;
  config.noise_std = 0.3;
  config.col_jitter_std = 0.1;
  // Tasks 0 and 3 have independent columns; the rest co-vary to varying degrees.
  config.task_factor_stds = {0.0, 0.15, 0.3, 0.0, 0.45, 0.075, 0.225};
  config.seed = seed;
  return config;
}

}  // namespace bids
