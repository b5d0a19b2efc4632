#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "bids/matrix.hpp"
#include "bids/partition.hpp"
#include "bids/selection.hpp"

namespace bids {

enum class TaskAggregator { sum, mean };

// Top-B rows by score, descending; ties go to the lower index. Utilities are
// the selected scores. Throws BudgetError when budget is 0 or > scores.size()
// and ValidationError for non-finite scores.
SelectionResult select_top_by_score(std::span<const double> scores, std::size_t budget,
                                    Method method);

// score_i = max_j A_ij
SelectionResult select_instance_max(const AttributionMatrix& matrix, std::size_t budget);

// score_i = sum_j A_ij
SelectionResult select_sum(const AttributionMatrix& matrix, std::size_t budget);

// score_i = max_k agg_{j in task k} A_ij, with agg = sum (default) or mean.
SelectionResult select_task_max(const AttributionMatrix& matrix,
                                const TaskPartition& partition, std::size_t budget,
                                TaskAggregator aggregator = TaskAggregator::sum);

// Uniform sample without replacement: partial Fisher-Yates over [0, n_train)
// driven by Xoshiro256** seeded through SplitMix64 (see rng.hpp).
SelectionResult select_random(std::size_t n_train, std::size_t budget, std::uint64_t seed);

// Instance-wise max over a training x validation cosine-similarity matrix.
SelectionResult select_rds(const AttributionMatrix& similarity, std::size_t budget);

// Iterative selection favoring underrepresented validation instances.
//
// Keeps the running column mean A_T of the rows picked so far (the zero
// vector while nothing is picked) and at every step picks the unpicked row
// maximizing max_j (A_ij - A_T[j]); ties go to the lower row index.
// Utilities are recorded in selection order. Does not normalize internally.
SelectionResult select_bids(const AttributionMatrix& matrix, std::size_t budget);

}  // namespace bids
