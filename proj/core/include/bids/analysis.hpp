#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bids/matrix.hpp"
#include "bids/partition.hpp"
#include "bids/selection.hpp"

namespace bids {

// Column-wise mean over the given rows (all rows when subset is empty-optional).
// Throws ValidationError for an empty or duplicated subset, IndexError for an
// out-of-range row.
std::vector<double> aid(const AttributionMatrix& matrix,
                        std::optional<std::span<const std::size_t>> subset = std::nullopt);

// Per row, the task with the highest mean influence gets one count.
std::vector<std::size_t> thi_task_level(const AttributionMatrix& matrix,
                                        const TaskPartition& partition,
                                        std::span<const std::size_t> subset);

// Per row, the task owning the row's argmax column gets one count.
std::vector<std::size_t> thi_instance_level(const AttributionMatrix& matrix,
                                            const TaskPartition& partition,
                                            std::span<const std::size_t> subset);

struct BalanceMetrics {
  double entropy = 0.0;                 // nats
  std::optional<double> max_min_ratio;  // nullopt encodes infinity (min == 0)
  std::size_t max_count = 0;
  std::size_t min_count = 0;
};

// Throws ValidationError when the counts are empty or sum to zero.
BalanceMetrics balance_metrics(std::span<const std::size_t> counts);

enum class AidMode { normalized, raw };

struct AnalysisReport {
  std::string method;
  std::size_t budget = 0;
  AidMode aid_mode = AidMode::normalized;
  std::vector<double> aid;
  std::vector<std::size_t> thi_task;
  std::vector<std::size_t> thi_instance;
  BalanceMetrics balance;  // of thi_instance
};

// AID over `normalized` (or `selection_matrix` in raw mode) restricted to the
// selected rows; both THI variants over `selection_matrix`, the matrix the
// selector actually saw.
AnalysisReport report(const AttributionMatrix& selection_matrix,
                      const TaskPartition& partition, const SelectionResult& selection,
                      const AttributionMatrix& normalized,
                      AidMode aid_mode = AidMode::normalized);

}  // namespace bids
