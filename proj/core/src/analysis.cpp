#include "bids/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bids/error.hpp"

namespace bids {
namespace {

void check_subset(std::span<const std::size_t> subset, std::size_t n_train) {
  if (subset.empty()) throw ValidationError("subset is empty");
  std::vector<bool> seen(n_train, false);
  for (const std::size_t i : subset) {
    if (i >= n_train) {
      throw IndexError("row " + std::to_string(i) + " out of range [0, " +
                       std::to_string(n_train) + ")");
    }
    if (seen[i]) throw ValidationError("row " + std::to_string(i) + " listed twice");
    seen[i] = true;
  }
}

}  // namespace

std::vector<double> aid(const AttributionMatrix& matrix,
                        std::optional<std::span<const std::size_t>> subset) {
  std::vector<double> mean(matrix.n_val(), 0.0);
  auto add_row = [&](std::size_t i) {
    const auto row = matrix.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) mean[j] += row[j];
  };
  std::size_t count = 0;
  if (subset) {
    check_subset(*subset, matrix.n_train());
    for (const std::size_t i : *subset) add_row(i);
    count = subset->size();
  } else {
    for (std::size_t i = 0; i < matrix.n_train(); ++i) add_row(i);
    count = matrix.n_train();
  }
  for (double& x : mean) x /= static_cast<double>(count);
  return mean;
}

std::vector<std::size_t> thi_task_level(const AttributionMatrix& matrix,
                                        const TaskPartition& partition,
                                        std::span<const std::size_t> subset) {
  validate_partition(partition, matrix.n_val());
  check_subset(subset, matrix.n_train());
  const std::size_t m = partition.num_tasks();
  std::vector<double> sizes(m, 0.0);
  for (const std::size_t k : partition.assignment) sizes[k] += 1.0;

  std::vector<std::size_t> counts(m, 0);
  std::vector<double> task_mean(m);
  for (const std::size_t i : subset) {
    std::fill(task_mean.begin(), task_mean.end(), 0.0);
    const auto row = matrix.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) task_mean[partition.assignment[j]] += row[j];
    for (std::size_t k = 0; k < m; ++k) task_mean[k] /= sizes[k];
    // max_element returns the first maximum: ties go to the lowest task.
    ++counts[static_cast<std::size_t>(
        std::max_element(task_mean.begin(), task_mean.end()) - task_mean.begin())];
  }
  return counts;
}

std::vector<std::size_t> thi_instance_level(const AttributionMatrix& matrix,
                                            const TaskPartition& partition,
                                            std::span<const std::size_t> subset) {
  validate_partition(partition, matrix.n_val());
  check_subset(subset, matrix.n_train());
  std::vector<std::size_t> counts(partition.num_tasks(), 0);
  for (const std::size_t i : subset) {
    const auto row = matrix.row(i);
    const auto j = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    ++counts[partition.assignment[j]];
  }
  return counts;
}

BalanceMetrics balance_metrics(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (const std::size_t c : counts) total += c;
  if (counts.empty() || total == 0) throw ValidationError("balance of all-zero counts");

  BalanceMetrics metrics;
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  metrics.min_count = *lo;
  metrics.max_count = *hi;
  if (metrics.min_count > 0) {
    metrics.max_min_ratio =
        static_cast<double>(metrics.max_count) / static_cast<double>(metrics.min_count);
  }
  for (const std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    metrics.entropy -= p * std::log(p);
  }
  return metrics;
}

AnalysisReport report(const AttributionMatrix& selection_matrix,
                      const TaskPartition& partition, const SelectionResult& selection,
                      const AttributionMatrix& normalized, AidMode aid_mode) {
  if (normalized.n_train() != selection_matrix.n_train() ||
      normalized.n_val() != selection_matrix.n_val()) {
    throw DimensionError("normalized matrix shape differs from the selection matrix");
  }
  validate_selection(selection, selection_matrix.n_train());

  AnalysisReport out;
  out.method = std::string(to_string(selection.method));
  out.budget = selection.budget;
  out.aid_mode = aid_mode;
  const std::span<const std::size_t> subset(selection.indices);
  out.aid = aid(aid_mode == AidMode::normalized ? normalized : selection_matrix, subset);
  out.thi_task = thi_task_level(selection_matrix, partition, subset);
  out.thi_instance = thi_instance_level(selection_matrix, partition, subset);
  out.balance = balance_metrics(out.thi_instance);
  return out;
}

}  // namespace bids
