#include "bids/partition.hpp"

#include <string>
#include <unordered_set>

#include "bids/error.hpp"

namespace bids {

std::vector<std::vector<std::size_t>> TaskPartition::columns_by_task() const {
  std::vector<std::vector<std::size_t>> columns(task_names.size());
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    if (assignment[j] < columns.size()) columns[assignment[j]].push_back(j);
  }
  return columns;
}

TaskPartition TaskPartition::contiguous(std::vector<std::string> task_names,
                                        std::size_t cols_per_task) {
  TaskPartition partition;
  partition.assignment.reserve(task_names.size() * cols_per_task);
  for (std::size_t k = 0; k < task_names.size(); ++k) {
    partition.assignment.insert(partition.assignment.end(), cols_per_task, k);
  }
  partition.task_names = std::move(task_names);
  return partition;
}

void validate_partition(const TaskPartition& partition, std::size_t n_val) {
  const std::size_t m = partition.num_tasks();
  if (m == 0) throw ValidationError("partition has no tasks");
  if (partition.assignment.size() != n_val) {
    throw DimensionError("partition assigns " + std::to_string(partition.assignment.size()) +
                         " columns, matrix has " + std::to_string(n_val));
  }
  std::unordered_set<std::string_view> names;
  for (const auto& name : partition.task_names) {
    if (!names.insert(name).second) {
      throw ValidationError("duplicate task name '" + name + "'");
    }
  }
  std::vector<std::size_t> sizes(m, 0);
  for (std::size_t j = 0; j < n_val; ++j) {
    const std::size_t k = partition.assignment[j];
    if (k >= m) {
      throw ValidationError("column " + std::to_string(j) + " assigned to task " +
                            std::to_string(k) + ", only " + std::to_string(m) +
                            " tasks exist");
    }
    ++sizes[k];
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (sizes[k] == 0) {
      throw ValidationError("task " + std::to_string(k) + " empty ('" +
                            partition.task_names[k] + "')");
    }
  }
}

}  // namespace bids
