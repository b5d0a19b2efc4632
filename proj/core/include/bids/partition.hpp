#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bids {

// Assignment of every validation column to one of m tasks.
struct TaskPartition {
  std::vector<std::string> task_names;
  std::vector<std::size_t> assignment;  // column -> task index

  std::size_t num_tasks() const noexcept { return task_names.size(); }

  // Column indices owned by each task, ascending.
  std::vector<std::vector<std::size_t>> columns_by_task() const;

  // Contiguous blocks: columns [k*cols_per_task, (k+1)*cols_per_task) -> task k.
  static TaskPartition contiguous(std::vector<std::string> task_names,
                                  std::size_t cols_per_task);
};

// Throws DimensionError when assignment.size() != n_val and ValidationError
// for an out-of-range task index, an empty task, or duplicate/empty names.
void validate_partition(const TaskPartition& partition, std::size_t n_val);

}  // namespace bids
