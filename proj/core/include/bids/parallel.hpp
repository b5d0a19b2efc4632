#pragma once

#include <cstddef>
#include <memory>

namespace bids {

// Worker cap from BIDS_THREADS; 0 when unset or invalid (use all cores).
std::size_t threads_from_env();

// Caps worker parallelism for its lifetime. max_threads == 0 leaves the default.
class ParallelismLimit {
 public:
  explicit ParallelismLimit(std::size_t max_threads);
  ~ParallelismLimit();
  ParallelismLimit(const ParallelismLimit&) = delete;
  ParallelismLimit& operator=(const ParallelismLimit&) = delete;

 private:
  struct Control;
  std::unique_ptr<Control> control_;
};

}  // namespace bids
