#include "bids/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include <tbb/global_control.h>

namespace bids {

struct ParallelismLimit::Control {
  explicit Control(std::size_t max_threads)
      : control(tbb::global_control::max_allowed_parallelism, max_threads) {}
  tbb::global_control control;
};

std::size_t threads_from_env() {
  const char* raw = std::getenv("BIDS_THREADS");
  if (raw == nullptr) return 0;
  std::size_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end) return 0;
  return value;
}

ParallelismLimit::ParallelismLimit(std::size_t max_threads) {
  if (max_threads > 0) {
    control_ = std::make_unique<Control>(max_threads);
  }
}

ParallelismLimit::~ParallelismLimit() = default;

}  // namespace bids
