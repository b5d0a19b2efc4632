#pragma once

#include <cstddef>

namespace bids {

struct Budget {
  enum class Kind { absolute, fraction };

  Kind kind = Kind::absolute;
  std::size_t count = 0;  // used when kind == absolute
  double share = 0.0;     // used when kind == fraction

  static Budget absolute(std::size_t count) { return {Kind::absolute, count, 0.0}; }
  static Budget fraction(double share) { return {Kind::fraction, 0, share}; }
};

// absolute: unchanged, must lie in [1, n_train].
// fraction p in (0, 1]: floor(p * n_train), clamped below by 1.
std::size_t resolve_budget(const Budget& budget, std::size_t n_train);

}  // namespace bids
