#include "bids/budget.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bids/error.hpp"

namespace bids {

std::size_t resolve_budget(const Budget& budget, std::size_t n_train) {
  if (n_train == 0) throw PreconditionError("n_train must be >= 1");
  switch (budget.kind) {
    case Budget::Kind::absolute:
      if (budget.count == 0) throw BudgetError("budget must be >= 1");
      if (budget.count > n_train) {
        throw BudgetError("budget " + std::to_string(budget.count) + " exceeds n_train " +
                          std::to_string(n_train));
      }
      return budget.count;
    case Budget::Kind::fraction: {
      const double p = budget.share;
      if (!(p > 0.0 && p <= 1.0)) {
        throw ValidationError("budget fraction must lie in (0, 1], got " + std::to_string(p));
      }
      const auto raw = static_cast<std::size_t>(std::floor(p * static_cast<double>(n_train)));
      return std::clamp<std::size_t>(raw, 1, n_train);
    }
  }
  throw ValidationError("unknown budget kind");
}

}  // namespace bids
