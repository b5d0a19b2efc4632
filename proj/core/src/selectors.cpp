#include "bids/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/parallel_reduce.h>

#include "bids/error.hpp"
#include "bids/rng.hpp"

namespace bids {
namespace {

void check_budget(std::size_t budget, std::size_t n_train) {
  if (budget == 0) throw BudgetError("budget must be >= 1");
  if (budget > n_train) {
    throw BudgetError("budget " + std::to_string(budget) + " exceeds n_train " +
                      std::to_string(n_train));
  }
}

template <typename RowScore>
std::vector<double> row_scores(const AttributionMatrix& matrix, RowScore&& score) {
  std::vector<double> scores(matrix.n_train());
  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, matrix.n_train()),
                    [&](const tbb::blocked_range<std::size_t>& range) {
                      for (std::size_t i = range.begin(); i != range.end(); ++i) {
                        scores[i] = score(matrix.row(i));
                      }
                    });
  return scores;
}

double row_max(std::span<const double> row) { return *std::max_element(row.begin(), row.end()); }

// max_j (row[j] - baseline[j]); four lanes so the compiler can keep the
// loop in registers. max is exact, so lane order does not affect the result.
double max_gap(const double* row, const double* baseline, std::size_t n) {
  constexpr double lowest = -std::numeric_limits<double>::infinity();
  double m0 = lowest, m1 = lowest, m2 = lowest, m3 = lowest;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const double d0 = row[j] - baseline[j];
    const double d1 = row[j + 1] - baseline[j + 1];
    const double d2 = row[j + 2] - baseline[j + 2];
    const double d3 = row[j + 3] - baseline[j + 3];
    m0 = d0 > m0 ? d0 : m0;
    m1 = d1 > m1 ? d1 : m1;
    m2 = d2 > m2 ? d2 : m2;
    m3 = d3 > m3 ? d3 : m3;
  }
  for (; j < n; ++j) {
    const double d = row[j] - baseline[j];
    m0 = d > m0 ? d : m0;
  }
  return std::max(std::max(m0, m1), std::max(m2, m3));
}

struct Candidate {
  double utility = -std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  // Lexicographic (utility, -index) order: the reduction is associative and
  // commutative, so the winner does not depend on how work was split.
  bool beats(const Candidate& other) const noexcept {
    return utility > other.utility || (utility == other.utility && index < other.index);
  }
};

Candidate better_of(const Candidate& a, const Candidate& b) noexcept {
  return b.beats(a) ? b : a;
}

}  // namespace

SelectionResult select_top_by_score(std::span<const double> scores, std::size_t budget,
                                    Method method) {
  check_budget(budget, scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      throw ValidationError("non-finite score for row " + std::to_string(i));
    }
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(budget),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
                    });
  order.resize(budget);

  SelectionResult result;
  result.method = method;
  result.budget = budget;
  result.utilities.emplace();
  result.utilities->reserve(budget);
  for (const std::size_t i : order) result.utilities->push_back(scores[i]);
  result.indices = std::move(order);
  return result;
}

SelectionResult select_instance_max(const AttributionMatrix& matrix, std::size_t budget) {
  check_budget(budget, matrix.n_train());
  return select_top_by_score(row_scores(matrix, row_max), budget, Method::instance_max);
}

SelectionResult select_sum(const AttributionMatrix& matrix, std::size_t budget) {
  check_budget(budget, matrix.n_train());
  const auto scores = row_scores(matrix, [](std::span<const double> row) {
    return std::accumulate(row.begin(), row.end(), 0.0);
  });
  return select_top_by_score(scores, budget, Method::sum);
}

SelectionResult select_task_max(const AttributionMatrix& matrix,
                                const TaskPartition& partition, std::size_t budget,
                                TaskAggregator aggregator) {
  check_budget(budget, matrix.n_train());
  validate_partition(partition, matrix.n_val());
  const std::size_t m = partition.num_tasks();
  std::vector<double> task_size(m, 0.0);
  for (const std::size_t k : partition.assignment) task_size[k] += 1.0;

  const auto scores = row_scores(matrix, [&](std::span<const double> row) {
    std::vector<double> totals(m, 0.0);
    for (std::size_t j = 0; j < row.size(); ++j) totals[partition.assignment[j]] += row[j];
    if (aggregator == TaskAggregator::mean) {
      for (std::size_t k = 0; k < m; ++k) totals[k] /= task_size[k];
    }
    return *std::max_element(totals.begin(), totals.end());
  });
  return select_top_by_score(scores, budget, Method::task_max);
}

SelectionResult select_random(std::size_t n_train, std::size_t budget, std::uint64_t seed) {
  check_budget(budget, n_train);
  std::vector<std::size_t> perm(n_train);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Xoshiro256 rng(seed);
  for (std::size_t k = 0; k < budget; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.bounded(n_train - k));
    std::swap(perm[k], perm[pick]);
  }
  perm.resize(budget);

  SelectionResult result;
  result.method = Method::random;
  result.budget = budget;
  result.indices = std::move(perm);
  result.seed = seed;
  return result;
}

SelectionResult select_rds(const AttributionMatrix& similarity, std::size_t budget) {
  SelectionResult result = select_instance_max(similarity, budget);
  result.method = Method::rds;
  return result;
}

SelectionResult select_bids(const AttributionMatrix& matrix, std::size_t budget) {
  const std::size_t n = matrix.n_train();
  const std::size_t v = matrix.n_val();
  check_budget(budget, n);

  // Candidates are visited in descending row-max order. Since
  // A_ij - A_T[j] <= rowmax_i - min_j A_T[j] (and rounding is monotone), the
  // scan stops once that bound drops below the best utility found. The
  // result is exactly that of a full scan.
  const std::vector<double> maxima = row_scores(matrix, row_max);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return maxima[a] > maxima[b] || (maxima[a] == maxima[b] && a < b);
  });

  std::vector<char> taken(n, 0);
  std::vector<double> column_sum(v, 0.0);
  std::vector<double> baseline(v, 0.0);  // A_T; zero while T is empty

  SelectionResult result;
  result.method = Method::bids;
  result.budget = budget;
  result.indices.reserve(budget);
  result.utilities.emplace();
  result.utilities->reserve(budget);

  constexpr std::size_t kBlock = 1024;
  for (std::size_t step = 0; step < budget; ++step) {
    if (step > 0) {
      const auto count = static_cast<double>(step);
      for (std::size_t j = 0; j < v; ++j) baseline[j] = column_sum[j] / count;
    }
    const double floor = *std::min_element(baseline.begin(), baseline.end());

    Candidate best;
    for (std::size_t start = 0; start < n; start += kBlock) {
      if (maxima[order[start]] - floor < best.utility) break;
      const std::size_t stop = std::min(n, start + kBlock);
      const double cutoff = best.utility;
      const Candidate block_best = tbb::parallel_reduce(
          tbb::blocked_range<std::size_t>(start, stop, 128), Candidate{},
          [&](const tbb::blocked_range<std::size_t>& range, Candidate local) {
            for (std::size_t p = range.begin(); p != range.end(); ++p) {
              const std::size_t i = order[p];
              if (taken[i]) continue;
              if (maxima[i] - floor < cutoff) break;
              const Candidate c{max_gap(matrix.row(i).data(), baseline.data(), v), i};
              if (c.beats(local)) local = c;
            }
            return local;
          },
          better_of);
      best = better_of(best, block_best);
    }

    taken[best.index] = 1;
    result.indices.push_back(best.index);
    result.utilities->push_back(best.utility);
    const auto row = matrix.row(best.index);
    for (std::size_t j = 0; j < v; ++j) column_sum[j] += row[j];
  }
  return result;
}

}  // namespace bids
