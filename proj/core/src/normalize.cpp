#include "bids/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "bids/error.hpp"

namespace bids {
namespace {

// Column blocks keep row-major access contiguous while letting workers own
// disjoint columns, so every column is reduced in row order.
constexpr std::size_t kColumnBlock = 64;

template <typename Body>
void for_column_blocks(std::size_t n_val, Body&& body) {
  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n_val, kColumnBlock),
                    [&](const tbb::blocked_range<std::size_t>& range) {
                      body(range.begin(), range.end());
                    });
}

}  // namespace

ColumnStats column_stats(const AttributionMatrix& matrix) {
  const std::size_t n = matrix.n_train();
  const std::size_t v = matrix.n_val();
  if (n < 2) {
    throw PreconditionError("column statistics need at least 2 rows, got " +
                            std::to_string(n));
  }
  ColumnStats stats{std::vector<double>(v, 0.0), std::vector<double>(v, 0.0)};
  // A rounded mean of identical values need not equal them, so constant
  // columns are detected explicitly and pinned to (value, 0).
  std::vector<char> constant(v, 1);
  for_column_blocks(v, [&](std::size_t lo, std::size_t hi) {
    const auto first = matrix.row(0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = matrix.row(i);
      for (std::size_t j = lo; j < hi; ++j) {
        stats.means[j] += row[j];
        if (row[j] != first[j]) constant[j] = 0;
      }
    }
    for (std::size_t j = lo; j < hi; ++j) {
      stats.means[j] = constant[j] ? first[j] : stats.means[j] / static_cast<double>(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = matrix.row(i);
      for (std::size_t j = lo; j < hi; ++j) {
        const double d = row[j] - stats.means[j];
        stats.stds[j] += d * d;
      }
    }
    for (std::size_t j = lo; j < hi; ++j) {
      stats.stds[j] = constant[j] ? 0.0 : std::sqrt(stats.stds[j] / static_cast<double>(n - 1));
    }
  });
  return stats;
}

AttributionMatrix normalize_columns(const AttributionMatrix& matrix) {
  const ColumnStats stats = column_stats(matrix);
  const std::size_t n = matrix.n_train();
  const std::size_t v = matrix.n_val();
  std::vector<double> out(n * v);
  for_column_blocks(v, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = matrix.row(i);
      double* dst = out.data() + i * v;
      for (std::size_t j = lo; j < hi; ++j) {
        dst[j] = stats.stds[j] > 0.0 ? (row[j] - stats.means[j]) / stats.stds[j] : 0.0;
      }
    }
  });
  return matrix.with_values(std::move(out));
}

double standard_normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double ks_distance_to_standard_normal(std::span<const double> sample) {
  if (sample.empty()) throw ValidationError("KS distance of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double distance = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double cdf = standard_normal_cdf(sorted[k]);
    const double below = static_cast<double>(k) / n;
    const double at = static_cast<double>(k + 1) / n;
    distance = std::max({distance, cdf - below, at - cdf});
  }
  return distance;
}

std::vector<ColumnDiagnostic> normality_diagnostic(const AttributionMatrix& matrix,
                                                   std::span<const std::size_t> columns) {
  constexpr double width = (kHistogramHigh - kHistogramLow) / kHistogramBins;
  std::vector<ColumnDiagnostic> result;
  result.reserve(columns.size());
  std::vector<double> column(matrix.n_train());
  for (const std::size_t j : columns) {
    if (j >= matrix.n_val()) {
      throw IndexError("column " + std::to_string(j) + " out of range [0, " +
                       std::to_string(matrix.n_val()) + ")");
    }
    for (std::size_t i = 0; i < matrix.n_train(); ++i) column[i] = matrix(i, j);

    ColumnDiagnostic diag;
    diag.index = j;
    diag.ks_distance = ks_distance_to_standard_normal(column);
    diag.histogram.resize(kHistogramBins + 2);
    diag.histogram.front().lower_edge = std::nullopt;
    for (std::size_t b = 0; b <= kHistogramBins; ++b) {
      diag.histogram[b + 1].lower_edge = kHistogramLow + width * static_cast<double>(b);
    }
    for (const double x : column) {
      std::size_t slot;
      if (x < kHistogramLow) {
        slot = 0;
      } else if (x >= kHistogramHigh) {
        slot = kHistogramBins + 1;
      } else {
        const auto b = static_cast<std::size_t>((x - kHistogramLow) / width);
        slot = 1 + std::min(b, kHistogramBins - 1);
      }
      ++diag.histogram[slot].count;
    }
    result.push_back(std::move(diag));
  }
  return result;
}

}  // namespace bids
