#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bids/matrix.hpp"

namespace bids {

struct ColumnStats {
  std::vector<double> means;
  std::vector<double> stds;  // sample standard deviation (N - 1 denominator)
};

// Requires n_train >= 2; throws PreconditionError otherwise.
ColumnStats column_stats(const AttributionMatrix& matrix);

// Column-wise z-standardization: x -> (x - mean_j) / std_j. Columns with
// std_j == 0 become all zeros. Shape and ids are preserved.
AttributionMatrix normalize_columns(const AttributionMatrix& matrix);

struct HistogramBin {
  std::optional<double> lower_edge;  // nullopt for the (-inf, -4) underflow bin
  std::size_t count = 0;
};

struct ColumnDiagnostic {
  std::size_t index = 0;
  double ks_distance = 0.0;
  // 34 bins: underflow (-inf, -4), 32 equal bins over [-4, 4), overflow [4, inf).
  std::vector<HistogramBin> histogram;
};

inline constexpr double kHistogramLow = -4.0;
inline constexpr double kHistogramHigh = 4.0;
inline constexpr std::size_t kHistogramBins = 32;

double standard_normal_cdf(double x) noexcept;

// Kolmogorov-Smirnov distance between the empirical CDF of `sample` and the
// standard normal CDF.
double ks_distance_to_standard_normal(std::span<const double> sample);

// Per requested column of an already normalized matrix. Throws IndexError for
// an out-of-range column.
std::vector<ColumnDiagnostic> normality_diagnostic(const AttributionMatrix& matrix,
                                                   std::span<const std::size_t> columns);

}  // namespace bids
