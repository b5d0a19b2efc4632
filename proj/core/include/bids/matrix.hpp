#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bids {

// Dense row-major matrix of influence scores. Rows are training examples,
// columns are validation instances; row i is the influence distribution of
// training example i.
//
// Immutable after construction. The constructor enforces: both dimensions
// >= 1, every value finite, optional id lists of matching length with unique
// entries.
class AttributionMatrix {
 public:
  AttributionMatrix(std::size_t n_train, std::size_t n_val,
                    std::vector<double> values,
                    std::optional<std::vector<std::string>> row_ids = std::nullopt,
                    std::optional<std::vector<std::string>> col_ids = std::nullopt);

  // Builds from nested rows; throws DimensionError on ragged input.
  static AttributionMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n_train() const noexcept { return n_train_; }
  std::size_t n_val() const noexcept { return n_val_; }
  std::size_t rows() const noexcept { return n_train_; }
  std::size_t cols() const noexcept { return n_val_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * n_val_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * n_val_, n_val_};
  }
  std::span<const double> values() const noexcept { return values_; }

  const std::optional<std::vector<std::string>>& row_ids() const noexcept {
    return row_ids_;
  }
  const std::optional<std::vector<std::string>>& col_ids() const noexcept {
    return col_ids_;
  }

  // Same ids and shape, new values. Used by transforms such as normalization.
  AttributionMatrix with_values(std::vector<double> values) const;

  friend bool operator==(const AttributionMatrix&, const AttributionMatrix&) = default;

 private:
  std::size_t n_train_;
  std::size_t n_val_;
  std::vector<double> values_;
  std::optional<std::vector<std::string>> row_ids_;
  std::optional<std::vector<std::string>> col_ids_;
};

// Projected gradient features share the on-disk and in-memory layout.
using FeatureMatrix = AttributionMatrix;

}  // namespace bids
