#include "bids/matrix.hpp"

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "bids/error.hpp"

namespace bids {
namespace {

void check_ids(const std::optional<std::vector<std::string>>& ids, std::size_t expected,
               const char* what) {
  if (!ids) return;
  if (ids->size() != expected) {
    throw DimensionError(std::string(what) + " has " + std::to_string(ids->size()) +
                         " entries, expected " + std::to_string(expected));
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& id : *ids) {
    if (!seen.insert(id).second) {
      throw ValidationError(std::string("duplicate ") + what + " entry '" + id + "'");
    }
  }
}

}  // namespace

AttributionMatrix::AttributionMatrix(std::size_t n_train, std::size_t n_val,
                                     std::vector<double> values,
                                     std::optional<std::vector<std::string>> row_ids,
                                     std::optional<std::vector<std::string>> col_ids)
    : n_train_(n_train),
      n_val_(n_val),
      values_(std::move(values)),
      row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)) {
  if (n_train_ == 0 || n_val_ == 0) {
    throw DimensionError("matrix must have at least one row and one column, got " +
                         std::to_string(n_train_) + "x" + std::to_string(n_val_));
  }
  if (values_.size() / n_val_ != n_train_ || values_.size() % n_val_ != 0) {
    throw DimensionError("matrix holds " + std::to_string(values_.size()) +
                         " values, expected " + std::to_string(n_train_) + "x" +
                         std::to_string(n_val_));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw ValidationError("non-finite value at (" + std::to_string(k / n_val_) + ", " +
                            std::to_string(k % n_val_) + ")");
    }
  }
  check_ids(row_ids_, n_train_, "row_ids");
  check_ids(col_ids_, n_val_, "col_ids");
}

AttributionMatrix AttributionMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw DimensionError("row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " values, expected " +
                           std::to_string(cols));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return AttributionMatrix(rows.size(), cols, std::move(values));
}

AttributionMatrix AttributionMatrix::with_values(std::vector<double> values) const {
  return AttributionMatrix(n_train_, n_val_, std::move(values), row_ids_, col_ids_);
}

}  // namespace bids
