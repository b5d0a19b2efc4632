#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bids {

enum class Method { bids, task_max, instance_max, sum, random, rds };

std::string_view to_string(Method method) noexcept;
// Throws ValidationError for an unknown tag.
Method parse_method(std::string_view tag);

// Ordered selection of training rows. For bids, utilities hold the utility of
// each pick in selection order; for score-ranked methods they hold the score
// of each selected row.
struct SelectionResult {
  Method method = Method::bids;
  std::size_t budget = 0;
  std::vector<std::size_t> indices;
  std::optional<std::vector<double>> utilities;
  std::optional<std::uint64_t> seed;
};

// Checks distinctness, range and lengths against n_train.
void validate_selection(const SelectionResult& selection, std::size_t n_train);

}  // namespace bids
