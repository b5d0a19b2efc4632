#include "bids/selection.hpp"

#include <array>
#include <string>
#include <utility>

#include "bids/error.hpp"

namespace bids {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodTags{{
    {Method::bids, "bids"},
    {Method::task_max, "task_max"},
    {Method::instance_max, "instance_max"},
    {Method::sum, "sum"},
    {Method::random, "random"},
    {Method::rds, "rds"},
}};

}  // namespace

std::string_view to_string(Method method) noexcept {
  for (const auto& [value, tag] : kMethodTags) {
    if (value == method) return tag;
  }
  return "unknown";
}

Method parse_method(std::string_view tag) {
  for (const auto& [value, name] : kMethodTags) {
    if (name == tag) return value;
  }
  throw ValidationError("unknown method '" + std::string(tag) + "'");
}

void validate_selection(const SelectionResult& selection, std::size_t n_train) {
  if (selection.indices.size() != selection.budget) {
    throw ValidationError("selection lists " + std::to_string(selection.indices.size()) +
                          " indices for budget " + std::to_string(selection.budget));
  }
  if (selection.utilities && selection.utilities->size() != selection.budget) {
    throw ValidationError("selection lists " + std::to_string(selection.utilities->size()) +
                          " utilities for budget " + std::to_string(selection.budget));
  }
  std::vector<bool> seen(n_train, false);
  for (const std::size_t i : selection.indices) {
    if (i >= n_train) {
      throw IndexError("selected row " + std::to_string(i) + " out of range [0, " +
                       std::to_string(n_train) + ")");
    }
    if (seen[i]) throw ValidationError("row " + std::to_string(i) + " selected twice");
    seen[i] = true;
  }
}

}  // namespace bids
