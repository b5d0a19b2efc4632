#include "bids/json_io.hpp"

#include <fstream>
#include <string>

#include "bids/error.hpp"
#include "bids/io.hpp"

namespace bids {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) throw ValidationError("expected a JSON object");
  const auto it = doc.find(name);
  if (it == doc.end()) throw ValidationError(std::string("missing field '") + name + "'");
  return *it;
}

template <typename T>
T get_as(const json& doc, const char* name) {
  const json& value = field(doc, name);
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + name + "' has the wrong type");
  }
}

std::size_t get_count(const json& doc, const char* name) {
  const json& value = field(doc, name);
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    throw ValidationError(std::string("field '") + name + "' must be a nonnegative integer");
  }
  return value.get<std::size_t>();
}

double get_real(const json& doc, const char* name) {
  const json& value = field(doc, name);
  if (!value.is_number()) {
    throw ValidationError(std::string("field '") + name + "' must be a number");
  }
  return value.get<double>();
}

std::string_view aid_mode_tag(AidMode mode) {
  return mode == AidMode::normalized ? "normalized" : "raw";
}

}  // namespace

json to_json(const TaskPartition& partition) {
  json tasks = json::array();
  const auto columns = partition.columns_by_task();
  for (std::size_t k = 0; k < partition.num_tasks(); ++k) {
    tasks.push_back({{"name", partition.task_names[k]}, {"cols", columns[k]}});
  }
  return {{"tasks", std::move(tasks)}};
}

TaskPartition partition_from_json(const json& doc) {
  const json& tasks = field(doc, "tasks");
  if (!tasks.is_array() || tasks.empty()) {
    throw ValidationError("'tasks' must be a nonempty array");
  }
  TaskPartition partition;
  std::vector<std::vector<std::size_t>> columns;
  std::size_t total = 0;
  for (const json& task : tasks) {
    partition.task_names.push_back(get_as<std::string>(task, "name"));
    columns.push_back(get_as<std::vector<std::size_t>>(task, "cols"));
    if (columns.back().empty()) {
      throw ValidationError("task '" + partition.task_names.back() + "' has no columns");
    }
    total += columns.back().size();
  }
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  partition.assignment.assign(total, unassigned);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    for (const std::size_t j : columns[k]) {
      if (j >= total) {
        throw ValidationError("column " + std::to_string(j) + " of task '" +
                              partition.task_names[k] + "' outside [0, " +
                              std::to_string(total) + ")");
      }
      if (partition.assignment[j] != unassigned) {
        throw ValidationError("column " + std::to_string(j) + " assigned twice");
      }
      partition.assignment[j] = k;
    }
  }
  validate_partition(partition, total);
  return partition;
}

json to_json(const SelectionResult& selection) {
  json doc = {{"method", to_string(selection.method)},
              {"budget", selection.budget},
              {"indices", selection.indices}};
  if (selection.utilities) doc["utilities"] = *selection.utilities;
  if (selection.seed) doc["seed"] = *selection.seed;
  return doc;
}

SelectionResult selection_from_json(const json& doc) {
  SelectionResult selection;
  selection.method = parse_method(get_as<std::string>(doc, "method"));
  selection.budget = get_count(doc, "budget");
  selection.indices = get_as<std::vector<std::size_t>>(doc, "indices");
  if (doc.contains("utilities") && !doc["utilities"].is_null()) {
    selection.utilities = get_as<std::vector<double>>(doc, "utilities");
  }
  if (doc.contains("seed") && !doc["seed"].is_null()) {
    selection.seed = get_as<std::uint64_t>(doc, "seed");
  }
  if (selection.indices.size() != selection.budget) {
    throw ValidationError("selection lists " + std::to_string(selection.indices.size()) +
                          " indices for budget " + std::to_string(selection.budget));
  }
  return selection;
}

json to_json(const BalanceMetrics& balance) {
  json doc = {{"entropy", balance.entropy},
              {"max_count", balance.max_count},
              {"min_count", balance.min_count}};
  if (balance.max_min_ratio) {
    doc["max_min_ratio"] = *balance.max_min_ratio;
  } else {
    doc["max_min_ratio"] = "inf";
  }
  return doc;
}

json to_json(const AnalysisReport& report) {
  return {{"method", report.method},
          {"budget", report.budget},
          {"aid_mode", aid_mode_tag(report.aid_mode)},
          {"aid", report.aid},
          {"thi_task", report.thi_task},
          {"thi_instance", report.thi_instance},
          {"balance", to_json(report.balance)}};
}

AnalysisReport report_from_json(const json& doc) {
  AnalysisReport report;
  report.method = get_as<std::string>(doc, "method");
  report.budget = get_count(doc, "budget");
  if (doc.contains("aid_mode")) {
    const auto mode = get_as<std::string>(doc, "aid_mode");
    if (mode != "normalized" && mode != "raw") {
      throw ValidationError("unknown aid_mode '" + mode + "'");
    }
    report.aid_mode = mode == "raw" ? AidMode::raw : AidMode::normalized;
  }
  report.aid = get_as<std::vector<double>>(doc, "aid");
  report.thi_task = get_as<std::vector<std::size_t>>(doc, "thi_task");
  report.thi_instance = get_as<std::vector<std::size_t>>(doc, "thi_instance");
  const json& balance = field(doc, "balance");
  report.balance.entropy = get_real(balance, "entropy");
  report.balance.max_count = get_count(balance, "max_count");
  report.balance.min_count = get_count(balance, "min_count");
  const json& ratio = field(balance, "max_min_ratio");
  if (ratio.is_number()) report.balance.max_min_ratio = ratio.get<double>();
  return report;
}

json to_json(const std::vector<ColumnDiagnostic>& diagnostics) {
  json columns = json::array();
  for (const auto& diag : diagnostics) {
    json histogram = json::array();
    for (const auto& bin : diag.histogram) {
      histogram.push_back(json::array(
          {bin.lower_edge ? json(*bin.lower_edge) : json(nullptr), bin.count}));
    }
    columns.push_back(
        {{"index", diag.index}, {"ks", diag.ks_distance}, {"histogram", std::move(histogram)}});
  }
  return {{"columns", std::move(columns)}};
}

json to_json(const SynthConfig& config) {
  return {{"n_train", config.n_train},
          {"m", config.m},
          {"cols_per_task", config.cols_per_task},
          {"task_mean_offsets", config.task_mean_offsets},
          {"task_scales", config.task_scales},
          {"quality_std", config.quality_std},
          {"noise_std", config.noise_std},
          {"col_jitter_std", config.col_jitter_std},
          {"task_factor_stds", config.task_factor_stds},
          {"seed", config.seed}};
}

SynthConfig synth_config_from_json(const json& doc) {
  SynthConfig config;
  config.n_train = get_count(doc, "n_train");
  config.m = get_count(doc, "m");
  config.cols_per_task = get_count(doc, "cols_per_task");
  config.task_mean_offsets = get_as<std::vector<double>>(doc, "task_mean_offsets");
  config.task_scales = get_as<std::vector<double>>(doc, "task_scales");
  config.quality_std = get_real(doc, "quality_std");
  config.noise_std = get_real(doc, "noise_std");
  config.col_jitter_std = get_real(doc, "col_jitter_std");
  if (doc.contains("task_factor_stds")) {
    config.task_factor_stds = get_as<std::vector<double>>(doc, "task_factor_stds");
  }
  config.seed = get_count(doc, "seed");
  return config;
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": offset " + std::to_string(e.byte) + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace bids
