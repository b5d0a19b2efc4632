#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "bids/analysis.hpp"
#include "bids/normalize.hpp"
#include "bids/partition.hpp"
#include "bids/selection.hpp"
#include "bids/synthgen.hpp"

namespace bids {

// {"tasks": [{"name": "...", "cols": [...]}, ...]}
nlohmann::json to_json(const TaskPartition& partition);
// Rebuilds the column->task assignment. Columns must partition [0, n) where n
// is the total number of listed columns; throws ValidationError otherwise.
TaskPartition partition_from_json(const nlohmann::json& doc);

// {"method", "budget", "indices", "utilities"?, "seed"?}
nlohmann::json to_json(const SelectionResult& selection);
SelectionResult selection_from_json(const nlohmann::json& doc);

// {"aid", "aid_mode", "thi_task", "thi_instance", "balance", "method", "budget"}
nlohmann::json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const BalanceMetrics& balance);

// {"columns": [{"index", "ks", "histogram": [[edge, count], ...]}]}
// The underflow bin has edge null (it is unbounded below).
nlohmann::json to_json(const std::vector<ColumnDiagnostic>& diagnostics);

nlohmann::json to_json(const SynthConfig& config);
// Missing or mistyped fields raise ValidationError naming the field.
SynthConfig synth_config_from_json(const nlohmann::json& doc);

// Throws ParseError (with the parser's byte offset) or IoError.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace bids
