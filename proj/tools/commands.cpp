#include "commands.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bids/analysis.hpp"
#include "bids/budget.hpp"
#include "bids/error.hpp"
#include "bids/influence.hpp"
#include "bids/io.hpp"
#include "bids/json_io.hpp"
#include "bids/normalize.hpp"
#include "bids/parallel.hpp"
#include "bids/selectors.hpp"
#include "bids/synthgen.hpp"
#include "manifest.hpp"

namespace bids::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct MatrixArgs {
  std::string path;
  bool header = false;
};

AttributionMatrix read_matrix(const MatrixArgs& args) {
  return load_matrix(args.path, format_from_path(args.path), CsvOptions{args.header});
}

void write_matrix(const AttributionMatrix& matrix, const fs::path& path, bool header,
                  const RunManifest& manifest) {
  save_matrix(matrix, path, format_from_path(path), CsvOptions{header});
  fs::path sidecar = path;
  sidecar += ".manifest.json";
  write_json_file(sidecar, {{"manifest", manifest.to_json()}});
}

void write_with_manifest(json doc, const fs::path& path, const RunManifest& manifest) {
  doc["manifest"] = manifest.to_json();
  write_json_file(path, doc);
}

// ---- gen -----------------------------------------------------------------

struct GenArgs {
  std::string config;
  bool preset = false;
  std::uint64_t seed = 0;
  std::string out_matrix;
  std::string out_partition;
};

void cmd_gen(const GenArgs& args) {
  RunManifest manifest = start_manifest("gen");
  SynthConfig config;
  if (args.preset) {
    config = preset_biased(args.seed);
    manifest.parameters["preset"] = "biased";
  } else {
    if (args.config.empty()) throw ValidationError("gen needs --config or --preset-biased");
    config = synth_config_from_json(read_json_file(args.config));
    manifest.add_input(args.config);
  }
  manifest.parameters["config"] = to_json(config);
  auto [matrix, partition] = generate(config);
  write_matrix(matrix, args.out_matrix, false, manifest);
  write_with_manifest(to_json(partition), args.out_partition, manifest);
}

// ---- influence / similarity ---------------------------------------------

struct InfluenceArgs {
  std::string manifest;
  std::string out;
};

GradientFeatureSet load_feature_manifest(const fs::path& path) {
  const json doc = read_json_file(path);
  const fs::path base = path.parent_path();
  auto list = [&](const char* name) {
    if (!doc.contains(name) || !doc[name].is_array()) {
      throw ValidationError(std::string("manifest field '") + name + "' must be an array");
    }
    std::vector<fs::path> files;
    for (const auto& entry : doc[name]) {
      if (!entry.is_string()) {
        throw ValidationError(std::string("manifest field '") + name + "' must hold paths");
      }
      fs::path p = entry.get<std::string>();
      files.push_back(p.is_absolute() ? p : base / p);
    }
    return files;
  };
  if (!doc.contains("epochs") || !doc["epochs"].is_number_unsigned() ||
      !doc.contains("dim") || !doc["dim"].is_number_unsigned() ||
      !doc.contains("learning_rates") || !doc["learning_rates"].is_array()) {
    throw ValidationError("manifest needs 'epochs', 'dim' and 'learning_rates'");
  }
  const auto epochs = doc["epochs"].get<std::size_t>();
  const auto dim = doc["dim"].get<std::size_t>();
  GradientFeatureSet features;
  for (const auto& lr : doc["learning_rates"]) {
    if (!lr.is_number()) throw ValidationError("learning_rates must be numbers");
    features.learning_rates.push_back(lr.get<double>());
  }
  const auto train_files = list("train_files");
  const auto val_files = list("val_files");
  if (features.learning_rates.size() != epochs || train_files.size() != epochs ||
      val_files.size() != epochs) {
    throw DimensionError("manifest declares " + std::to_string(epochs) +
                         " epochs but lists " + std::to_string(features.learning_rates.size()) +
                         " learning rates, " + std::to_string(train_files.size()) +
                         " train files and " + std::to_string(val_files.size()) + " val files");
  }
  for (std::size_t t = 0; t < epochs; ++t) {
    for (const auto& file : {train_files[t], val_files[t]}) {
      if (!fs::exists(file)) throw IoError("feature file '" + file.string() + "' not found");
    }
    features.train_features.push_back(load_matrix(train_files[t], MatrixFormat::binary));
    features.val_features.push_back(load_matrix(val_files[t], MatrixFormat::binary));
    for (const auto* m : {&features.train_features.back(), &features.val_features.back()}) {
      if (m->cols() != dim) {
        throw DimensionError("epoch " + std::to_string(t) + ": feature dim " +
                             std::to_string(m->cols()) + " != manifest dim " +
                             std::to_string(dim));
      }
    }
  }
  return features;
}

void cmd_influence(const InfluenceArgs& args) {
  RunManifest manifest = start_manifest("influence");
  manifest.add_input(args.manifest);
  const auto features = load_feature_manifest(args.manifest);
  manifest.parameters["epochs"] = features.epochs();
  manifest.parameters["learning_rates"] = features.learning_rates;
  write_matrix(adam_influence(features), args.out, false, manifest);
}

struct SimilarityArgs {
  std::string train;
  std::string val;
  std::string out;
};

void cmd_similarity(const SimilarityArgs& args) {
  RunManifest manifest = start_manifest("similarity");
  manifest.add_input(args.train);
  manifest.add_input(args.val);
  const auto train = load_matrix(args.train, format_from_path(args.train));
  const auto val = load_matrix(args.val, format_from_path(args.val));
  write_matrix(cosine_similarity_matrix(train, val), args.out, false, manifest);
}

// ---- normalize / diagnose -----------------------------------------------

struct NormalizeArgs {
  MatrixArgs matrix;
  std::string out;
};

void cmd_normalize(const NormalizeArgs& args) {
  RunManifest manifest = start_manifest("normalize");
  manifest.add_input(args.matrix.path);
  write_matrix(normalize_columns(read_matrix(args.matrix)), args.out, args.matrix.header,
               manifest);
}

struct DiagnoseArgs {
  MatrixArgs matrix;
  bool normalize = false;
  std::vector<std::size_t> columns;
  std::string out;
};

void cmd_diagnose(const DiagnoseArgs& args) {
  RunManifest manifest = start_manifest("diagnose");
  manifest.add_input(args.matrix.path);
  manifest.parameters["normalize"] = args.normalize;
  AttributionMatrix matrix = read_matrix(args.matrix);
  if (args.normalize) matrix = normalize_columns(matrix);
  std::vector<std::size_t> columns = args.columns;
  if (columns.empty()) {
    columns.resize(matrix.n_val());
    for (std::size_t j = 0; j < columns.size(); ++j) columns[j] = j;
  }
  manifest.parameters["columns"] = columns;
  write_with_manifest(to_json(normality_diagnostic(matrix, columns)), args.out, manifest);
}

// ---- select ---------------------------------------------------------------

struct SelectArgs {
  MatrixArgs matrix;
  std::string method;
  std::optional<std::size_t> budget;
  std::optional<double> fraction;
  std::string partition;
  bool normalize = false;
  std::string aggregator = "sum";
  std::optional<std::uint64_t> seed;
  std::string out;
};

void cmd_select(const SelectArgs& args) {
  RunManifest manifest = start_manifest("select");
  const Method method = parse_method(args.method);
  if (method == Method::task_max && args.partition.empty()) {
    throw ValidationError("method task_max requires --partition");
  }
  if (method == Method::random && !args.seed) {
    throw ValidationError("method random requires --seed");
  }
  if (args.budget.has_value() == args.fraction.has_value()) {
    throw ValidationError("give exactly one of --budget or --fraction");
  }

  manifest.add_input(args.matrix.path);
  AttributionMatrix matrix = read_matrix(args.matrix);
  const Budget budget =
      args.budget ? Budget::absolute(*args.budget) : Budget::fraction(*args.fraction);
  const std::size_t resolved = resolve_budget(budget, matrix.n_train());
  if (args.normalize) matrix = normalize_columns(matrix);

  manifest.parameters["method"] = args.method;
  manifest.parameters["budget"] = resolved;
  if (args.fraction) manifest.parameters["fraction"] = *args.fraction;
  manifest.parameters["normalize"] = args.normalize;

  SelectionResult result;
  switch (method) {
    case Method::bids:
      result = select_bids(matrix, resolved);
      break;
    case Method::task_max: {
      manifest.add_input(args.partition);
      const TaskPartition partition = partition_from_json(read_json_file(args.partition));
      if (args.aggregator != "sum" && args.aggregator != "mean") {
        throw ValidationError("aggregator must be sum or mean");
      }
      manifest.parameters["aggregator"] = args.aggregator;
      result = select_task_max(matrix, partition, resolved,
                               args.aggregator == "mean" ? TaskAggregator::mean
                                                         : TaskAggregator::sum);
      break;
    }
    case Method::instance_max:
      result = select_instance_max(matrix, resolved);
      break;
    case Method::sum:
      result = select_sum(matrix, resolved);
      break;
    case Method::random:
      manifest.parameters["seed"] = *args.seed;
      result = select_random(matrix.n_train(), resolved, *args.seed);
      break;
    case Method::rds:
      result = select_rds(matrix, resolved);
      break;
  }
  write_with_manifest(to_json(result), args.out, manifest);
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  MatrixArgs matrix;
  std::string partition;
  std::string selection;
  std::string out;
  std::string aid_mode = "normalized";
  std::string thi_matrix = "auto";
};

void cmd_analyze(const AnalyzeArgs& args) {
  RunManifest manifest = start_manifest("analyze");
  manifest.add_input(args.matrix.path);
  manifest.add_input(args.partition);
  manifest.add_input(args.selection);

  const AttributionMatrix raw = read_matrix(args.matrix);
  const TaskPartition partition = partition_from_json(read_json_file(args.partition));
  validate_partition(partition, raw.n_val());
  const json selection_doc = read_json_file(args.selection);
  const SelectionResult selection = selection_from_json(selection_doc);
  validate_selection(selection, raw.n_train());

  bool thi_on_normalized = false;
  if (args.thi_matrix == "normalized") {
    thi_on_normalized = true;
  } else if (args.thi_matrix == "auto") {
    // Follow the selector: a selection made with --normalize is analyzed on
    // the normalized matrix.
    const json* params = nullptr;
    if (selection_doc.contains("manifest") && selection_doc["manifest"].is_object() &&
        selection_doc["manifest"].contains("parameters")) {
      params = &selection_doc["manifest"]["parameters"];
    }
    thi_on_normalized = params != nullptr && params->contains("normalize") &&
                        (*params)["normalize"].is_boolean() &&
                        (*params)["normalize"].get<bool>();
  } else if (args.thi_matrix != "raw") {
    throw ValidationError("--thi-matrix must be auto, raw or normalized");
  }
  if (args.aid_mode != "normalized" && args.aid_mode != "raw") {
    throw ValidationError("--aid must be normalized or raw");
  }
  const AidMode mode = args.aid_mode == "raw" ? AidMode::raw : AidMode::normalized;

  const AttributionMatrix normalized = normalize_columns(raw);
  const AnalysisReport result =
      report(thi_on_normalized ? normalized : raw, partition, selection, normalized, mode);
  manifest.parameters["aid_mode"] = args.aid_mode;
  manifest.parameters["thi_matrix"] = thi_on_normalized ? "normalized" : "raw";
  write_with_manifest(to_json(result), args.out, manifest);
}

// ---- compare --------------------------------------------------------------

struct CompareArgs {
  std::vector<std::string> reports;
  std::string out;
};

json summarize(const AnalysisReport& r) {
  const auto [lo, hi] = std::minmax_element(r.aid.begin(), r.aid.end());
  json row = {{"method", r.method},
              {"budget", r.budget},
              {"entropy", r.balance.entropy},
              {"max_min_ratio", to_json(r.balance)["max_min_ratio"]},
              {"thi_instance", r.thi_instance},
              {"thi_task", r.thi_task},
              {"aid_max", *hi},
              {"aid_min", *lo}};
  return row;
}

void cmd_compare(const CompareArgs& args, std::ostream& out) {
  RunManifest manifest = start_manifest("compare");
  if (args.reports.size() < 2) throw ValidationError("compare needs at least two reports");
  std::vector<AnalysisReport> reports;
  for (const auto& path : args.reports) {
    manifest.add_input(path);
    reports.push_back(report_from_json(read_json_file(path)));
    const auto& first = reports.front();
    const auto& r = reports.back();
    if (r.aid.empty() || r.thi_instance.empty()) {
      throw ValidationError("report '" + path + "' has empty aid or thi");
    }
    if (r.aid.size() != first.aid.size() || r.thi_instance.size() != first.thi_instance.size() ||
        r.thi_task.size() != first.thi_task.size()) {
      throw DimensionError("report '" + path + "' has n_val=" + std::to_string(r.aid.size()) +
                           ", m=" + std::to_string(r.thi_instance.size()) +
                           "; expected n_val=" + std::to_string(first.aid.size()) +
                           ", m=" + std::to_string(first.thi_instance.size()));
    }
    if (r.aid_mode != first.aid_mode) {
      throw ValidationError("report '" + path + "' uses a different aid_mode");
    }
  }

  json rows = json::array();
  const json baseline = summarize(reports.front());
  for (std::size_t r = 0; r < reports.size(); ++r) {
    json row = summarize(reports[r]);
    row["path"] = args.reports[r];
    row["delta"] = {
        {"entropy", row["entropy"].get<double>() - baseline["entropy"].get<double>()},
        {"aid_max", row["aid_max"].get<double>() - baseline["aid_max"].get<double>()},
        {"aid_min", row["aid_min"].get<double>() - baseline["aid_min"].get<double>()}};
    rows.push_back(std::move(row));
  }
  json doc = {{"baseline", args.reports.front()}, {"reports", std::move(rows)}};
  doc["manifest"] = manifest.to_json();
  if (args.out.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    write_json_file(args.out, doc);
  }
}

void add_matrix_options(CLI::App* app, MatrixArgs& args) {
  app->add_option("--matrix", args.path, "Matrix file (.csv or AMAT v1 binary)")->required();
  app->add_flag("--header", args.header, "CSV carries a header row and row ids");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balanced influential data selection over attribution matrices", "bids"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic attribution matrix");
  gen_cmd->add_option("--config", gen.config, "SynthConfig JSON");
  gen_cmd->add_flag("--preset-biased", gen.preset, "Use the built-in biased preset");
  gen_cmd->add_option("--seed", gen.seed, "Seed for --preset-biased");
  gen_cmd->add_option("--out-matrix", gen.out_matrix)->required();
  gen_cmd->add_option("--out-partition", gen.out_partition)->required();

  InfluenceArgs influence;
  auto* influence_cmd =
      app.add_subcommand("influence", "Aggregate Adam influence from projected gradients");
  influence_cmd->add_option("--manifest", influence.manifest, "Feature manifest JSON")
      ->required();
  influence_cmd->add_option("--out", influence.out)->required();

  SimilarityArgs similarity;
  auto* similarity_cmd =
      app.add_subcommand("similarity", "Cosine similarity of train vs val representations");
  similarity_cmd->add_option("--train", similarity.train)->required();
  similarity_cmd->add_option("--val", similarity.val)->required();
  similarity_cmd->add_option("--out", similarity.out)->required();

  NormalizeArgs normalize;
  auto* normalize_cmd = app.add_subcommand("normalize", "Column-wise z-standardization");
  add_matrix_options(normalize_cmd, normalize.matrix);
  normalize_cmd->add_option("--out", normalize.out)->required();

  DiagnoseArgs diagnose;
  auto* diagnose_cmd =
      app.add_subcommand("diagnose", "KS distance and histograms of normalized columns");
  add_matrix_options(diagnose_cmd, diagnose.matrix);
  diagnose_cmd->add_flag("--normalize", diagnose.normalize, "Normalize before diagnosing");
  diagnose_cmd->add_option("--columns", diagnose.columns, "Columns (default: all)")
      ->delimiter(',');
  diagnose_cmd->add_option("--out", diagnose.out)->required();

  SelectArgs select;
  auto* select_cmd = app.add_subcommand("select", "Select a training subset");
  add_matrix_options(select_cmd, select.matrix);
  select_cmd->add_option("--method", select.method)
      ->required()
      ->check(CLI::IsMember({"bids", "task_max", "instance_max", "sum", "random", "rds"}));
  select_cmd->add_option("--budget", select.budget, "Absolute number of rows");
  select_cmd->add_option("--fraction", select.fraction, "Fraction of rows in (0, 1]");
  select_cmd->add_option("--partition", select.partition, "TaskPartition JSON");
  select_cmd->add_flag("--normalize", select.normalize, "Normalize columns first");
  select_cmd->add_option("--aggregator", select.aggregator, "task_max aggregator")
      ->check(CLI::IsMember({"sum", "mean"}));
  select_cmd->add_option("--seed", select.seed, "Seed for method random");
  select_cmd->add_option("--out", select.out)->required();

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "AID / THI report for a selection");
  add_matrix_options(analyze_cmd, analyze.matrix);
  analyze_cmd->add_option("--partition", analyze.partition)->required();
  analyze_cmd->add_option("--selection", analyze.selection)->required();
  analyze_cmd->add_option("--out", analyze.out)->required();
  analyze_cmd->add_option("--aid", analyze.aid_mode, "normalized (default) or raw");
  analyze_cmd->add_option("--thi-matrix", analyze.thi_matrix, "auto, raw or normalized");

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Side-by-side comparison of reports");
  compare_cmd->add_option("reports", compare.reports, "Report JSON files")->required();
  compare_cmd->add_option("--out", compare.out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bids: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const ParallelismLimit limit(threads_from_env());
    if (*gen_cmd) cmd_gen(gen);
    if (*influence_cmd) cmd_influence(influence);
    if (*similarity_cmd) cmd_similarity(similarity);
    if (*normalize_cmd) cmd_normalize(normalize);
    if (*diagnose_cmd) cmd_diagnose(diagnose);
    if (*select_cmd) cmd_select(select);
    if (*analyze_cmd) cmd_analyze(analyze);
    if (*compare_cmd) cmd_compare(compare, out);
  } catch (const Error& e) {
    err << "bids: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "bids: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace bids::cli
