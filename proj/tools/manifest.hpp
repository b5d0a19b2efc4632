#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bids::cli {

inline constexpr const char* kToolVersion = "1.0.0";

// Provenance block embedded in every JSON output.
struct RunManifest {
  struct Input {
    std::string path;
    std::string sha256;
  };

  std::string command;
  std::vector<Input> inputs;
  nlohmann::json parameters = nlohmann::json::object();
  std::string tool_version = kToolVersion;
  std::string timestamp;  // UTC, ISO 8601

  void add_input(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

// Starts a manifest for `command` stamped with the current UTC time, or with
// SOURCE_DATE_EPOCH when that variable holds an integer (reproducible output).
RunManifest start_manifest(std::string command);

std::string sha256_file(const std::filesystem::path& path);
std::string utc_timestamp(long long epoch_seconds);

}  // namespace bids::cli
