#include "manifest.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "bids/error.hpp"

namespace bids::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for hashing");

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 initialization failed");
  }
  std::array<char, 1 << 16> buffer;
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);

  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int b = 0; b < length; ++b) {
    char pair[3];
    std::snprintf(pair, sizeof(pair), "%02x", digest[b]);
    hex += pair;
  }
  return hex;
}

std::string utc_timestamp(long long epoch_seconds) {
  const auto t = static_cast<std::time_t>(epoch_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char text[32];
  std::strftime(text, sizeof(text), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return text;
}

RunManifest start_manifest(std::string command) {
  RunManifest manifest;
  manifest.command = std::move(command);
  long long now = std::chrono::duration_cast<std::chrono::seconds>(
                      std::chrono::system_clock::now().time_since_epoch())
                      .count();
  if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long parsed = std::strtoll(fixed, &end, 10);
    if (end != fixed && *end == '\0') now = parsed;
  }
  manifest.timestamp = utc_timestamp(now);
  return manifest;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.push_back({path.string(), sha256_file(path)});
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& input : inputs) files.push_back({{"path", input.path}, {"sha256", input.sha256}});
  return {{"command", command},
          {"inputs", std::move(files)},
          {"parameters", parameters},
          {"tool_version", tool_version},
          {"timestamp", timestamp}};
}

}  // namespace bids::cli
