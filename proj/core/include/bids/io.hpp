#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bids/matrix.hpp"

namespace bids {

enum class MatrixFormat { csv, binary };

// ".csv" (any case) selects CSV; everything else is AMAT v1 binary.
MatrixFormat format_from_path(const std::filesystem::path& path);

struct CsvOptions {
  // First line holds column ids, first field of every later line the row id.
  // The top-left cell is a label and is ignored.
  bool header = false;
};

// CSV: comma-separated decimals, one row per line, LF endings. A trailing
// newline is optional; CR before LF is tolerated on input.
AttributionMatrix parse_csv(std::string_view text, const CsvOptions& options = {});
// Writes shortest round-trip decimals, so parse_csv(to_csv(m)) == m.
std::string to_csv(const AttributionMatrix& matrix, const CsvOptions& options = {});

// AMAT v1: "AMAT", u32 version (1), u64 rows, u64 cols, rows*cols binary64
// values, row-major, all little-endian. Ids are not stored.
inline constexpr std::uint32_t kAmatVersion = 1;
inline constexpr std::size_t kAmatHeaderSize = 4 + 4 + 8 + 8;
AttributionMatrix parse_amat(std::span<const std::byte> bytes);
std::vector<std::byte> to_amat(const AttributionMatrix& matrix);

AttributionMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format,
                              const CsvOptions& options = {});
void save_matrix(const AttributionMatrix& matrix, const std::filesystem::path& path,
                 MatrixFormat format, const CsvOptions& options = {});

// Whole-file helpers. Throw IoError naming the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace bids
