#include "bids/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "bids/error.hpp"

namespace bids {
namespace {

constexpr char kAmatMagic[4] = {'A', 'M', 'A', 'T'};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(',', start);
    if (end == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, end - start)));
    start = end + 1;
  }
}

double parse_number(std::string_view field, std::size_t line_no, std::size_t field_no) {
  std::string_view digits = field;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ptr != digits.data() + digits.size() ||
      (ec != std::errc() && ec != std::errc::result_out_of_range)) {
    throw ParseError("line " + std::to_string(line_no) + ", field " +
                     std::to_string(field_no) + ": cannot parse '" + std::string(field) +
                     "' as a number");
  }
  if (ec == std::errc::result_out_of_range) {
    throw ValidationError("line " + std::to_string(line_no) + ", field " +
                          std::to_string(field_no) + ": value '" + std::string(field) +
                          "' out of binary64 range");
  }
  return value;
}

void append_number(std::string& out, double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, ptr);
}

template <typename T>
void put_le(std::vector<std::byte>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    out.push_back(static_cast<std::byte>((bits >> (8 * b)) & 0xFF));
  }
}

template <typename U>
U get_le(std::span<const std::byte> bytes, std::size_t offset) {
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    bits |= static_cast<U>(std::to_integer<std::uint8_t>(bytes[offset + b])) << (8 * b);
  }
  return bits;
}

}  // namespace

MatrixFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? MatrixFormat::csv : MatrixFormat::binary;
}

AttributionMatrix parse_csv(std::string_view text, const CsvOptions& options) {
  const auto lines = split_lines(text);
  std::size_t first_data = 0;
  std::optional<std::vector<std::string>> col_ids;
  std::optional<std::vector<std::string>> row_ids;
  if (options.header) {
    if (lines.empty()) throw ParseError("line 1: missing header row");
    const auto header = split_fields(lines[0]);
    col_ids.emplace(header.begin() + 1, header.end());
    row_ids.emplace();
    first_data = 1;
  }

  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  for (std::size_t l = first_data; l < lines.size(); ++l) {
    const std::size_t line_no = l + 1;
    if (trim(lines[l]).empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty line");
    }
    auto fields = split_fields(lines[l]);
    if (options.header) {
      row_ids->emplace_back(fields.front());
      fields.erase(fields.begin());
    }
    if (rows == 0) {
      cols = fields.size();
      if (col_ids && col_ids->size() != cols) {
        throw DimensionError("line " + std::to_string(line_no) + ": " +
                             std::to_string(cols) + " values but header names " +
                             std::to_string(col_ids->size()) + " columns");
      }
    } else if (fields.size() != cols) {
      throw DimensionError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(cols) + " values, found " +
                           std::to_string(fields.size()));
    }
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const double value = parse_number(fields[f], line_no, f + 1);
      if (!std::isfinite(value)) {
        throw ValidationError("non-finite value at (" + std::to_string(rows) + ", " +
                              std::to_string(f) + ")");
      }
      values.push_back(value);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("no data rows");
  return AttributionMatrix(rows, cols, std::move(values), std::move(row_ids),
                           std::move(col_ids));
}

std::string to_csv(const AttributionMatrix& matrix, const CsvOptions& options) {
  auto check_id = [](const std::string& id) {
    if (id.find_first_of(",\n\r") != std::string::npos) {
      throw ValidationError("identifier '" + id + "' cannot be written to CSV");
    }
  };
  std::string out;
  out.reserve(matrix.n_train() * matrix.n_val() * 12);
  if (options.header) {
    out += "id";
    for (std::size_t j = 0; j < matrix.n_val(); ++j) {
      out += ',';
      if (matrix.col_ids()) {
        check_id((*matrix.col_ids())[j]);
        out += (*matrix.col_ids())[j];
      } else {
        out += "c" + std::to_string(j);
      }
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < matrix.n_train(); ++i) {
    if (options.header) {
      if (matrix.row_ids()) {
        check_id((*matrix.row_ids())[i]);
        out += (*matrix.row_ids())[i];
      } else {
        out += "r" + std::to_string(i);
      }
      out += ',';
    }
    const auto row = matrix.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ',';
      append_number(out, row[j]);
    }
    out += '\n';
  }
  return out;
}

AttributionMatrix parse_amat(std::span<const std::byte> bytes) {
  if (bytes.size() < kAmatHeaderSize) {
    throw ParseError("offset " + std::to_string(bytes.size()) + ": truncated AMAT header");
  }
  if (std::memcmp(bytes.data(), kAmatMagic, 4) != 0) {
    throw ParseError("offset 0: bad magic, expected 'AMAT'");
  }
  const auto version = get_le<std::uint32_t>(bytes, 4);
  if (version != kAmatVersion) {
    throw ParseError("offset 4: unsupported AMAT version " + std::to_string(version));
  }
  const auto rows = get_le<std::uint64_t>(bytes, 8);
  const auto cols = get_le<std::uint64_t>(bytes, 16);
  if (rows == 0 || cols == 0) {
    throw DimensionError("AMAT header declares " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrix");
  }
  const std::size_t payload = bytes.size() - kAmatHeaderSize;
  if (cols > payload / 8 || rows > payload / 8 / cols || rows * cols * 8 != payload) {
    throw ParseError("offset " + std::to_string(kAmatHeaderSize) + ": payload of " +
                     std::to_string(payload) + " bytes does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols) + " binary64 values");
  }
  std::vector<double> values(rows * cols);
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = std::bit_cast<double>(get_le<std::uint64_t>(bytes, kAmatHeaderSize + 8 * k));
  }
  return AttributionMatrix(rows, cols, std::move(values));
}

std::vector<std::byte> to_amat(const AttributionMatrix& matrix) {
  std::vector<std::byte> out;
  out.reserve(kAmatHeaderSize + matrix.values().size() * 8);
  for (const char c : kAmatMagic) out.push_back(static_cast<std::byte>(c));
  put_le(out, kAmatVersion);
  put_le(out, static_cast<std::uint64_t>(matrix.n_train()));
  put_le(out, static_cast<std::uint64_t>(matrix.n_val()));
  for (const double v : matrix.values()) put_le(out, v);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

AttributionMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format,
                              const CsvOptions& options) {
  const std::string contents = read_text_file(path);
  try {
    if (format == MatrixFormat::csv) return parse_csv(contents, options);
    return parse_amat(std::as_bytes(std::span(contents)));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_matrix(const AttributionMatrix& matrix, const std::filesystem::path& path,
                 MatrixFormat format, const CsvOptions& options) {
  if (format == MatrixFormat::csv) {
    write_text_file(path, to_csv(matrix, options));
    return;
  }
  const auto bytes = to_amat(matrix);
  write_text_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                         bytes.size()));
}

}  // namespace bids
