#pragma once

// CSV and plot-data serialization of evaluated records.

#include "evaluate.hpp"
#include "figures.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nomafbl {

inline constexpr const char* kToolName = "nomafbl";
inline constexpr const char* kToolVersion = "1.0.0";

struct DataSetMeta {
  std::string tool_version = std::string(kToolName) + " " + kToolVersion;
  std::string config_hash;
  std::string rng;
  std::uint64_t seed = 0;

  friend bool operator==(const DataSetMeta&, const DataSetMeta&) = default;
};

struct DataSet {
  DataSetMeta meta;
  std::vector<ResultRecord> records;

  friend bool operator==(const DataSet&, const DataSet&) = default;
};

inline constexpr const char* kCsvHeader =
    "scheme,user,k,n,beta,p1_db,p2_db,m_max,latency_model,evaluator,epsilon,throughput,"
    "expected_channel_uses,flags";
inline constexpr int kCsvFieldCount = 14;

/// Shortest decimal that parses back to the same double; locale-independent.
std::string format_double(double v);

/// 64-bit FNV-1a digest, 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view text);

/// Metadata as '#'-prefixed lines, then header and rows, CRLF line endings.
void write_csv(const DataSet& ds, std::ostream& out);
void write_csv(const DataSet& ds, const std::filesystem::path& path);
std::string render_csv(const DataSet& ds);

/// Strict reader for write_csv output (quoted fields allowed). Throws
/// ConfigError with the line number on malformed input.
DataSet parse_csv(std::istream& in);
DataSet parse_csv_file(const std::filesystem::path& path);

/// One block per curve: a '# curve: <label>' line, a column header and
/// whitespace-separated x y rows; blocks are separated by two blank lines.
void write_plot_data(const DataSet& ds, const FigureDef& fig, std::ostream& out);
void write_plot_data(const DataSet& ds, const FigureDef& fig, const std::filesystem::path& path);

/// <stem>_<hash> with the given extension (".csv" or ".dat").
std::filesystem::path output_path(const std::filesystem::path& dir, std::string_view stem,
                                  std::string_view config_hash, std::string_view extension);

} // namespace nomafbl
