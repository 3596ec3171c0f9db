#pragma once

// Run configuration: an INI-style document with [point], [arq], [sweep],
// [sim] and [output] sections. Every key is optional; defaults reproduce the
// canonical setup (k = n = 500, P1 = P2 = 10 dB, beta = 0.8, M = 1, D = 0).

#include "sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nomafbl {

struct RunConfig {
  OperatingPoint point;
  std::optional<Scheme> scheme; ///< unset = both schemes
  std::vector<Evaluator> point_evaluators{Evaluator::closed_form};
  std::string figure;           ///< canonical figure the sweep derives from, if any
  SweepSpec sweep;              ///< sweep.fixed mirrors point
  McSettings sim;
  std::filesystem::path out_dir;
};

/// Environment variable overriding the default output directory.
inline constexpr const char* kOutDirEnv = "NOMAFBL_OUT_DIR";

std::filesystem::path default_output_dir();

class ConfigDocument {
public:
  /// Throws ConfigError naming source:line for syntax errors, unknown
  /// sections or keys, and duplicate keys.
  static ConfigDocument parse(std::istream& in, std::string_view source);
  static ConfigDocument parse_file(const std::filesystem::path& path);
  static ConfigDocument parse_string(std::string_view text, std::string_view source = "<string>");

  /// Sets section.key; later calls replace earlier values.
  void set(std::string_view dotted_key, std::string_view value,
           std::string_view origin = "override");
  /// "section.key=value".
  void set_assignment(std::string_view assignment, std::string_view origin = "--set");

  /// Applies defaults, then the canonical figure (sweep.figure), then every
  /// explicit key. Value errors name the key and where it was set.
  RunConfig resolve() const;

  struct Entry {
    std::string key;
    std::string value;
    std::string origin;
  };
  const std::vector<Entry>& entries() const { return entries_; }

private:
  std::vector<Entry> entries_;
};

/// All accepted keys as "section.key", in canonical order.
const std::vector<std::string>& config_keys();

/// Canonical INI rendering of every key. Runtime-only keys (sim.threads,
/// output.dir) appear only with include_runtime.
std::string render_config(const RunConfig& cfg, bool include_runtime);

/// FNV-1a-64 of render_config(cfg, false).
std::string config_hash(const RunConfig& cfg);

} // namespace nomafbl
