#include "report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace nomafbl {

namespace {

constexpr const char* kEol = "\r\n";    // CSV (RFC 4180)
constexpr const char* kPlotEol = "\n"; // plot data, for gnuplot and friends

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool field_was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (!cur.empty() || field_was_quoted)
        throw ConfigError("csv line " + std::to_string(line_no) + ": stray quote");
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      field_was_quoted = false;
    } else {
      if (field_was_quoted)
        throw ConfigError("csv line " + std::to_string(line_no) + ": text after closing quote");
      cur += c;
    }
  }
  if (quoted)
    throw ConfigError("csv line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no, const char* field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("csv line " + std::to_string(line_no) + ": field '" + field +
                      "' is not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s, std::size_t line_no, const char* field) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("csv line " + std::to_string(line_no) + ": field '" + field +
                      "' is not an integer: '" + s + "'");
  return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path(), ec);
  if (ec)
    throw IoError("cannot create directory '" + path.parent_path().string() + "': " +
                  ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out)
    throw IoError("write to '" + path.string() + "' failed");
}

void write_meta(const DataSetMeta& m, std::ostream& out, const char* eol = kEol) {
  out << "# tool: " << m.tool_version << eol;
  out << "# config_hash: " << m.config_hash << eol;
  out << "# rng: " << m.rng << eol;
  out << "# seed: " << m.seed << eol;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc())
    throw NumericalError("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string fnv1a64_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_csv(const DataSet& ds, std::ostream& out) {
  write_meta(ds.meta, out);
  out << kCsvHeader << kEol;
  for (const auto& r : ds.records) {
    out << to_string(r.scheme) << ',' << r.user << ',' << format_double(r.k) << ','
        << format_double(r.n) << ',' << format_double(r.beta) << ',' << format_double(r.p1_db)
        << ',' << format_double(r.p2_db) << ',' << r.m_max << ',' << to_string(r.latency_model)
        << ',' << to_string(r.evaluator) << ',' << format_double(r.epsilon) << ','
        << format_double(r.throughput) << ',' << format_double(r.expected_channel_uses) << ','
        << csv_field(r.flags.to_string()) << kEol;
  }
}

void write_csv(const DataSet& ds, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_csv(ds, out);
  finish(out, path);
}

std::string render_csv(const DataSet& ds) {
  std::ostringstream os;
  write_csv(ds, os);
  return os.str();
}

DataSet parse_csv(std::istream& in) {
  DataSet ds;
  ds.meta = DataSetMeta{};
  ds.meta.tool_version.clear();
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!header_seen && line.rfind("#", 0) == 0) {
      const auto colon = line.find(':');
      if (colon == std::string::npos)
        continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = colon + 2 <= line.size() ? line.substr(colon + 2) : "";
      if (key == "tool")
        ds.meta.tool_version = value;
      else if (key == "config_hash")
        ds.meta.config_hash = value;
      else if (key == "rng")
        ds.meta.rng = value;
      else if (key == "seed")
        ds.meta.seed = std::stoull(value);
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader)
        throw ConfigError("csv line " + std::to_string(line_no) + ": unexpected header");
      header_seen = true;
      continue;
    }
    if (line.empty())
      continue;
    const auto f = split_csv_line(line, line_no);
    if (static_cast<int>(f.size()) != kCsvFieldCount)
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected " +
                        std::to_string(kCsvFieldCount) + " fields, found " +
                        std::to_string(f.size()));
    ResultRecord r;
    r.scheme = parse_scheme(f[0]);
    r.user = parse_int(f[1], line_no, "user");
    r.k = parse_double(f[2], line_no, "k");
    r.n = parse_double(f[3], line_no, "n");
    r.beta = parse_double(f[4], line_no, "beta");
    r.p1_db = parse_double(f[5], line_no, "p1_db");
    r.p2_db = parse_double(f[6], line_no, "p2_db");
    r.m_max = parse_int(f[7], line_no, "m_max");
    r.latency_model = parse_latency_model(f[8]);
    r.evaluator = parse_evaluator(f[9]);
    r.epsilon = parse_double(f[10], line_no, "epsilon");
    r.throughput = parse_double(f[11], line_no, "throughput");
    r.expected_channel_uses = parse_double(f[12], line_no, "expected_channel_uses");
    r.flags = Flags::parse(f[13]);
    ds.records.push_back(r);
  }
  if (!header_seen)
    throw ConfigError("csv: header row missing");
  return ds;
}

DataSet parse_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  return parse_csv(in);
}

void write_plot_data(const DataSet& ds, const FigureDef& fig, std::ostream& out) {
  const auto curves = figure_curves(fig, ds.records);
  write_meta(ds.meta, out, kPlotEol);
  out << "# figure: " << fig.id << " (" << fig.title << ")" << kPlotEol;
  out << "# curves: " << curves.size() << kPlotEol;
  for (const auto& c : curves) {
    out << kPlotEol << kPlotEol;
    out << "# curve: " << c.label << kPlotEol;
    out << "# " << to_string(fig.spec.axis) << ' ' << to_string(fig.y_metric) << kPlotEol;
    for (const auto& p : c.points)
      out << format_double(p.x) << ' ' << format_double(p.y) << kPlotEol;
  }
}

void write_plot_data(const DataSet& ds, const FigureDef& fig, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_plot_data(ds, fig, out);
  finish(out, path);
}

std::filesystem::path output_path(const std::filesystem::path& dir, std::string_view stem,
                                  std::string_view config_hash, std::string_view extension) {
  return dir / (std::string(stem) + "_" + std::string(config_hash) + std::string(extension));
}

} // namespace nomafbl
