#include "config.hpp"

#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

namespace nomafbl {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string_view rest = v;
  while (true) {
    const auto comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    if (!item.empty())
      out.push_back(item);
    if (comma == std::string_view::npos)
      break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError("expected a finite number, got '" + v + "'");
  return x;
}

template <class Int>
Int to_int(const std::string& v) {
  Int x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on")
    return true;
  if (v == "false" || v == "0" || v == "no" || v == "off")
    return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items)
    out += (out.empty() ? "" : ",") + s;
  return out;
}

template <class T, class F>
std::string join_mapped(const std::vector<T>& items, F f) {
  std::vector<std::string> s;
  for (const auto& x : items)
    s.push_back(f(x));
  return join(s);
}

std::vector<Evaluator> parse_evaluators(const std::string& v) {
  std::vector<Evaluator> out;
  for (const auto& s : split_list(v))
    out.push_back(parse_evaluator(s));
  if (out.empty())
    throw ConfigError("at least one evaluator is required");
  return out;
}

struct KeyDef {
  const char* key;
  bool runtime;
  std::function<void(RunConfig&, const std::string&)> apply;
  std::function<std::string(const RunConfig&)> render;
};

std::string ev_list(const std::vector<Evaluator>& v) {
  return join_mapped(v, [](Evaluator e) { return std::string(to_string(e)); });
}

const std::vector<KeyDef>& key_defs() {
  using R = RunConfig;
  using S = const std::string&;
  static const std::vector<KeyDef> defs{
      {"point.channel", false, [](R& c, S v) { c.point.channel = parse_channel(v); },
       [](const R& c) { return std::string(to_string(c.point.channel)); }},
      {"point.scheme", false,
       [](R& c, S v) {
         if (v == "both")
           c.scheme.reset();
         else
           c.scheme = parse_scheme(v);
       },
       [](const R& c) { return c.scheme ? std::string(to_string(*c.scheme)) : "both"; }},
      {"point.k", false, [](R& c, S v) { c.point.frame.k = to_double(v); },
       [](const R& c) { return format_double(c.point.frame.k); }},
      {"point.n", false, [](R& c, S v) { c.point.frame.n = to_double(v); },
       [](const R& c) { return format_double(c.point.frame.n); }},
      {"point.beta", false, [](R& c, S v) { c.point.frame.beta = to_double(v); },
       [](const R& c) { return format_double(c.point.frame.beta); }},
      {"point.p1_db", false, [](R& c, S v) { c.point.p1_db = to_double(v); },
       [](const R& c) { return format_double(c.point.p1_db); }},
      {"point.p2_db", false, [](R& c, S v) { c.point.p2_db = to_double(v); },
       [](const R& c) { return format_double(c.point.p2_db); }},
      {"point.sinr_model", false, [](R& c, S v) { c.point.sinr_model = parse_sinr_model(v); },
       [](const R& c) { return std::string(to_string(c.point.sinr_model)); }},
      {"point.fading_unit", false, [](R& c, S v) { c.point.fading_unit = parse_rate_unit(v); },
       [](const R& c) { return std::string(to_string(c.point.fading_unit)); }},
      {"point.half_log_correction", false,
       [](R& c, S v) { c.point.half_log_correction = to_bool(v); },
       [](const R& c) { return std::string(c.point.half_log_correction ? "true" : "false"); }},
      {"point.evaluators", false, [](R& c, S v) { c.point_evaluators = parse_evaluators(v); },
       [](const R& c) { return ev_list(c.point_evaluators); }},
      {"arq.m_max", false, [](R& c, S v) { c.point.policy.m_max = to_int<int>(v); },
       [](const R& c) { return std::to_string(c.point.policy.m_max); }},
      {"arq.feedback_delay", false,
       [](R& c, S v) { c.point.policy.feedback_delay = to_double(v); },
       [](const R& c) { return format_double(c.point.policy.feedback_delay); }},
      {"arq.latency_model", false,
       [](R& c, S v) { c.point.policy.latency_model = parse_latency_model(v); },
       [](const R& c) { return std::string(to_string(c.point.policy.latency_model)); }},
      {"sweep.figure", false,
       [](R& c, S v) {
         if (!v.empty())
           canonical_figure(v); // validates the id
         c.figure = v;
       },
       [](const R& c) { return c.figure; }},
      {"sweep.axis", false, [](R& c, S v) { c.sweep.axis = parse_axis(v); },
       [](const R& c) { return std::string(to_string(c.sweep.axis)); }},
      {"sweep.start", false, [](R& c, S v) { c.sweep.range.start = to_double(v); },
       [](const R& c) { return format_double(c.sweep.range.start); }},
      {"sweep.stop", false, [](R& c, S v) { c.sweep.range.stop = to_double(v); },
       [](const R& c) { return format_double(c.sweep.range.stop); }},
      {"sweep.step", false, [](R& c, S v) { c.sweep.range.step = to_double(v); },
       [](const R& c) { return format_double(c.sweep.range.step); }},
      {"sweep.count", false,
       [](R& c, S v) {
         c.sweep.range = Range::from_count(c.sweep.range.start, c.sweep.range.stop, to_int<int>(v));
       },
       nullptr},
      {"sweep.schemes", false,
       [](R& c, S v) {
         c.sweep.schemes.clear();
         for (const auto& s : split_list(v))
           c.sweep.schemes.push_back(parse_scheme(s));
       },
       [](const R& c) {
         return join_mapped(c.sweep.schemes, [](Scheme s) { return std::string(to_string(s)); });
       }},
      {"sweep.betas", false,
       [](R& c, S v) {
         c.sweep.oma_betas.clear();
         for (const auto& s : split_list(v))
           c.sweep.oma_betas.push_back(to_double(s));
       },
       [](const R& c) { return join_mapped(c.sweep.oma_betas, format_double); }},
      {"sweep.m_values", false,
       [](R& c, S v) {
         c.sweep.m_values.clear();
         for (const auto& s : split_list(v))
           c.sweep.m_values.push_back(to_int<int>(s));
       },
       [](const R& c) {
         return join_mapped(c.sweep.m_values, [](int m) { return std::to_string(m); });
       }},
      {"sweep.power_mode", false, [](R& c, S v) { c.sweep.power_mode = parse_power_mode(v); },
       [](const R& c) { return std::string(to_string(c.sweep.power_mode)); }},
      {"sweep.metrics", false,
       [](R& c, S v) {
         c.sweep.metrics.clear();
         for (const auto& s : split_list(v))
           c.sweep.metrics.push_back(parse_metric(s));
       },
       [](const R& c) {
         return join_mapped(c.sweep.metrics, [](Metric m) { return std::string(to_string(m)); });
       }},
      {"sweep.evaluators", false, [](R& c, S v) { c.sweep.evaluators = parse_evaluators(v); },
       [](const R& c) { return ev_list(c.sweep.evaluators); }},
      {"sim.trials", false, [](R& c, S v) { c.sim.trials = to_int<std::uint64_t>(v); },
       [](const R& c) { return std::to_string(c.sim.trials); }},
      {"sim.seed", false, [](R& c, S v) { c.sim.seed = to_int<std::uint64_t>(v); },
       [](const R& c) { return std::to_string(c.sim.seed); }},
      {"sim.threads", true, [](R& c, S v) { c.sim.threads = to_int<unsigned>(v); },
       [](const R& c) { return std::to_string(c.sim.threads); }},
      {"output.dir", true, [](R& c, S v) { c.out_dir = v; },
       [](const R& c) { return c.out_dir.string(); }},
  };
  return defs;
}

const KeyDef* find_key(std::string_view key) {
  for (const auto& d : key_defs())
    if (key == d.key)
      return &d;
  return nullptr;
}

bool known_section(std::string_view s) {
  return s == "point" || s == "arq" || s == "sweep" || s == "sim" || s == "output";
}

} // namespace

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutDirEnv); env && *env)
    return env;
  return ".";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& d : key_defs())
      k.emplace_back(d.key);
    return k;
  }();
  return keys;
}

ConfigDocument ConfigDocument::parse(std::istream& in, std::string_view source) {
  ConfigDocument doc;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  const auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    const std::string text = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (text.empty())
      continue;
    if (text.front() == '[') {
      if (text.back() != ']')
        throw ConfigError(where() + "malformed section header '" + text + "'");
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      if (!known_section(section))
        throw ConfigError(where() + "unknown section [" + section +
                          "] (expected point, arq, sweep, sim or output)");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where() + "expected 'key = value', got '" + text + "'");
    if (section.empty())
      throw ConfigError(where() + "key outside of any section");
    const std::string key = section + "." + trim(std::string_view(text).substr(0, eq));
    if (!find_key(key))
      throw ConfigError(where() + "unknown key '" + key.substr(section.size() + 1) +
                        "' in section [" + section + "]");
    for (const auto& e : doc.entries_)
      if (e.key == key)
        throw ConfigError(where() + "duplicate key '" + key + "' (first set at " + e.origin +
                          ")");
    doc.entries_.push_back(
        {key, trim(std::string_view(text).substr(eq + 1)), where().substr(0, where().size() - 2)});
  }
  return doc;
}

ConfigDocument ConfigDocument::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config '" + path.string() + "'");
  return parse(in, path.string());
}

ConfigDocument ConfigDocument::parse_string(std::string_view text, std::string_view source) {
  std::istringstream in{std::string(text)};
  return parse(in, source);
}

void ConfigDocument::set(std::string_view dotted_key, std::string_view value,
                         std::string_view origin) {
  const std::string key = trim(dotted_key);
  if (!find_key(key))
    throw ConfigError(std::string(origin) + ": unknown key '" + key + "'");
  const std::string v = trim(value);
  for (auto& e : entries_)
    if (e.key == key) {
      e.value = v;
      e.origin = std::string(origin);
      return;
    }
  entries_.push_back({key, v, std::string(origin)});
}

void ConfigDocument::set_assignment(std::string_view assignment, std::string_view origin) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError(std::string(origin) + ": expected section.key=value, got '" +
                      std::string(assignment) + "'");
  set(assignment.substr(0, eq), assignment.substr(eq + 1), origin);
}

RunConfig ConfigDocument::resolve() const {
  RunConfig cfg;
  cfg.out_dir = default_output_dir();
  const auto apply = [&](const Entry& e) {
    try {
      find_key(e.key)->apply(cfg, e.value);
    } catch (const std::exception& ex) {
      throw ConfigError(e.origin + ": " + e.key + ": " + ex.what());
    }
  };
  for (const auto& e : entries_)
    if (e.key == "sweep.figure")
      apply(e);
  if (!cfg.figure.empty()) {
    const FigureDef fig = canonical_figure(cfg.figure);
    cfg.point = fig.spec.fixed;
    cfg.sweep = fig.spec;
  }
  // Canonical key order, so that e.g. sweep.count always follows start/stop.
  for (const auto& d : key_defs())
    for (const auto& e : entries_)
      if (e.key == d.key && e.key != "sweep.figure")
        apply(e);
  cfg.sweep.fixed = cfg.point;
  cfg.sweep.mc = cfg.sim;
  cfg.sweep.threads = cfg.sim.threads;
  try {
    cfg.point.frame.validate();
    cfg.point.policy.validate();
    cfg.sweep.validate();
    if (cfg.sim.trials < 1)
      throw ConfigError("sim.trials must be >= 1");
    (void)cfg.point.powers();
  } catch (const DomainError& ex) {
    throw ConfigError(std::string("invalid configuration: ") + ex.what());
  }
  return cfg;
}

std::string render_config(const RunConfig& cfg, bool include_runtime) {
  std::string out;
  std::string section;
  for (const auto& d : key_defs()) {
    if (!d.render || (d.runtime && !include_runtime))
      continue;
    const std::string_view key = d.key;
    const auto dot = key.find('.');
    const std::string sec(key.substr(0, dot));
    if (sec != section) {
      out += "[" + sec + "]\n";
      section = sec;
    }
    const std::string value = d.render(cfg);
    out += std::string(key.substr(dot + 1)) + " =" + (value.empty() ? "" : " " + value) + "\n";
  }
  return out;
}

std::string config_hash(const RunConfig& cfg) { return fnv1a64_hex(render_config(cfg, false)); }

} // namespace nomafbl
