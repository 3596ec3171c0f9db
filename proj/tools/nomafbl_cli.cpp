// nomafbl command-line front end. Talks to the library only through the C
// API in nomafbl/nomafbl.h.
//
// Settings are layered: defaults, then --config, then --set assignments,
// then dedicated flags. The fully resolved configuration is logged as '#'
// lines before any result.
//
// Exit codes: 0 success, 1 numerical/domain failure, 2 usage or
// configuration error, 3 validation or gating-check failure.

#include "nomafbl/nomafbl.h"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCheck = 3;

struct Failure {
  nomafbl_status status;
  std::string message;
};

int exit_code_for(nomafbl_status s) {
  switch (s) {
  case NOMAFBL_OK:
    return kExitOk;
  case NOMAFBL_ERR_CONFIG:
  case NOMAFBL_ERR_INVALID_ARGUMENT:
    return kExitUsage;
  default:
    return kExitFailure;
  }
}

void check(nomafbl_status s, const char* what) {
  if (s != NOMAFBL_OK)
    throw Failure{s, std::string(what) + ": " + nomafbl_last_error()};
}

/// Runs a size-query / fill pair against a buffer-taking API call.
std::string fetch(const std::function<nomafbl_status(char*, size_t, size_t*)>& call,
                  const char* what) {
  size_t needed = 0;
  nomafbl_status s = call(nullptr, 0, &needed);
  if (s != NOMAFBL_ERR_BUFFER_TOO_SMALL)
    check(s, what);
  std::string buf(needed, '\0');
  check(call(buf.data(), buf.size(), &needed), what);
  buf.resize(needed > 0 ? needed - 1 : 0);
  return buf;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty())
      out.push_back(line);
  return out;
}

using ConfigPtr = std::unique_ptr<nomafbl_config, decltype(&nomafbl_config_free)>;
using DatasetPtr = std::unique_ptr<nomafbl_dataset, decltype(&nomafbl_dataset_free)>;
using ValidationPtr = std::unique_ptr<nomafbl_validation, decltype(&nomafbl_validation_free)>;

/// Options shared by every computing subcommand.
struct CommonOptions {
  std::string config_path;
  std::vector<std::string> assignments;
  std::optional<std::string> seed;
  std::optional<std::string> trials;
  std::optional<std::string> threads;
  std::optional<std::string> sinr_model;
  std::optional<std::string> out_dir;

  void attach(CLI::App& app) {
    app.add_option("-c,--config", config_path, "Configuration file (INI sections)")
        ->check(CLI::ExistingFile);
    app.add_option("-s,--set", assignments, "Override one key: section.key=value (repeatable)")
        ->type_name("KEY=VALUE");
    app.add_option("--seed", seed, "Monte Carlo master seed (sim.seed)")->type_name("UINT");
    app.add_option("--trials", trials, "Monte Carlo trials per estimate (sim.trials)")
        ->type_name("UINT");
    app.add_option("-j,--threads", threads,
                   "Worker threads, 0 = all cores; results do not depend on it (sim.threads)")
        ->type_name("UINT");
    app.add_option("--sinr-model", sinr_model,
                   "NOMA user-2 SINR law: interference-limited|full-noise (point.sinr_model)")
        ->type_name("MODEL");
    app.add_option("-o,--out-dir", out_dir,
                   "Output directory (output.dir; default $NOMAFBL_OUT_DIR, else the working directory)")
        ->type_name("DIR");
  }
};

struct EvalOptions {
  std::string channel;
  std::string scheme;
  std::optional<std::string> k, n, beta, p1_db, p2_db, m_max, feedback_delay, latency_model,
      fading_unit;
  std::vector<std::string> evaluators;
  bool half_log = false;
};

void set_key(nomafbl_config* cfg, const char* key, const std::string& value) {
  check(nomafbl_config_set(cfg, key, value.c_str()), key);
}

void set_opt(nomafbl_config* cfg, const char* key, const std::optional<std::string>& value) {
  if (value)
    set_key(cfg, key, *value);
}

ConfigPtr build_config(const CommonOptions& common) {
  nomafbl_config* raw = nullptr;
  check(nomafbl_config_new(&raw), "config");
  ConfigPtr cfg(raw, &nomafbl_config_free);
  if (!common.config_path.empty())
    check(nomafbl_config_load_file(cfg.get(), common.config_path.c_str()), "--config");
  for (const auto& a : common.assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos)
      throw Failure{NOMAFBL_ERR_CONFIG, "--set: expected section.key=value, got '" + a + "'"};
    const std::string key = a.substr(0, eq);
    set_key(cfg.get(), key.c_str(), a.substr(eq + 1));
  }
  set_opt(cfg.get(), "sim.seed", common.seed);
  set_opt(cfg.get(), "sim.trials", common.trials);
  set_opt(cfg.get(), "sim.threads", common.threads);
  set_opt(cfg.get(), "point.sinr_model", common.sinr_model);
  set_opt(cfg.get(), "output.dir", common.out_dir);
  return cfg;
}

void log_config(const nomafbl_config* cfg) {
  const std::string text = fetch(
      [&](char* b, size_t c, size_t* n) { return nomafbl_config_render(cfg, 1, b, c, n); },
      "config");
  const std::string hash = fetch(
      [&](char* b, size_t c, size_t* n) { return nomafbl_config_hash(cfg, b, c, n); }, "config");
  std::cout << "# " << "nomafbl " << nomafbl_version() << "\n";
  for (const auto& line : split_lines(text))
    std::cout << "# " << line << "\n";
  std::cout << "# config_hash = " << hash << "\n";
}

void print_written(const std::string& paths) {
  for (const auto& p : split_lines(paths))
    std::cout << "wrote " << p << "\n";
}

std::string dataset_summary(const nomafbl_dataset* ds) {
  return fetch([&](char* b, size_t c, size_t* n) { return nomafbl_dataset_summary(ds, b, c, n); },
               "summary");
}

std::string write_dataset(const nomafbl_dataset* ds) {
  return fetch(
      [&](char* b, size_t c, size_t* n) { return nomafbl_dataset_write(ds, nullptr, b, c, n); },
      "write");
}

DatasetPtr take(nomafbl_dataset* raw) { return DatasetPtr(raw, &nomafbl_dataset_free); }

int run_eval(const CommonOptions& common, const EvalOptions& opt) {
  ConfigPtr cfg = build_config(common);
  nomafbl_config* c = cfg.get();
  set_key(c, "point.channel", opt.channel);
  set_key(c, "point.scheme", opt.scheme);
  set_opt(c, "point.k", opt.k);
  set_opt(c, "point.n", opt.n);
  set_opt(c, "point.beta", opt.beta);
  set_opt(c, "point.p1_db", opt.p1_db);
  set_opt(c, "point.p2_db", opt.p2_db);
  set_opt(c, "arq.m_max", opt.m_max);
  set_opt(c, "arq.feedback_delay", opt.feedback_delay);
  set_opt(c, "arq.latency_model", opt.latency_model);
  set_opt(c, "point.fading_unit", opt.fading_unit);
  if (!opt.evaluators.empty()) {
    std::string joined;
    for (const auto& e : opt.evaluators)
      joined += (joined.empty() ? "" : ",") + e;
    set_key(c, "point.evaluators", joined);
  }
  if (opt.half_log)
    set_key(c, "point.half_log_correction", "true");

  check(nomafbl_config_check(c), "configuration");
  log_config(c);
  nomafbl_dataset* raw = nullptr;
  check(nomafbl_eval(c, &raw), "eval");
  DatasetPtr ds = take(raw);
  std::cout << dataset_summary(ds.get());
  print_written(write_dataset(ds.get()));

  size_t size = 0;
  check(nomafbl_dataset_size(ds.get(), &size), "eval");
  for (size_t i = 0; i < size; ++i) {
    nomafbl_record r{};
    check(nomafbl_dataset_record(ds.get(), i, &r), "eval");
    if (r.flags & NOMAFBL_FLAG_DOMAIN_ERROR) {
      std::cerr << "error: operating point outside the model's domain (see flags)\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

int run_sweep(const CommonOptions& common, const std::optional<std::string>& figure) {
  ConfigPtr cfg = build_config(common);
  if (figure)
    set_key(cfg.get(), "sweep.figure", *figure);
  check(nomafbl_config_check(cfg.get()), "configuration");
  log_config(cfg.get());
  nomafbl_dataset* raw = nullptr;
  check(nomafbl_sweep(cfg.get(), &raw), "sweep");
  DatasetPtr ds = take(raw);
  print_written(write_dataset(ds.get()));
  std::cout << dataset_summary(ds.get());
  return kExitOk;
}

int run_reproduce(const CommonOptions& common, const std::string& figure) {
  ConfigPtr cfg = build_config(common);
  set_key(cfg.get(), "sweep.figure", figure);
  check(nomafbl_config_check(cfg.get()), "configuration");
  log_config(cfg.get());
  nomafbl_dataset* raw = nullptr;
  check(nomafbl_reproduce(cfg.get(), figure.c_str(), &raw), "reproduce");
  DatasetPtr ds = take(raw);
  print_written(write_dataset(ds.get()));
  std::cout << dataset_summary(ds.get());
  int passed = 0;
  check(nomafbl_dataset_checks_passed(ds.get(), &passed), "reproduce");
  std::cout << "result: " << (passed ? "PASS" : "FAIL") << "\n";
  return passed ? kExitOk : kExitCheck;
}

int run_validate(const CommonOptions& common) {
  ConfigPtr cfg = build_config(common);
  check(nomafbl_config_check(cfg.get()), "configuration");
  log_config(cfg.get());
  nomafbl_validation* raw = nullptr;
  check(nomafbl_validate(cfg.get(), &raw), "validate");
  ValidationPtr v(raw, &nomafbl_validation_free);
  std::cout << fetch(
      [&](char* b, size_t c, size_t* n) { return nomafbl_validation_report(v.get(), b, c, n); },
      "validate");
  print_written(fetch(
      [&](char* b, size_t c, size_t* n) {
        return nomafbl_validation_write(v.get(), nullptr, b, c, n);
      },
      "validate"));
  int passed = 0;
  check(nomafbl_validation_passed(v.get(), &passed), "validate");
  return passed ? kExitOk : kExitCheck;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-blocklength OMA/NOMA two-user uplink evaluator", "nomafbl"};
  app.set_version_flag("--version", std::string("nomafbl ") + nomafbl_version());
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 numerical/domain failure, 2 usage error, "
             "3 validation or check failure.");

  std::vector<std::string> figures;
  try {
    figures = split_lines(fetch(nomafbl_figure_ids, "figures"));
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitFailure;
  }

  CommonOptions common;
  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "Evaluate both users at one operating point");
  eval->add_option("--channel", ev.channel, "awgn|rayleigh")->required()->type_name("CHANNEL");
  eval->add_option("--scheme", ev.scheme, "oma|noma|both")->required()->type_name("SCHEME");
  eval->add_option("--k", ev.k, "Information bits per packet (default 500)")->type_name("FLOAT");
  eval->add_option("--n", ev.n, "Channel uses per frame (default 500)")->type_name("FLOAT");
  eval->add_option("--beta", ev.beta, "OMA share of user 1, in (0,1) (default 0.8)")
      ->type_name("FLOAT");
  eval->add_option("--p1-db", ev.p1_db, "User 1 transmit SNR in dB (default 10)")
      ->type_name("FLOAT");
  eval->add_option("--p2-db", ev.p2_db, "User 2 transmit SNR in dB (default 10)")
      ->type_name("FLOAT");
  eval->add_option("--m-max", ev.m_max, "Maximum ARQ transmissions (default 1)")
      ->type_name("INT");
  eval->add_option("--feedback-delay", ev.feedback_delay,
                   "ARQ feedback delay in channel uses (default 0)")
      ->type_name("FLOAT");
  eval->add_option("--latency-model", ev.latency_model,
                   "paper-literal|expected-rounds (default paper-literal)")
      ->type_name("MODEL");
  eval->add_option("--evaluator", ev.evaluators,
                   "closed-form|quadrature|montecarlo (repeatable, default closed-form)")
      ->type_name("EVALUATOR");
  eval->add_option("--fading-unit", ev.fading_unit, "nats|bits for fading closed forms")
      ->type_name("UNIT");
  eval->add_flag("--half-log-correction", ev.half_log, "Add 0.5 log2(n) to the AWGN rate");
  common.attach(*eval);

  std::optional<std::string> sweep_figure;
  auto* sweep = app.add_subcommand("sweep", "Run the [sweep] section of a configuration");
  sweep->add_option("--figure", sweep_figure, "Start from a canonical figure spec")
      ->check(CLI::IsMember(figures))
      ->type_name("FIGURE");
  common.attach(*sweep);

  std::string figure;
  auto* reproduce =
      app.add_subcommand("reproduce", "Regenerate one figure's data and run its shape checks");
  reproduce->add_option("figure", figure, "Figure id")
      ->required()
      ->check(CLI::IsMember(figures))
      ->type_name("FIGURE");
  common.attach(*reproduce);

  auto* validate = app.add_subcommand(
      "validate", "Compare closed forms, quadrature and Monte Carlo at the configured point");
  common.attach(*validate);

  app.add_subcommand("figures", "List reproducible figure ids");
  app.add_subcommand("keys", "List every configuration key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval)
      return run_eval(common, ev);
    if (*sweep)
      return run_sweep(common, sweep_figure);
    if (*reproduce)
      return run_reproduce(common, figure);
    if (*validate)
      return run_validate(common);
    if (app.got_subcommand("figures")) {
      for (const auto& f : figures)
        std::cout << f << "\n";
      return kExitOk;
    }
    if (app.got_subcommand("keys")) {
      std::cout << fetch(nomafbl_config_keys, "keys");
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cout.flush();
    std::cerr << "error: " << f.message << "\n";
    return exit_code_for(f.status);
  }
  return kExitUsage;
}
