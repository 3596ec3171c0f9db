#include "nomafbl/nomafbl.h"

#include "config.hpp"
#include "errors.hpp"
#include "figures.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "validate.hpp"

#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

using namespace nomafbl;

struct nomafbl_config {
  ConfigDocument doc;
};

struct nomafbl_dataset {
  RunConfig cfg;
  DataSet data;
  std::string stem;
  std::optional<FigureDef> figure; ///< set for sweeps and figures
  bool is_canonical_figure = false;
  std::vector<CheckResult> checks;
};

struct nomafbl_validation {
  RunConfig cfg;
  ValidationReport report;
};

namespace {

thread_local std::string g_last_error;

nomafbl_status fail(nomafbl_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
nomafbl_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const DomainError& e) {
    return fail(NOMAFBL_ERR_DOMAIN, e.what());
  } catch (const NumericalError& e) {
    return fail(NOMAFBL_ERR_NUMERICAL, e.what());
  } catch (const ConfigError& e) {
    return fail(NOMAFBL_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(NOMAFBL_ERR_IO, e.what());
  } catch (const NoFeasiblePoint& e) {
    return fail(NOMAFBL_ERR_NO_FEASIBLE, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(NOMAFBL_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NOMAFBL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NOMAFBL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NOMAFBL_ERR_INTERNAL, "unknown exception");
  }
}

nomafbl_status null_argument(const char* what) {
  return fail(NOMAFBL_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

nomafbl_status copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
  const size_t size = text.size() + 1;
  if (needed)
    *needed = size;
  if (cap < size) {
    if (buf && cap > 0)
      buf[0] = '\0';
    return fail(NOMAFBL_ERR_BUFFER_TOO_SMALL,
                "buffer of " + std::to_string(cap) + " bytes, " + std::to_string(size) +
                    " needed");
  }
  if (!buf)
    return null_argument("buf");
  std::memcpy(buf, text.c_str(), size);
  return NOMAFBL_OK;
}

RateUnit to_unit(nomafbl_unit u) {
  if (u == NOMAFBL_BITS)
    return RateUnit::bits;
  if (u == NOMAFBL_NATS)
    return RateUnit::nats;
  throw DomainError("unknown rate unit " + std::to_string(static_cast<int>(u)));
}

LatencyModel to_latency(nomafbl_latency_model m) {
  if (m == NOMAFBL_PAPER_LITERAL)
    return LatencyModel::paper_literal;
  if (m == NOMAFBL_EXPECTED_ROUNDS)
    return LatencyModel::expected_rounds;
  throw DomainError("unknown latency model " + std::to_string(static_cast<int>(m)));
}

DataSetMeta meta_for(const RunConfig& cfg) {
  DataSetMeta meta;
  meta.config_hash = config_hash(cfg);
  meta.rng = kRngAlgorithm;
  meta.seed = cfg.sim.seed;
  return meta;
}

std::string fmt(double v) { return format_double(v); }

/// Curve layout for a free-form sweep, so that it shares the figure
/// summary and plot-data writers.
FigureDef sweep_figure(const RunConfig& cfg) {
  FigureDef f;
  f.id = "sweep";
  f.title = "sweep over " + std::string(to_string(cfg.sweep.axis));
  f.spec = cfg.sweep;
  f.y_metric = Metric::throughput;
  return f;
}

nomafbl_dataset* run_figure_sweep(const RunConfig& cfg) {
  auto ds = std::make_unique<nomafbl_dataset>();
  ds->cfg = cfg;
  ds->data.meta = meta_for(cfg);
  if (!cfg.figure.empty()) {
    FigureDef fig = canonical_figure(cfg.figure);
    fig.spec = cfg.sweep;
    ds->figure = std::move(fig);
    ds->is_canonical_figure = true;
    ds->stem = cfg.figure;
  } else {
    ds->figure = sweep_figure(cfg);
    ds->stem = "sweep";
  }
  ds->data.records = run_sweep(cfg.sweep);
  if (ds->is_canonical_figure)
    ds->checks = figure_checks(*ds->figure, ds->data.records);
  return ds.release();
}

std::string record_line(const ResultRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-5s user %d  %-12s eps=%-12.6g throughput=%-12.6g uses=%-10.6g",
                std::string(to_string(r.scheme)).c_str(), r.user,
                std::string(to_string(r.evaluator)).c_str(), r.epsilon, r.throughput,
                r.expected_channel_uses);
  std::string line = buf;
  while (!line.empty() && line.back() == ' ')
    line.pop_back();
  if (!r.flags.empty())
    line += "  flags=" + r.flags.to_string();
  return line + "\n";
}

std::string summary_text(const nomafbl_dataset& ds) {
  std::string out;
  if (!ds.figure) {
    for (const auto& r : ds.data.records)
      out += record_line(r);
    return out;
  }
  const FigureDef& fig = *ds.figure;
  const std::string axis(to_string(fig.spec.axis));
  if (ds.is_canonical_figure)
    out += fig.id + ": " + fig.title + "\n";
  for (const auto& [curve, grid] : grid_optima(fig, ds.data.records)) {
    out += "argmax " + curve.label + ": grid " + axis + "*=" + fmt(grid.x) +
           " throughput=" + fmt(grid.value);
    // Monte Carlo curves are noisy at the refinement scale; report the grid
    // optimum only.
    if (curve.key.evaluator != Evaluator::montecarlo) {
      try {
        const ArgmaxResult refined = argmax_throughput(fig.spec, curve.key);
        out += "; refined " + axis + "*=" + fmt(refined.x) + " throughput=" + fmt(refined.value);
      } catch (const NoFeasiblePoint&) {
        out += "; refined: no feasible point";
      }
    }
    out += "\n";
  }
  for (const auto& c : ds.checks) {
    out += "check " + c.name + ": " + (c.passed ? "PASS" : "FAIL");
    if (!c.gating)
      out += " (informational)";
    if (!c.detail.empty())
      out += ": " + c.detail;
    out += "\n";
  }
  return out;
}

} // namespace

extern "C" {

const char* nomafbl_version(void) { return kToolVersion; }

const char* nomafbl_last_error(void) { return g_last_error.c_str(); }

const char* nomafbl_status_name(nomafbl_status status) {
  switch (status) {
  case NOMAFBL_OK:
    return "ok";
  case NOMAFBL_ERR_DOMAIN:
    return "domain error";
  case NOMAFBL_ERR_NUMERICAL:
    return "numerical error";
  case NOMAFBL_ERR_CONFIG:
    return "configuration error";
  case NOMAFBL_ERR_IO:
    return "i/o error";
  case NOMAFBL_ERR_NO_FEASIBLE:
    return "no feasible point";
  case NOMAFBL_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case NOMAFBL_ERR_BUFFER_TOO_SMALL:
    return "buffer too small";
  case NOMAFBL_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

nomafbl_status nomafbl_q_func(double x, double* out) {
  if (!out)
    return null_argument("out");
  return guarded([&] {
    *out = q_func(x);
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_q_inv(double p, double* out) {
  if (!out)
    return null_argument("out");
  return guarded([&] {
    *out = q_inv(p);
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_capacity(double rho, nomafbl_unit unit, double* out) {
  if (!out)
    return null_argument("out");
  return guarded([&] {
    *out = capacity(SnrLinear(rho), to_unit(unit));
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_dispersion(double rho, nomafbl_unit unit, double* out) {
  if (!out)
    return null_argument("out");
  return guarded([&] {
    *out = dispersion(SnrLinear(rho), to_unit(unit));
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_awgn_error_prob(double k, double n, double rho, int half_log_correction,
                                       double* eps, uint32_t* flags) {
  if (!eps)
    return null_argument("eps");
  return guarded([&] {
    const auto r = awgn_error_prob(k, n, SnrLinear(rho), half_log_correction != 0);
    *eps = r.eps.value();
    if (flags)
      *flags = r.flags.bits();
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_achievable_rate(double n, double eps, double rho, nomafbl_unit unit,
                                       double* rate, uint32_t* flags) {
  if (!rate)
    return null_argument("rate");
  return guarded([&] {
    const auto r = achievable_rate(n, Probability(eps), SnrLinear(rho), to_unit(unit));
    *rate = r.rate.value;
    if (flags)
      *flags = r.flags.bits();
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_fading_outage(double k, double n_eff, double rho, nomafbl_unit unit,
                                     double* eps, uint32_t* flags) {
  if (!eps)
    return null_argument("eps");
  return guarded([&] {
    const auto r = oma_fading_outage(linearize(k, n_eff, SnrLinear(rho), to_unit(unit)));
    *eps = r.eps.value();
    if (flags)
      *flags = r.flags.bits();
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_exact_fading_outage(double k, double n_eff, double rho, nomafbl_unit unit,
                                           double* eps) {
  if (!eps)
    return null_argument("eps");
  return guarded([&] {
    *eps = exact_fading_outage(k, n_eff, SnrLinear(rho), to_unit(unit)).value();
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_arq_throughput(double k, double n, double eps, int m_max,
                                      double feedback_delay, nomafbl_latency_model model,
                                      double* out) {
  if (!out)
    return null_argument("out");
  return guarded([&] {
    ArqPolicy policy{m_max, feedback_delay, to_latency(model)};
    policy.validate();
    *out = arq_throughput(k, n, Probability(eps), policy);
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_config_new(nomafbl_config** out) {
  if (!out)
    return null_argument("out");
  return guarded([&] {
    *out = new nomafbl_config{};
    return NOMAFBL_OK;
  });
}

void nomafbl_config_free(nomafbl_config* cfg) { delete cfg; }

nomafbl_status nomafbl_config_load_file(nomafbl_config* cfg, const char* path) {
  if (!cfg)
    return null_argument("cfg");
  if (!path)
    return null_argument("path");
  return guarded([&] {
    cfg->doc = ConfigDocument::parse_file(path);
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_config_load_string(nomafbl_config* cfg, const char* text) {
  if (!cfg)
    return null_argument("cfg");
  if (!text)
    return null_argument("text");
  return guarded([&] {
    cfg->doc = ConfigDocument::parse_string(text);
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_config_set(nomafbl_config* cfg, const char* key, const char* value) {
  if (!cfg)
    return null_argument("cfg");
  if (!key || !value)
    return null_argument("key/value");
  return guarded([&] {
    cfg->doc.set(key, value);
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_config_check(const nomafbl_config* cfg) {
  if (!cfg)
    return null_argument("cfg");
  return guarded([&] {
    (void)cfg->doc.resolve();
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_config_render(const nomafbl_config* cfg, int include_runtime, char* buf,
                                     size_t cap, size_t* needed) {
  if (!cfg)
    return null_argument("cfg");
  return guarded([&] {
    return copy_out(render_config(cfg->doc.resolve(), include_runtime != 0), buf, cap, needed);
  });
}

nomafbl_status nomafbl_config_hash(const nomafbl_config* cfg, char* buf, size_t cap,
                                   size_t* needed) {
  if (!cfg)
    return null_argument("cfg");
  return guarded([&] { return copy_out(config_hash(cfg->doc.resolve()), buf, cap, needed); });
}

nomafbl_status nomafbl_config_keys(char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    std::string text;
    for (const auto& k : config_keys())
      text += k + "\n";
    return copy_out(text, buf, cap, needed);
  });
}

nomafbl_status nomafbl_figure_ids(char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    std::string text;
    for (const auto& id : figure_ids())
      text += id + "\n";
    return copy_out(text, buf, cap, needed);
  });
}

nomafbl_status nomafbl_eval(const nomafbl_config* cfg, nomafbl_dataset** out) {
  if (!cfg)
    return null_argument("cfg");
  if (!out)
    return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto ds = std::make_unique<nomafbl_dataset>();
    ds->cfg = cfg->doc.resolve();
    ds->data.meta = meta_for(ds->cfg);
    ds->stem = "eval";
    std::vector<Scheme> schemes{Scheme::noma, Scheme::oma};
    if (ds->cfg.scheme)
      schemes = {*ds->cfg.scheme};
    for (Scheme s : schemes)
      for (Evaluator ev : ds->cfg.point_evaluators)
        for (const auto& r : evaluate_point(ds->cfg.point, s, ev, ds->cfg.sim))
          ds->data.records.push_back(r);
    *out = ds.release();
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_sweep(const nomafbl_config* cfg, nomafbl_dataset** out) {
  if (!cfg)
    return null_argument("cfg");
  if (!out)
    return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = run_figure_sweep(cfg->doc.resolve());
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_reproduce(const nomafbl_config* cfg, const char* figure_id,
                                 nomafbl_dataset** out) {
  if (!cfg)
    return null_argument("cfg");
  if (!figure_id)
    return null_argument("figure_id");
  if (!out)
    return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    ConfigDocument doc = cfg->doc;
    doc.set("sweep.figure", figure_id, "reproduce");
    *out = run_figure_sweep(doc.resolve());
    return NOMAFBL_OK;
  });
}

nomafbl_status nomafbl_validate(const nomafbl_config* cfg, nomafbl_validation** out) {
  if (!cfg)
    return null_argument("cfg");
  if (!out)
    return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto v = std::make_unique<nomafbl_validation>();
    v->cfg = cfg->doc.resolve();
    v->report = run_validation(v->cfg);
    *out = v.release();
    return NOMAFBL_OK;
  });
}

void nomafbl_dataset_free(nomafbl_dataset* ds) { delete ds; }

nomafbl_status nomafbl_dataset_size(const nomafbl_dataset* ds, size_t* out) {
  if (!ds)
    return null_argument("ds");
  if (!out)
    return null_argument("out");
  *out = ds->data.records.size();
  return NOMAFBL_OK;
}

nomafbl_status nomafbl_dataset_record(const nomafbl_dataset* ds, size_t index,
                                      nomafbl_record* out) {
  if (!ds)
    return null_argument("ds");
  if (!out)
    return null_argument("out");
  if (index >= ds->data.records.size())
    return fail(NOMAFBL_ERR_INVALID_ARGUMENT,
                "record index " + std::to_string(index) + " out of range (size " +
                    std::to_string(ds->data.records.size()) + ")");
  const ResultRecord& r = ds->data.records[index];
  out->scheme = r.scheme == Scheme::oma ? NOMAFBL_OMA : NOMAFBL_NOMA;
  out->user = r.user;
  out->k = r.k;
  out->n = r.n;
  out->beta = r.beta;
  out->p1_db = r.p1_db;
  out->p2_db = r.p2_db;
  out->m_max = r.m_max;
  out->latency_model = r.latency_model == LatencyModel::paper_literal ? NOMAFBL_PAPER_LITERAL
                                                                      : NOMAFBL_EXPECTED_ROUNDS;
  switch (r.evaluator) {
  case Evaluator::closed_form:
    out->evaluator = NOMAFBL_CLOSED_FORM;
    break;
  case Evaluator::quadrature:
    out->evaluator = NOMAFBL_QUADRATURE;
    break;
  case Evaluator::montecarlo:
    out->evaluator = NOMAFBL_MONTECARLO;
    break;
  }
  out->epsilon = r.epsilon;
  out->throughput = r.throughput;
  out->expected_channel_uses = r.expected_channel_uses;
  out->flags = r.flags.bits();
  return NOMAFBL_OK;
}

nomafbl_status nomafbl_dataset_csv(const nomafbl_dataset* ds, char* buf, size_t cap,
                                   size_t* needed) {
  if (!ds)
    return null_argument("ds");
  return guarded([&] { return copy_out(render_csv(ds->data), buf, cap, needed); });
}

nomafbl_status nomafbl_dataset_write(const nomafbl_dataset* ds, const char* dir, char* buf,
                                     size_t cap, size_t* needed) {
  if (!ds)
    return null_argument("ds");
  return guarded([&] {
    const std::filesystem::path target = dir ? std::filesystem::path(dir) : ds->cfg.out_dir;
    std::filesystem::create_directories(target);
    const std::string& hash = ds->data.meta.config_hash;
    std::string written;
    const auto csv = output_path(target, ds->stem, hash, ".csv");
    write_csv(ds->data, csv);
    written += csv.string() + "\n";
    if (ds->figure) {
      const auto dat = output_path(target, ds->stem, hash, ".dat");
      write_plot_data(ds->data, *ds->figure, dat);
      written += dat.string() + "\n";
    }
    // The files are on disk either way; only the path report needs room.
    return copy_out(written, buf, cap, needed);
  });
}

nomafbl_status nomafbl_dataset_summary(const nomafbl_dataset* ds, char* buf, size_t cap,
                                       size_t* needed) {
  if (!ds)
    return null_argument("ds");
  return guarded([&] { return copy_out(summary_text(*ds), buf, cap, needed); });
}

nomafbl_status nomafbl_dataset_checks_passed(const nomafbl_dataset* ds, int* out) {
  if (!ds)
    return null_argument("ds");
  if (!out)
    return null_argument("out");
  bool ok = true;
  for (const auto& c : ds->checks)
    ok = ok && (c.passed || !c.gating);
  *out = ok ? 1 : 0;
  return NOMAFBL_OK;
}

void nomafbl_validation_free(nomafbl_validation* v) { delete v; }

nomafbl_status nomafbl_validation_report(const nomafbl_validation* v, char* buf, size_t cap,
                                         size_t* needed) {
  if (!v)
    return null_argument("v");
  return guarded([&] { return copy_out(v->report.render(), buf, cap, needed); });
}

nomafbl_status nomafbl_validation_write(const nomafbl_validation* v, const char* dir, char* buf,
                                        size_t cap, size_t* needed) {
  if (!v)
    return null_argument("v");
  return guarded([&] {
    const std::filesystem::path target = dir ? std::filesystem::path(dir) : v->cfg.out_dir;
    std::filesystem::create_directories(target);
    const auto path = output_path(target, "validate", config_hash(v->cfg), ".txt");
    std::ofstream out(path, std::ios::binary);
    if (!out)
      throw IoError("cannot open " + path.string() + " for writing");
    out << v->report.render();
    out.close();
    if (!out)
      throw IoError("failed writing " + path.string());
    return copy_out(path.string() + "\n", buf, cap, needed);
  });
}

nomafbl_status nomafbl_validation_passed(const nomafbl_validation* v, int* out) {
  if (!v)
    return null_argument("v");
  if (!out)
    return null_argument("out");
  *out = v->report.passed ? 1 : 0;
  return NOMAFBL_OK;
}

nomafbl_status nomafbl_validation_max_abs_z(const nomafbl_validation* v, double* out) {
  if (!v)
    return null_argument("v");
  if (!out)
    return null_argument("out");
  *out = v->report.max_abs_z;
  return NOMAFBL_OK;
}

} // extern "C"
