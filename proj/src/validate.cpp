#include "validate.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <limits>

namespace nomafbl {

namespace {

double z_score(double estimate, double reference, double std_error) {
  const double diff = estimate - reference;
  if (std_error > 0.0)
    return diff / std_error;
  return std::abs(diff) <= 1e-15 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::string case_label(Channel ch, Scheme s, int user, const OperatingPoint& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %s user%d k=%g n=%g", std::string(to_string(ch)).c_str(),
                std::string(to_string(s)).c_str(), user, p.frame.k, p.frame.n);
  return buf;
}

SimConfig sim_config(const RunConfig& cfg, Channel ch, Scheme s) {
  SimConfig sim;
  sim.trials = cfg.sim.trials;
  sim.seed = cfg.sim.seed;
  sim.threads = cfg.sim.threads;
  sim.scheme = s;
  sim.channel = ch;
  sim.frame = cfg.point.frame;
  sim.powers = cfg.point.powers();
  sim.sinr_model = cfg.point.sinr_model;
  sim.unit = cfg.point.fading_unit;
  sim.half_log_correction = cfg.point.half_log_correction;
  return sim;
}

// Standard deviation of the per-episode channel uses n R + D min(R, M-1),
// where R is the number of rounds taken: P(R >= i) = eps^(i-1).
double channel_use_sd(double eps, double n, const ArqPolicy& policy) {
  double mean = 0.0, second = 0.0, reach = 1.0;
  for (int i = 1; i <= policy.m_max; ++i) {
    const double p_i = i < policy.m_max ? reach * (1.0 - eps) : reach;
    const double cost = n * i + policy.feedback_delay * std::min(i, policy.m_max - 1);
    mean += p_i * cost;
    second += p_i * cost * cost;
    reach *= eps;
  }
  return std::sqrt(std::max(second - mean * mean, 0.0));
}

} // namespace

ValidationReport run_validation(const RunConfig& cfg) {
  ValidationReport rep;
  const OperatingPoint base = cfg.point;
  const auto add = [&](ValidationRow row) {
    if (row.gated) {
      rep.max_abs_z = std::max(rep.max_abs_z, std::abs(row.z));
      if (!(std::abs(row.z) <= kValidationZLimit))
        rep.passed = false;
    }
    rep.rows.push_back(std::move(row));
  };

  for (Scheme s : {Scheme::noma, Scheme::oma}) {
    // AWGN: the expectation is degenerate, so the simulation must reproduce
    // the closed form exactly.
    OperatingPoint p = base;
    p.channel = Channel::awgn;
    const auto awgn_mc = simulate_outage(sim_config(cfg, Channel::awgn, s));
    for (int user = 1; user <= 2; ++user) {
      ValidationRow row;
      row.case_name = case_label(Channel::awgn, s, user, p);
      row.quantity = "outage";
      row.closed_form = per_round_outage(p, s, user, Evaluator::closed_form).eps.value();
      row.quadrature = row.closed_form;
      row.mc = user == 1 ? awgn_mc.user1 : awgn_mc.user2;
      row.z = z_score(row.mc.mean, row.quadrature, row.mc.std_error);
      row.note = "degenerate expectation";
      add(row);
    }

    p.channel = Channel::rayleigh;
    const auto ray_mc = simulate_outage(sim_config(cfg, Channel::rayleigh, s));
    for (int user = 1; user <= 2; ++user) {
      ValidationRow row;
      row.case_name = case_label(Channel::rayleigh, s, user, p);
      row.quantity = "outage";
      const auto closed = per_round_outage(p, s, user, Evaluator::closed_form);
      row.closed_form = closed.eps.value();
      row.quadrature = per_round_outage(p, s, user, Evaluator::quadrature).eps.value();
      row.mc = user == 1 ? ray_mc.user1 : ray_mc.user2;
      // A finite sample can miss a tail that carries the whole deviation
      // from 0 or 1 and then reports a near-zero spread; the Bernoulli bound
      // q(1-q)/N on the variance of a [0,1]-valued estimator is the floor.
      const double floor_se =
          std::sqrt(row.quadrature * (1.0 - row.quadrature) / static_cast<double>(row.mc.trials));
      const bool floored = floor_se > row.mc.std_error;
      row.z = z_score(row.mc.mean, row.quadrature, std::max(row.mc.std_error, floor_se));
      if (s == Scheme::noma && user == 2)
        row.note = "sinr_model=" + std::string(to_string(p.sinr_model)) +
                   "; closed form is interference-limited";
      if (floored)
        row.note += (row.note.empty() ? "" : "; ") + std::string("SE floored at Bernoulli bound");
      if (!closed.flags.empty())
        row.note += (row.note.empty() ? "" : "; ") + closed.flags.to_string();
      add(row);
    }

    if (s == Scheme::noma) {
      OperatingPoint il = p, fn = p;
      il.sinr_model = SinrModel::interference_limited;
      fn.sinr_model = SinrModel::full_noise;
      ValidationRow row;
      row.case_name = case_label(Channel::rayleigh, s, 2, p);
      row.quantity = "sinr_model_gap";
      row.closed_form = per_round_outage(il, s, 2, Evaluator::quadrature).eps.value();
      row.quadrature = per_round_outage(fn, s, 2, Evaluator::quadrature).eps.value();
      row.mc.mean = row.quadrature - row.closed_form;
      row.gated = false;
      char gap[64];
      std::snprintf(gap, sizeof gap, "%.6g", row.closed_form - row.quadrature);
      row.note = std::string("interference-limited minus full-noise exact outage = ") + gap;
      add(row);
    }

    ArqPolicy policy = base.policy;
    policy.m_max = std::max(policy.m_max, 2);
    policy.latency_model = LatencyModel::expected_rounds;
    SimConfig arq_sim = sim_config(cfg, Channel::rayleigh, s);
    arq_sim.policy = policy;
    const auto arq_mc = simulate_arq(arq_sim);
    for (int user = 1; user <= 2; ++user) {
      const Probability eps = per_round_outage(p, s, user, Evaluator::quadrature).eps;
      const ArqEstimate& est = user == 1 ? arq_mc.user1 : arq_mc.user2;
      const std::string label =
          case_label(Channel::rayleigh, s, user, p) + " M=" + std::to_string(policy.m_max);

      ValidationRow uses;
      uses.case_name = label;
      uses.quantity = "arq_channel_uses";
      uses.closed_form = expected_channel_uses(eps, p.frame.n, policy);
      uses.quadrature = uses.closed_form;
      uses.mc = est.mean_channel_uses;
      // Scored with the standard error implied by the reference distribution
      // so that an all-failure sample (zero empirical variance) is still
      // judged on its merit.
      const double n_trials = static_cast<double>(uses.mc.trials);
      uses.z = z_score(uses.mc.mean, uses.quadrature,
                       channel_use_sd(eps.value(), p.frame.n, policy) / std::sqrt(n_trials));
      uses.note = "expected_rounds; null-hypothesis SE";
      add(uses);

      ValidationRow residual;
      residual.case_name = label;
      residual.quantity = "arq_residual_outage";
      residual.closed_form = cumulative_outage(eps, policy.m_max).value();
      residual.quadrature = residual.closed_form;
      residual.mc = est.residual_outage;
      const double q = residual.quadrature;
      residual.z = z_score(residual.mc.mean, q, std::sqrt(q * (1.0 - q) / n_trials));
      residual.note = "null-hypothesis SE";
      add(residual);
    }
  }
  return rep;
}

std::string ValidationReport::render() const {
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-36s %-20s %-13s %-13s %-13s %-11s %-8s %s\n", "case",
                "quantity", "closed_form", "quadrature", "montecarlo", "std_error", "z", "note");
  out += buf;
  for (const auto& r : rows) {
    char z[32];
    if (r.gated)
      std::snprintf(z, sizeof z, "%.3f", r.z);
    else
      std::snprintf(z, sizeof z, "-");
    std::snprintf(buf, sizeof buf, "%-36s %-20s %-13.6e %-13.6e %-13.6e %-11.3e %-8s %s\n",
                  r.case_name.c_str(), r.quantity.c_str(), r.closed_form, r.quadrature,
                  r.mc.mean, r.mc.std_error, z, r.note.c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "max |z| = %.3f (limit %.1f): %s\n", max_abs_z,
                kValidationZLimit, passed ? "PASS" : "FAIL");
  out += buf;
  return out;
}

} // namespace nomafbl
