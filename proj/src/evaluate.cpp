#include "evaluate.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace nomafbl {

namespace {

constexpr double kShortBlocklength = 100.0;

Probability fading_closed_form(const OperatingPoint& p, Scheme scheme, int user,
                               Flags& flags) {
  const LinkPowers powers = p.powers();
  const double k = p.frame.k;
  const double n_eff = effective_blocklength(scheme, user, p.frame);
  FadingOutage out;
  if (scheme == Scheme::noma && user == 2) {
    out = noma_user2_outage(linearize_noma_user2(k, n_eff, p.fading_unit), powers);
  } else {
    const SnrLinear rho = user == 1 ? powers.p1 : powers.p2;
    out = oma_fading_outage(linearize(k, n_eff, rho, p.fading_unit));
  }
  flags |= out.flags;
  return out.eps;
}

Probability fading_quadrature(const OperatingPoint& p, Scheme scheme, int user) {
  const LinkPowers powers = p.powers();
  const double k = p.frame.k;
  const double n_eff = effective_blocklength(scheme, user, p.frame);
  if (scheme == Scheme::noma && user == 2)
    return noma_user2_exact_outage(k, n_eff, powers, p.fading_unit, p.sinr_model);
  const SnrLinear rho = user == 1 ? powers.p1 : powers.p2;
  return exact_fading_outage(k, n_eff, rho, p.fading_unit);
}

Probability monte_carlo(const OperatingPoint& p, Scheme scheme, int user,
                        const McSettings& mc) {
  SimConfig sim;
  sim.trials = mc.trials;
  sim.seed = mc.seed;
  sim.threads = mc.threads;
  sim.scheme = scheme;
  sim.channel = p.channel;
  sim.frame = p.frame;
  sim.powers = p.powers();
  sim.sinr_model = p.sinr_model;
  sim.unit = p.fading_unit;
  sim.half_log_correction = p.half_log_correction;
  const auto est = simulate_outage(sim);
  return Probability::clamped(user == 1 ? est.user1.mean : est.user2.mean);
}

std::string normalized(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '-', '_');
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <class E, std::size_t N>
E parse_enum(std::string_view text, const std::pair<const char*, E> (&table)[N],
             const char* what) {
  const std::string key = normalized(text);
  std::string accepted;
  for (const auto& [name, value] : table) {
    if (key == name)
      return value;
    accepted += accepted.empty() ? "" : ", ";
    accepted += name;
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(text) +
                    "' (expected one of: " + accepted + ")");
}

} // namespace

ErrorProbability per_round_outage(const OperatingPoint& point, Scheme scheme, int user,
                                  Evaluator evaluator, const McSettings& mc) {
  point.frame.validate();
  ErrorProbability out;
  const double n_eff = effective_blocklength(scheme, user, point.frame);
  if (scheme == Scheme::oma && !(point.frame.beta > 0.0 && point.frame.beta < 1.0))
    throw DomainError("OMA requires beta strictly inside (0,1)");

  if (evaluator == Evaluator::montecarlo) {
    out.eps = monte_carlo(point, scheme, user, mc);
  } else if (point.channel == Channel::awgn) {
    const LinkPowers powers = point.powers();
    SnrLinear rho = user == 1 ? powers.p1 : powers.p2;
    if (scheme == Scheme::noma && user == 2)
      rho = noma_sinrs(powers).user2;
    out = awgn_error_prob(point.frame.k, n_eff, rho, point.half_log_correction);
  } else if (evaluator == Evaluator::closed_form) {
    out.eps = fading_closed_form(point, scheme, user, out.flags);
  } else {
    out.eps = fading_quadrature(point, scheme, user);
  }
  if (n_eff < kShortBlocklength)
    out.flags |= Flag::short_blocklength;
  return out;
}

std::array<ResultRecord, 2> evaluate_point(const OperatingPoint& point, Scheme scheme,
                                           Evaluator evaluator, const McSettings& mc) {
  std::array<ResultRecord, 2> records;
  for (int user = 1; user <= 2; ++user) {
    ResultRecord& r = records[static_cast<std::size_t>(user - 1)];
    r.scheme = scheme;
    r.user = user;
    r.k = point.frame.k;
    r.n = point.frame.n;
    if (scheme == Scheme::oma)
      r.beta = point.frame.beta;
    else
      r.beta = user == 1 ? 1.0 : 0.0;
    r.p1_db = point.p1_db;
    r.p2_db = point.p2_db;
    r.m_max = point.policy.m_max;
    r.latency_model = point.policy.latency_model;
    r.evaluator = evaluator;
    try {
      point.policy.validate();
      const ErrorProbability e = per_round_outage(point, scheme, user, evaluator, mc);
      const ArqOutcome arq = evaluate_arq(point.frame.k, point.frame.n, e.eps, point.policy);
      r.epsilon = arq.cumulative_outage.value();
      r.throughput = arq.throughput;
      r.expected_channel_uses = arq.expected_channel_uses;
      r.flags = e.flags;
    } catch (const DomainError&) {
      r.epsilon = 1.0;
      r.throughput = 0.0;
      r.expected_channel_uses = 0.0;
      r.flags = Flag::domain_error;
    }
  }
  return records;
}

std::string_view to_string(Scheme s) { return s == Scheme::oma ? "oma" : "noma"; }

std::string_view to_string(Evaluator e) {
  switch (e) {
  case Evaluator::closed_form:
    return "closed_form";
  case Evaluator::quadrature:
    return "quadrature";
  case Evaluator::montecarlo:
    return "montecarlo";
  }
  return "?";
}

std::string_view to_string(LatencyModel m) {
  return m == LatencyModel::paper_literal ? "paper_literal" : "expected_rounds";
}

std::string_view to_string(Channel c) { return c == Channel::awgn ? "awgn" : "rayleigh"; }

std::string_view to_string(SinrModel m) {
  return m == SinrModel::interference_limited ? "interference_limited" : "full_noise";
}

std::string_view to_string(RateUnit u) { return u == RateUnit::bits ? "bits" : "nats"; }

Scheme parse_scheme(std::string_view text) {
  static constexpr std::pair<const char*, Scheme> t[] = {{"oma", Scheme::oma},
                                                         {"noma", Scheme::noma}};
  return parse_enum(text, t, "scheme");
}

Evaluator parse_evaluator(std::string_view text) {
  static constexpr std::pair<const char*, Evaluator> t[] = {
      {"closed_form", Evaluator::closed_form},
      {"quadrature", Evaluator::quadrature},
      {"montecarlo", Evaluator::montecarlo}};
  return parse_enum(text, t, "evaluator");
}

LatencyModel parse_latency_model(std::string_view text) {
  static constexpr std::pair<const char*, LatencyModel> t[] = {
      {"paper_literal", LatencyModel::paper_literal},
      {"expected_rounds", LatencyModel::expected_rounds}};
  return parse_enum(text, t, "latency model");
}

Channel parse_channel(std::string_view text) {
  static constexpr std::pair<const char*, Channel> t[] = {{"awgn", Channel::awgn},
                                                          {"rayleigh", Channel::rayleigh}};
  return parse_enum(text, t, "channel");
}

SinrModel parse_sinr_model(std::string_view text) {
  static constexpr std::pair<const char*, SinrModel> t[] = {
      {"interference_limited", SinrModel::interference_limited},
      {"full_noise", SinrModel::full_noise}};
  return parse_enum(text, t, "SINR model");
}

RateUnit parse_rate_unit(std::string_view text) {
  static constexpr std::pair<const char*, RateUnit> t[] = {{"bits", RateUnit::bits},
                                                           {"nats", RateUnit::nats}};
  return parse_enum(text, t, "rate unit");
}

} // namespace nomafbl
