#pragma once

// Point evaluation: one operating point, one scheme, one evaluator -> one
// record per user.

#include "arq.hpp"
#include "awgn.hpp"
#include "fading.hpp"
#include "montecarlo.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace nomafbl {

enum class Evaluator {
  closed_form, ///< normal approximation (AWGN) or linearized closed forms (fading)
  quadrature,  ///< exact expectation of the conditional error over the fading law
  montecarlo,  ///< smooth Monte Carlo estimate of the same expectation
};

struct OperatingPoint {
  Channel channel = Channel::awgn;
  FrameConfig frame;
  double p1_db = 10.0;
  double p2_db = 10.0;
  ArqPolicy policy;
  SinrModel sinr_model = SinrModel::interference_limited;
  RateUnit fading_unit = RateUnit::nats;
  bool half_log_correction = false;

  LinkPowers powers() const { return LinkPowers::from_db(p1_db, p2_db); }
};

struct McSettings {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct ResultRecord {
  Scheme scheme = Scheme::noma;
  int user = 1;
  double k = 0.0;
  double n = 0.0;
  double beta = 0.0; ///< OMA: user 1's share; NOMA: 1 (user 1), 0 (user 2)
  double p1_db = 0.0;
  double p2_db = 0.0;
  int m_max = 1;
  LatencyModel latency_model = LatencyModel::paper_literal;
  Evaluator evaluator = Evaluator::closed_form;
  double epsilon = 1.0; ///< outage after m_max rounds (per-round outage when m_max = 1)
  double throughput = 0.0;
  double expected_channel_uses = 0.0;
  Flags flags;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

/// Per-round outage of one user at one point. Closed-form fading for NOMA
/// user 2 always uses the interference-limited SINR law (the only one with a
/// closed form); quadrature and Monte Carlo honour point.sinr_model.
ErrorProbability per_round_outage(const OperatingPoint& point, Scheme scheme, int user,
                                  Evaluator evaluator, const McSettings& mc = {});

/// Records for both users. Domain failures are reported through
/// Flag::domain_error with epsilon = 1 and zero throughput instead of
/// throwing; numerical failures propagate.
std::array<ResultRecord, 2> evaluate_point(const OperatingPoint& point, Scheme scheme,
                                           Evaluator evaluator, const McSettings& mc = {});

std::string_view to_string(Scheme s);
std::string_view to_string(Evaluator e);
std::string_view to_string(LatencyModel m);
std::string_view to_string(Channel c);
std::string_view to_string(SinrModel m);
std::string_view to_string(RateUnit u);

/// Inverses of to_string; throw ConfigError naming the accepted spellings.
Scheme parse_scheme(std::string_view text);
Evaluator parse_evaluator(std::string_view text);
LatencyModel parse_latency_model(std::string_view text);
Channel parse_channel(std::string_view text);
SinrModel parse_sinr_model(std::string_view text);
RateUnit parse_rate_unit(std::string_view text);

} // namespace nomafbl
