#pragma once

// Type-I ARQ with at most M transmissions of the same packet, i.i.d. per-round
// outage eps and a feedback delay of D channel uses per ACK/NACK.

#include "numerics.hpp"

namespace nomafbl {

enum class LatencyModel {
  /// T = M n sum_{i=1}^{M} eps^{i-1} + D (M-1) sum_{i=1}^{M-1} eps^{i-1}
  paper_literal,
  /// T = n sum_{i=1}^{M} eps^{i-1} + D sum_{i=1}^{M-1} eps^{i-1}
  expected_rounds,
};

struct ArqPolicy {
  int m_max = 1;
  double feedback_delay = 0.0;
  LatencyModel latency_model = LatencyModel::paper_literal;

  void validate() const;
};

struct ArqOutcome {
  Probability cumulative_outage{1.0};
  double expected_channel_uses = 0.0;
  double delivered_bits = 0.0;
  double throughput = 0.0;
};

/// eps^m; eps^0 = 1.
Probability cumulative_outage(Probability eps_per_round, int m);

/// sum_{i=1}^{m} eps^{i-1}, evaluated term by term (no closed-form shortcut).
double geometric_sum(double eps, int m);

double expected_channel_uses(Probability eps, double n, const ArqPolicy& policy);

double delivered_bits(double k, Probability eps, int m_max);

double arq_throughput(double k, double n, Probability eps, const ArqPolicy& policy);

ArqOutcome evaluate_arq(double k, double n, Probability eps, const ArqPolicy& policy);

} // namespace nomafbl
