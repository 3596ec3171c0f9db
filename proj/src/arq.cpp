#include "arq.hpp"

namespace nomafbl {

void ArqPolicy::validate() const {
  if (m_max < 1)
    throw DomainError("ARQ: maximum number of transmissions must be >= 1");
  if (!(feedback_delay >= 0.0) || !std::isfinite(feedback_delay))
    throw DomainError("ARQ: feedback delay must be finite and non-negative");
}

Probability cumulative_outage(Probability eps_per_round, int m) {
  if (m < 0)
    throw DomainError("cumulative_outage: round count must be non-negative");
  double acc = 1.0;
  for (int i = 0; i < m; ++i)
    acc *= eps_per_round.value();
  return Probability(acc);
}

double geometric_sum(double eps, int m) {
  double sum = 0.0;
  double term = 1.0;
  for (int i = 0; i < m; ++i) {
    sum += term;
    term *= eps;
  }
  return sum;
}

double expected_channel_uses(Probability eps, double n, const ArqPolicy& policy) {
  policy.validate();
  if (!(n > 0.0))
    throw DomainError("expected_channel_uses: n must be positive");
  const int m = policy.m_max;
  const double e = eps.value();
  const double air = n * geometric_sum(e, m);
  const double waits = policy.feedback_delay * geometric_sum(e, m - 1);
  if (policy.latency_model == LatencyModel::paper_literal)
    return static_cast<double>(m) * air + static_cast<double>(m - 1) * waits;
  return air + waits;
}

double delivered_bits(double k, Probability eps, int m_max) {
  return k * cumulative_outage(eps, m_max).complement();
}

double arq_throughput(double k, double n, Probability eps, const ArqPolicy& policy) {
  if (policy.m_max == 1) {
    policy.validate();
    return k / n * eps.complement();
  }
  return delivered_bits(k, eps, policy.m_max) / expected_channel_uses(eps, n, policy);
}

ArqOutcome evaluate_arq(double k, double n, Probability eps, const ArqPolicy& policy) {
  ArqOutcome out;
  out.cumulative_outage = cumulative_outage(eps, policy.m_max);
  out.expected_channel_uses = expected_channel_uses(eps, n, policy);
  out.delivered_bits = delivered_bits(k, eps, policy.m_max);
  out.throughput = arq_throughput(k, n, eps, policy);
  return out;
}

} // namespace nomafbl
