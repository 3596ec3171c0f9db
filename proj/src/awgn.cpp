#include "awgn.hpp"

namespace nomafbl {

void FrameConfig::validate() const {
  if (!(k > 0.0) || !std::isfinite(k))
    throw DomainError("frame: k must be positive");
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError("frame: n must be positive");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw DomainError("frame: beta must lie in [0,1]");
}

double effective_blocklength(Scheme scheme, int user, const FrameConfig& cfg) {
  if (user != 1 && user != 2)
    throw DomainError("user index must be 1 or 2");
  if (scheme == Scheme::noma)
    return cfg.n;
  // n - beta n rather than (1 - beta) n keeps round splits exact (500, 0.8 -> 100).
  return user == 1 ? cfg.beta * cfg.n : cfg.n - cfg.beta * cfg.n;
}

namespace {

void require_oma_split(const FrameConfig& cfg) {
  cfg.validate();
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
    throw DomainError("OMA requires beta strictly inside (0,1)");
}

} // namespace

UserPair<AchievableRate> oma_rates(const FrameConfig& cfg, const LinkPowers& powers,
                                   Probability eps) {
  require_oma_split(cfg);
  return {achievable_rate(cfg.beta * cfg.n, eps, powers.p1),
          achievable_rate(effective_blocklength(Scheme::oma, 2, cfg), eps, powers.p2)};
}

UserPair<ErrorProbability> oma_outage(const FrameConfig& cfg, const LinkPowers& powers,
                                      bool half_log_correction) {
  require_oma_split(cfg);
  return {awgn_error_prob(cfg.k, cfg.beta * cfg.n, powers.p1, half_log_correction),
          awgn_error_prob(cfg.k, effective_blocklength(Scheme::oma, 2, cfg), powers.p2,
                          half_log_correction)};
}

UserPair<SnrLinear> noma_sinrs(const LinkPowers& powers) {
  return {powers.p1, SnrLinear(powers.p2.value() / (1.0 + powers.p1.value()))};
}

UserPair<ErrorProbability> noma_outage(const FrameConfig& cfg, const LinkPowers& powers,
                                       bool half_log_correction) {
  cfg.validate();
  const auto sinr = noma_sinrs(powers);
  return {awgn_error_prob(cfg.k, cfg.n, sinr.user1, half_log_correction),
          awgn_error_prob(cfg.k, cfg.n, sinr.user2, half_log_correction)};
}

double throughput(double k, double n, Probability eps) {
  if (!(k > 0.0) || !(n > 0.0))
    throw DomainError("throughput: k and n must be positive");
  return k / n * eps.complement();
}

} // namespace nomafbl
