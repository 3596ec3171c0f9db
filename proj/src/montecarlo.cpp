#include "montecarlo.hpp"

#include "rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace nomafbl {

void SimConfig::validate() const {
  if (trials < 1)
    throw DomainError("simulation needs at least one trial");
  frame.validate();
  if (scheme == Scheme::oma && !(frame.beta > 0.0 && frame.beta < 1.0))
    throw DomainError("OMA requires beta strictly inside (0,1)");
  if (policy)
    policy->validate();
}

void RunningStats::push(double x) {
  ++count;
  const double d = x - mean;
  mean += d / static_cast<double>(count);
  m2 += d * (x - mean);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.count == 0)
    return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const double d = other.mean - mean;
  mean += d * nb / n;
  m2 += other.m2 + d * d * na * nb / n;
  count += other.count;
}

Estimate RunningStats::estimate() const {
  Estimate e;
  e.mean = mean;
  e.trials = count;
  if (count > 1)
    e.std_error = std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  return e;
}

namespace {

// Bivariate accumulator for the renewal-reward ratio E[K]/E[T].
struct RatioStats {
  RunningStats reward;
  RunningStats cost;
  double comoment = 0.0;

  void push(double k, double t) {
    const double dk = k - reward.mean;
    reward.push(k);
    cost.push(t);
    comoment += dk * (t - cost.mean);
  }

  void merge(const RatioStats& o) {
    if (o.reward.count == 0)
      return;
    if (reward.count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(reward.count);
    const double nb = static_cast<double>(o.reward.count);
    const double dk = o.reward.mean - reward.mean;
    const double dt = o.cost.mean - cost.mean;
    comoment += o.comoment + dk * dt * na * nb / (na + nb);
    reward.merge(o.reward);
    cost.merge(o.cost);
  }

  Estimate ratio() const {
    Estimate e;
    e.trials = reward.count;
    if (cost.mean == 0.0)
      return e;
    e.mean = reward.mean / cost.mean;
    if (reward.count > 1) {
      const double n1 = static_cast<double>(reward.count - 1);
      const double var = (reward.m2 - 2.0 * e.mean * comoment + e.mean * e.mean * cost.m2) / n1;
      e.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(reward.count)) / cost.mean;
    }
    return e;
  }
};

unsigned worker_count(unsigned requested, std::size_t chunks) {
  unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, chunks));
}

// Runs body(chunk, first_trial, count) for every chunk on a worker pool and
// returns per-chunk results in chunk order.
template <class Acc, class Body>
std::vector<Acc> run_chunks(std::uint64_t trials, unsigned threads, Body body) {
  const std::size_t chunks = static_cast<std::size_t>((trials + kChunkTrials - 1) / kChunkTrials);
  std::vector<Acc> out(chunks);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::uint64_t first = c * kChunkTrials;
      const std::uint64_t count = std::min<std::uint64_t>(kChunkTrials, trials - first);
      out[c] = body(c, count);
    }
  };
  const unsigned workers = worker_count(threads, chunks);
  if (workers <= 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i)
    pool.emplace_back(worker);
  pool.clear();
  return out;
}

constexpr std::uint64_t kUserSalt = 0x632BE59BD9B4E019ull;

} // namespace

double realization_error(const SimConfig& cfg, int user, double z1, double z2) {
  const double k = cfg.frame.k;
  const double n_eff = effective_blocklength(cfg.scheme, user, cfg.frame);
  const double p1 = cfg.powers.p1.value();
  const double p2 = cfg.powers.p2.value();

  double snr = 0.0;
  if (cfg.scheme == Scheme::oma) {
    snr = (user == 1 ? p1 * z1 : p2 * z2);
  } else if (user == 1) {
    snr = p1 * z1;
  } else if (cfg.channel == Channel::awgn || cfg.sinr_model == SinrModel::full_noise) {
    snr = p2 * z2 / (1.0 + p1 * z1);
  } else {
    const double interference = p1 * z1;
    if (interference == 0.0)
      return 0.0;
    snr = p2 * z2 / interference;
  }

  if (cfg.channel == Channel::awgn)
    return awgn_error_prob(k, n_eff, SnrLinear(snr), cfg.half_log_correction).eps.value();
  if (!std::isfinite(snr))
    return 0.0;
  return conditional_error(k, n_eff, snr, cfg.unit);
}

UserPair<Estimate> simulate_outage(const SimConfig& cfg) {
  cfg.validate();
  struct Acc {
    RunningStats u1, u2;
  };
  const bool fading = cfg.channel == Channel::rayleigh;
  const bool bernoulli = cfg.estimator == Estimator::bernoulli;
  const auto parts = run_chunks<Acc>(cfg.trials, cfg.threads, [&](std::size_t c, std::uint64_t count) {
    Xoshiro256StarStar rng(substream_key(cfg.seed, c));
    Acc acc;
    for (std::uint64_t t = 0; t < count; ++t) {
      const double z1 = fading ? rng.exponential() : 1.0;
      const double z2 = fading ? rng.exponential() : 1.0;
      double e1 = realization_error(cfg, 1, z1, z2);
      double e2 = realization_error(cfg, 2, z1, z2);
      if (bernoulli) {
        e1 = rng.uniform() < e1 ? 1.0 : 0.0;
        e2 = rng.uniform() < e2 ? 1.0 : 0.0;
      }
      acc.u1.push(e1);
      acc.u2.push(e2);
    }
    return acc;
  });
  Acc total;
  for (const auto& p : parts) {
    total.u1.merge(p.u1);
    total.u2.merge(p.u2);
  }
  return {total.u1.estimate(), total.u2.estimate()};
}

UserPair<ArqEstimate> simulate_arq(const SimConfig& cfg) {
  cfg.validate();
  if (!cfg.policy)
    throw DomainError("simulate_arq requires an ARQ policy");
  const ArqPolicy policy = *cfg.policy;
  const bool fading = cfg.channel == Channel::rayleigh;
  const double n = cfg.frame.n;
  const double k = cfg.frame.k;

  struct Acc {
    RatioStats rate;
    RunningStats residual;
  };

  const auto run_user = [&](int user) {
    const std::uint64_t seed = cfg.seed + kUserSalt * static_cast<std::uint64_t>(user);
    const auto parts = run_chunks<Acc>(cfg.trials, cfg.threads, [&](std::size_t c, std::uint64_t count) {
      Xoshiro256StarStar rng(substream_key(seed, c));
      Acc acc;
      for (std::uint64_t e = 0; e < count; ++e) {
        double uses = 0.0;
        bool delivered = false;
        for (int round = 1; round <= policy.m_max; ++round) {
          const double z1 = fading ? rng.exponential() : 1.0;
          const double z2 = fading ? rng.exponential() : 1.0;
          const double p = realization_error(cfg, user, z1, z2);
          uses += n;
          if (round < policy.m_max)
            uses += policy.feedback_delay;
          if (!(rng.uniform() < p)) {
            delivered = true;
            break;
          }
        }
        acc.rate.push(delivered ? k : 0.0, uses);
        acc.residual.push(delivered ? 0.0 : 1.0);
      }
      return acc;
    });
    Acc total;
    for (const auto& p : parts) {
      total.rate.merge(p.rate);
      total.residual.merge(p.residual);
    }
    ArqEstimate out;
    out.throughput = total.rate.ratio();
    out.mean_channel_uses = total.rate.cost.estimate();
    out.residual_outage = total.residual.estimate();
    return out;
  };
  return {run_user(1), run_user(2)};
}

} // namespace nomafbl
