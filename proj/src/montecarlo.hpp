#pragma once

// Stochastic reference for the closed forms: samples Rayleigh gains (or the
// fixed AWGN gain) and type-I ARQ episodes. Per-realization decoding error is
// the normal-approximation conditional error; no actual codes are simulated.
//
// Trials are cut into chunks of kChunkTrials. Chunk c of user u draws from
// its own xoshiro256** stream, and chunk statistics are merged in chunk
// order, so results are bit-identical for any worker count.

#include "arq.hpp"
#include "awgn.hpp"
#include "fading.hpp"

#include <cstdint>
#include <optional>

namespace nomafbl {

enum class Channel { awgn, rayleigh };

enum class Estimator {
  smooth,    ///< average the conditional error itself
  bernoulli, ///< draw a decoding failure with the conditional error
};

struct SimConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::noma;
  Channel channel = Channel::rayleigh;
  FrameConfig frame;
  LinkPowers powers;
  std::optional<ArqPolicy> policy;
  SinrModel sinr_model = SinrModel::interference_limited;
  RateUnit unit = RateUnit::nats; ///< fading only; AWGN works in bits
  bool half_log_correction = false;
  Estimator estimator = Estimator::smooth;
  unsigned threads = 0; ///< 0 = hardware concurrency

  void validate() const;
};

inline constexpr std::uint64_t kChunkTrials = 1u << 16;

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

/// Running mean / second moment with Chan's pairwise merge.
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x);
  void merge(const RunningStats& other);
  Estimate estimate() const;
};

/// Decoding error probability of `user` for one channel realization with
/// squared envelopes z1, z2 (both 1 on AWGN).
double realization_error(const SimConfig& cfg, int user, double z1, double z2);

UserPair<Estimate> simulate_outage(const SimConfig& cfg);

struct ArqEstimate {
  Estimate throughput;        ///< mean delivered bits / mean channel uses
  Estimate mean_channel_uses; ///< air time plus feedback waits per episode
  Estimate residual_outage;   ///< fraction of episodes failing all rounds
};

/// Episodes stop at the first successful round or after policy.m_max rounds.
/// Each round costs n (the full frame) and each round before the last allowed
/// one costs a feedback wait of D.
UserPair<ArqEstimate> simulate_arq(const SimConfig& cfg);

} // namespace nomafbl
