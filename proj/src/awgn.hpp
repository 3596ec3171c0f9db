#pragma once

// Two-user uplink over the AWGN channel: per-user normal-approximation rates,
// outage and throughput for orthogonal (OMA) and SIC-based non-orthogonal
// (NOMA) access. User 1 has priority and is decoded last under NOMA.

#include "numerics.hpp"

#include <utility>

namespace nomafbl {

enum class Scheme { oma, noma };

/// Payload k bits, frame of n channel uses, user 1's OMA share beta.
struct FrameConfig {
  double k = 500.0;
  double n = 500.0;
  double beta = 0.8;

  void validate() const;
};

struct LinkPowers {
  SnrLinear p1{10.0};
  SnrLinear p2{10.0};

  static LinkPowers from_db(double p1_db, double p2_db) {
    return {SnrLinear::from_db(p1_db), SnrLinear::from_db(p2_db)};
  }
};

template <class T>
struct UserPair {
  T user1;
  T user2;
};

/// Channel uses available to a user: beta*n / (1-beta)*n under OMA, n under
/// NOMA.
double effective_blocklength(Scheme scheme, int user, const FrameConfig& cfg);

UserPair<AchievableRate> oma_rates(const FrameConfig& cfg, const LinkPowers& powers,
                                   Probability eps);

UserPair<ErrorProbability> oma_outage(const FrameConfig& cfg, const LinkPowers& powers,
                                      bool half_log_correction = false);

/// SINRs after SIC: user 1 interference-free, user 2 sees user 1 as noise.
UserPair<SnrLinear> noma_sinrs(const LinkPowers& powers);

UserPair<ErrorProbability> noma_outage(const FrameConfig& cfg, const LinkPowers& powers,
                                       bool half_log_correction = false);

/// (k/n)(1 - eps); both OMA users divide by the full frame n.
double throughput(double k, double n, Probability eps);

} // namespace nomafbl
