#pragma once

// Scalar special functions and finite-blocklength primitives.
//
// All rates inside this header are per channel use. The AWGN expressions work
// in bits unless a RateUnit says otherwise; the fading module works in nats.

#include "errors.hpp"
#include "flags.hpp"

#include <cmath>
#include <numbers>

namespace nomafbl {

enum class RateUnit { bits, nats };

inline constexpr double kLog2E = std::numbers::log2e;
inline constexpr double kLog2ESquared = std::numbers::log2e * std::numbers::log2e;

/// Linear signal-to-noise ratio over unit-variance noise.
class SnrLinear {
public:
  explicit SnrLinear(double value);
  static SnrLinear from_db(double db);

  double value() const { return value_; }
  double db() const;

private:
  double value_;
};

/// Probability in [0,1]; construction outside the range throws DomainError.
class Probability {
public:
  explicit Probability(double value);
  /// Accepts values within 1e-12 of [0,1] and clamps them; anything further
  /// out is an internal-consistency failure (NumericalError).
  static Probability clamped(double value);

  double value() const { return value_; }
  double complement() const { return 1.0 - value_; }
  friend bool operator==(Probability, Probability) = default;

private:
  double value_;
};

inline constexpr double kProbabilityClampTolerance = 1e-12;

struct RatePerChannelUse {
  double value = 0.0;
  RateUnit unit = RateUnit::bits;

  RatePerChannelUse to(RateUnit target) const;
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Upper-tail standard normal probability Q(x) = P(N(0,1) > x).
double q_func(double x);

/// Inverse of q_func on (0,1). Rational initial guess polished with Halley
/// steps on q_func itself.
double q_inv(double p);

double capacity(SnrLinear rho, RateUnit unit = RateUnit::bits);

/// (1 - (1+rho)^-2), times log2(e)^2 in bits^2.
double dispersion(SnrLinear rho, RateUnit unit = RateUnit::bits);

struct ErrorProbability {
  Probability eps{1.0};
  Flags flags;
};

/// Normal-approximation packet error probability of k information bits over
/// n channel uses:
///   Q((n C(rho) [+ 0.5 log2 n] - k) / sqrt(n V(rho)))
/// k and n are real-valued so that effective blocklengths such as beta*n and
/// consistency probes with non-integer k are representable. n < 100 only sets
/// Flag::short_blocklength.
ErrorProbability awgn_error_prob(double k, double n, SnrLinear rho,
                                 bool half_log_correction = false);

struct AchievableRate {
  RatePerChannelUse rate;
  Flags flags;
};

/// C(rho) - sqrt(V(rho)/n) Q^-1(eps), clamped at zero (Flag::rate_clamped).
AchievableRate achievable_rate(double n, Probability eps, SnrLinear rho,
                               RateUnit unit = RateUnit::bits);

} // namespace nomafbl
