#include "numerics.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

namespace nomafbl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Acklam's rational approximation of the lower-tail normal quantile,
// |relative error| < 1.15e-9 before refinement.
double acklam_quantile(double p) {
  static constexpr std::array<double, 6> a{
      -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{
      -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{
      -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{
      7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

// Solves Q(x) = p for p in (0, 0.5].
double q_inv_upper_tail(double p) {
  double x = -acklam_quantile(p);
  for (int iter = 0; iter < 100; ++iter) {
    const double phi = normal_pdf(x);
    if (phi <= 0.0)
      break;
    const double u = (q_func(x) - p) / phi;
    const double step = u / (1.0 - 0.5 * x * u);
    x += step;
    if (std::abs(step) < 1e-14)
      break;
  }
  return x;
}

} // namespace

SnrLinear::SnrLinear(double value) : value_(value) {
  if (!(value >= 0.0) || std::isinf(value))
    throw DomainError("SNR must be finite and non-negative");
}

SnrLinear SnrLinear::from_db(double db) { return SnrLinear(db_to_linear(db)); }

double SnrLinear::db() const { return linear_to_db(value_); }

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "probability out of range [0,1]: " << value;
    throw DomainError(os.str());
  }
}

Probability Probability::clamped(double value) {
  if (std::isnan(value))
    throw NumericalError("probability is NaN");
  if (value < -kProbabilityClampTolerance || value > 1.0 + kProbabilityClampTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "internal consistency: probability " << value
       << " exceeds the clamp tolerance";
    throw NumericalError(os.str());
  }
  return Probability(std::clamp(value, 0.0, 1.0));
}

RatePerChannelUse RatePerChannelUse::to(RateUnit target) const {
  if (target == unit)
    return *this;
  constexpr double ln2 = std::numbers::ln2;
  return {target == RateUnit::nats ? value * ln2 : value / ln2, target};
}

double db_to_linear(double db) {
  if (!std::isfinite(db))
    throw DomainError("dB value must be finite");
  return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
  if (!(linear > 0.0))
    throw DomainError("linear value must be positive for a dB view");
  return 10.0 * std::log10(linear);
}

double q_func(double x) {
  if (!std::isfinite(x))
    throw DomainError("q_func: argument must be finite");
  return 0.5 * std::erfc(x * kInvSqrt2);
}

double q_inv(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("q_inv: probability must lie strictly inside (0,1)");
  if (p == 0.5)
    return 0.0;
  if (p < 0.5)
    return q_inv_upper_tail(p);
  // 1-p is exact for p >= 0.5.
  return -q_inv_upper_tail(1.0 - p);
}

double capacity(SnrLinear rho, RateUnit unit) {
  const double r = rho.value();
  if (unit == RateUnit::nats)
    return std::log1p(r);
  return r < 0.5 ? std::log1p(r) * kLog2E : std::log2(1.0 + r);
}

double dispersion(SnrLinear rho, RateUnit unit) {
  const double r = rho.value();
  // 1 - (1+r)^-2. Below r = 1 the factored r(2+r)/(1+r)^2 avoids
  // cancellation; above it the subtraction is exact enough, cannot overflow
  // and stays monotone up to the limit.
  const double one_plus = 1.0 + r;
  const double bracket = r < 1.0 ? r * (2.0 + r) / (one_plus * one_plus)
                                 : 1.0 - 1.0 / (one_plus * one_plus);
  return unit == RateUnit::nats ? bracket : bracket * kLog2ESquared;
}

ErrorProbability awgn_error_prob(double k, double n, SnrLinear rho,
                                 bool half_log_correction) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw DomainError("awgn_error_prob: k must be positive");
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError("awgn_error_prob: n must be positive");

  ErrorProbability out;
  if (n < 100.0)
    out.flags |= Flag::short_blocklength;
  if (rho.value() == 0.0) {
    out.flags |= Flag::zero_power;
    out.eps = Probability(1.0);
    return out;
  }

  double numerator = n * capacity(rho) - k;
  if (half_log_correction)
    numerator += 0.5 * std::log2(n);
  const double denominator = std::sqrt(n * dispersion(rho));
  out.eps = Probability::clamped(q_func(numerator / denominator));
  return out;
}

AchievableRate achievable_rate(double n, Probability eps, SnrLinear rho,
                               RateUnit unit) {
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError("achievable_rate: n must be positive");
  const double p = eps.value();
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("achievable_rate: eps must lie strictly inside (0,1)");

  AchievableRate out;
  out.rate.unit = unit;
  if (n < 100.0)
    out.flags |= Flag::short_blocklength;
  const double r = capacity(rho, unit) - std::sqrt(dispersion(rho, unit) / n) * q_inv(p);
  if (r < 0.0) {
    out.flags |= Flag::rate_clamped;
    out.rate.value = 0.0;
  } else {
    out.rate.value = r;
  }
  return out;
}

} // namespace nomafbl
