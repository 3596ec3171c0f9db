#include "fading.hpp"

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace nomafbl {

namespace {

constexpr double kSqrt2Pi = 2.50662827463100050242;
constexpr double kSqrtHalfPi = 1.25331413731550025121;

// Multiplier turning k/n into the exponent of e: 1 for nats, ln 2 for bits.
double exponent_scale(RateUnit unit) {
  return unit == RateUnit::nats ? 1.0 : std::numbers::ln2;
}

bool saturated(const QLinearization& lin) {
  return !std::isfinite(lin.theta) || !std::isfinite(lin.half_width()) ||
         !std::isfinite(lin.delta);
}

// Knee and pivot offsets used to steer adaptive subdivision around the
// transition of the conditional error.
std::vector<double> transition_points(const QLinearization& lin) {
  std::vector<double> pts;
  if (saturated(lin))
    return pts;
  const double h = lin.half_width();
  for (double m : {0.0, 1.0, 3.0, 8.0}) {
    pts.push_back(lin.theta - m * h);
    pts.push_back(lin.theta + m * h);
  }
  return pts;
}

// Integral over (0, inf) of g(s) * pdf(s) evaluated in t = ln s.
// Below s_lo the integrand is replaced by its value at s_lo times the mass.
template <class G>
double log_space_integral(G g, const LinkPowers& powers, SinrModel model, double s_lo,
                          double s_hi, const std::vector<double>& s_breaks,
                          const char* label) {
  const double mass_below = noma_user2_sinr_cdf(s_lo, powers, model) * g(s_lo);
  if (!(s_hi > s_lo))
    return mass_below;
  std::vector<double> t_breaks;
  for (double s : s_breaks)
    if (s > s_lo && s < s_hi)
      t_breaks.push_back(std::log(s));
  const auto integrand = [&](double t) {
    const double s = std::exp(t);
    return g(s) * noma_user2_sinr_pdf(s, powers, model) * s;
  };
  const auto r = quadrature::integrate(integrand, std::log(s_lo), std::log(s_hi), t_breaks,
                                       quadrature::kAbsTolerance, label);
  return mass_below + r.value;
}

void require_noma_powers(const LinkPowers& powers, SinrModel model) {
  if (model == SinrModel::interference_limited && !(powers.p1.value() > 0.0))
    throw DomainError("interference-limited SINR requires P1 > 0");
  if (!(powers.p2.value() > 0.0))
    throw DomainError("NOMA user 2 SINR density requires P2 > 0");
}

} // namespace

double QLinearization::slope() const { return b / kSqrt2Pi; }

QLinearization linearize(double k, double n_eff, SnrLinear rho, RateUnit unit) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw DomainError("linearize: k must be positive");
  if (!(n_eff > 0.0) || !std::isfinite(n_eff))
    throw DomainError("linearize: effective blocklength must be positive");
  if (!(rho.value() > 0.0))
    throw DomainError("linearize: SNR must be positive (pivot undefined at zero)");

  const double x = k * exponent_scale(unit) / n_eff;
  QLinearization lin;
  lin.theta = std::expm1(x) / rho.value();
  lin.b = rho.value() * std::sqrt(n_eff / std::expm1(2.0 * x));
  const double h = kSqrtHalfPi / lin.b;
  lin.sigma = lin.theta - h;
  lin.delta = lin.theta + h;
  return lin;
}

QLinearization linearize_noma_user2(double k, double n, RateUnit unit) {
  return linearize(k, n, SnrLinear(1.0), unit);
}

Probability surrogate_w(const QLinearization& lin, double z) {
  if (z <= lin.sigma)
    return Probability(1.0);
  if (z >= lin.delta)
    return Probability(0.0);
  return Probability::clamped(0.5 - lin.slope() * (z - lin.theta));
}

double conditional_error(double k, double n, double snr, RateUnit unit) {
  if (!(snr > 0.0))
    return 1.0;
  const SnrLinear s(snr);
  const double denominator = std::sqrt(n * dispersion(s, unit));
  if (!(denominator > 0.0))
    return 1.0;
  return q_func((n * capacity(s, unit) - k) / denominator);
}

double oma_fading_outage_closed_form(const QLinearization& lin) {
  // e^-theta (e^h - e^-h) rewritten as e^-sigma (1 - e^-2h): no overflow of
  // sinh(h) for wide knees and no cancellation for narrow ones.
  const double h = lin.half_width();
  return 1.0 - lin.slope() * std::exp(-lin.sigma) * -std::expm1(-2.0 * h);
}

double surrogate_exponential_quadrature(const QLinearization& lin) {
  if (saturated(lin))
    return 1.0;
  const double upper = std::min(lin.delta, quadrature::kExponentialTailCut);
  if (!(upper > 0.0))
    return 0.0;
  const double breaks[] = {lin.sigma};
  const auto f = [&](double z) { return surrogate_w(lin, z).value() * std::exp(-z); };
  return quadrature::integrate(f, 0.0, upper, breaks, 1e-14, "surrogate_exponential")
      .value;
}

FadingOutage oma_fading_outage(const QLinearization& lin) {
  FadingOutage out;
  if (saturated(lin)) {
    out.eps = Probability(1.0);
    return out;
  }
  if (lin.sigma >= 0.0) {
    out.eps = Probability::clamped(oma_fading_outage_closed_form(lin));
    return out;
  }
  out.flags |= Flag::quadrature_fallback;
  out.eps = Probability::clamped(surrogate_exponential_quadrature(lin));
  return out;
}

Probability exact_fading_outage(double k, double n_eff, SnrLinear rho, RateUnit unit) {
  const QLinearization lin = linearize(k, n_eff, rho, unit);
  const double s_hi =
      std::expm1((k * exponent_scale(unit) + 40.0 * std::sqrt(n_eff)) / n_eff);
  double upper = quadrature::kExponentialTailCut;
  if (std::isfinite(s_hi))
    upper = std::min(upper, s_hi / rho.value());

  const auto f = [&](double z) {
    return conditional_error(k, n_eff, rho.value() * z, unit) * std::exp(-z);
  };
  const auto r = quadrature::integrate(f, 0.0, upper, transition_points(lin),
                                       quadrature::kAbsTolerance, "exact_fading_outage");
  return Probability::clamped(r.value);
}

double noma_user2_sinr_pdf(double z, const LinkPowers& powers, SinrModel model) {
  require_noma_powers(powers, model);
  if (z < 0.0)
    return 0.0;
  const double p1 = powers.p1.value();
  const double p2 = powers.p2.value();
  const double u = z * p1 + p2;
  if (model == SinrModel::interference_limited)
    return p1 * p2 / (u * u);
  return std::exp(-z / p2) * (1.0 / u + p1 * p2 / (u * u));
}

double noma_user2_sinr_cdf(double z, const LinkPowers& powers, SinrModel model) {
  require_noma_powers(powers, model);
  if (z <= 0.0)
    return 0.0;
  const double p1 = powers.p1.value();
  const double p2 = powers.p2.value();
  const double u = z * p1 + p2;
  if (model == SinrModel::interference_limited)
    return z * p1 / u;
  return 1.0 - std::exp(-z / p2) * p2 / u;
}

double noma_user2_outage_closed_form(const QLinearization& lin, const LinkPowers& powers) {
  require_noma_powers(powers, SinrModel::interference_limited);
  const double p1 = powers.p1.value();
  const double p2 = powers.p2.value();
  const double c = lin.slope();
  const double s = lin.sigma;
  const double d = lin.delta;
  const double t = lin.theta;
  const double ud = p2 + p1 * d;
  const double us = p2 + p1 * s;
  const double denom = 2.0 * ud * us;

  const double term1 = (2.0 * c * p2 * p2 * (d - s) + 2.0 * p1 * p1 * d * s) / denom;
  const double term2 = c * p2 * std::log1p(-p1 * (d - s) / ud) / p1;
  const double term3 = p1 * p2 * (d + 2.0 * c * t * d + s - 2.0 * c * t * s) / denom;
  return term1 + term2 + term3;
}

double noma_user2_outage_inner_grouping(const QLinearization& lin,
                                          const LinkPowers& powers) {
  require_noma_powers(powers, SinrModel::interference_limited);
  const double p1 = powers.p1.value();
  const double p2 = powers.p2.value();
  const double c = lin.slope();
  const double s = lin.sigma;
  const double d = lin.delta;
  const double t = lin.theta;
  const double ud = p2 + p1 * d;
  const double us = p2 + p1 * s;
  const double denom = 2.0 * ud * us;

  const double term1 = 2.0 * c * p2 * p2 * (d - s + 2.0 * p1 * p1 * d * s) / denom;
  const double term2 = c * p2 * std::log1p(-p1 * (d - s) / ud) / p1;
  const double term3 = p1 * p2 * (d + 2.0 * c * t * d + s - 2.0 * c * t * s) / denom;
  return term1 + term2 + term3;
}

double surrogate_sinr_quadrature(const QLinearization& lin, const LinkPowers& powers) {
  if (saturated(lin))
    return 1.0;
  const double s_lo = (lin.sigma > 0.0 ? lin.sigma : lin.delta) * 1e-9;
  const auto w = [&](double s) { return surrogate_w(lin, s).value(); };
  return log_space_integral(w, powers, SinrModel::interference_limited, s_lo, lin.delta,
                            {lin.sigma, lin.theta}, "surrogate_sinr");
}

FadingOutage noma_user2_outage(const QLinearization& lin, const LinkPowers& powers) {
  require_noma_powers(powers, SinrModel::interference_limited);
  FadingOutage out;
  if (saturated(lin)) {
    out.eps = Probability(1.0);
    return out;
  }
  const double reference = surrogate_sinr_quadrature(lin, powers);
  if (lin.sigma < 0.0) {
    out.flags |= Flag::quadrature_fallback;
    out.eps = Probability::clamped(reference);
    return out;
  }
  const double closed = noma_user2_outage_closed_form(lin, powers);
  out.closed_form_gap = std::abs(closed - reference);
  if (!(out.closed_form_gap <= kClosedFormTolerance)) {
    out.flags |= Flag::closed_form_mismatch;
    out.eps = Probability::clamped(reference);
    return out;
  }
  out.eps = Probability::clamped(closed);
  return out;
}

Probability noma_user2_exact_outage(double k, double n, const LinkPowers& powers,
                                    RateUnit unit, SinrModel model) {
  require_noma_powers(powers, model);
  const QLinearization lin = linearize_noma_user2(k, n, unit);
  const double s_hi = std::expm1((k * exponent_scale(unit) + 40.0 * std::sqrt(n)) / n);
  if (!std::isfinite(lin.theta) || !std::isfinite(s_hi))
    return Probability(1.0);
  const double s_lo = lin.theta * 1e-9;

  std::vector<double> breaks = transition_points(lin);
  if (model == SinrModel::full_noise)
    breaks.push_back(powers.p2.value() * quadrature::kExponentialTailCut);
  const auto g = [&](double s) { return conditional_error(k, n, s, unit); };
  return Probability::clamped(
      log_space_integral(g, powers, model, s_lo, s_hi, breaks, "noma_user2_exact_outage"));
}

} // namespace nomafbl
