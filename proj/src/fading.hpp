#pragma once

// Quasi-static Rayleigh fading outage.
//
// The conditional error Q(f(z)) of a packet seen through squared envelope z is
// replaced by a piecewise-linear surrogate W(z) around the pivot theta, which
// makes the expectation over the fading law integrable in closed form. Exact
// expectations by adaptive quadrature serve as the reference for every
// closed form.
//
// Rates in this module default to nats: the pivot is (e^{k/n} - 1)/rho, so k
// is used as a natural-log exponent. RateUnit::bits swaps e for 2 throughout.

#include "awgn.hpp"
#include "numerics.hpp"

namespace nomafbl {

struct QLinearization {
  double theta = 0.0; ///< pivot, where the conditional error equals 1/2
  double b = 0.0;     ///< slope scale of Q(f(z)) at the pivot
  double sigma = 0.0; ///< lower knee, W(sigma) = 1
  double delta = 0.0; ///< upper knee, W(delta) = 0

  double half_width() const { return delta - theta; }
  /// b / sqrt(2 pi), the magnitude of the surrogate's slope.
  double slope() const;
};

/// Linearization of the conditional error for k over n_eff uses at SNR rho.
QLinearization linearize(double k, double n_eff, SnrLinear rho,
                         RateUnit unit = RateUnit::nats);

/// NOMA user 2 is linearized directly in its SINR variable (unit scale),
/// since the SINR distribution already carries both transmit powers.
QLinearization linearize_noma_user2(double k, double n, RateUnit unit = RateUnit::nats);

/// W(z): 1 below sigma, linear between the knees, 0 above delta.
Probability surrogate_w(const QLinearization& lin, double z);

/// Conditional error Q((n C(s) - k) / sqrt(n V(s))) at instantaneous SNR s.
double conditional_error(double k, double n, double snr, RateUnit unit = RateUnit::nats);

struct FadingOutage {
  Probability eps{1.0};
  Flags flags;
  /// |closed form - surrogate quadrature|, when both were computed.
  double closed_form_gap = 0.0;
};

/// Raw closed form 1 - (b/sqrt(2 pi)) e^-theta (e^h - e^-h), h = delta - theta.
/// Exact for the surrogate only when sigma >= 0.
double oma_fading_outage_closed_form(const QLinearization& lin);

/// Quadrature of W(z) e^-z over [0, inf).
double surrogate_exponential_quadrature(const QLinearization& lin);

/// Surrogate outage under a unit-mean exponential gain. Uses the closed form
/// when sigma >= 0 and quadrature over [0, delta] otherwise
/// (Flag::quadrature_fallback).
FadingOutage oma_fading_outage(const QLinearization& lin);

/// E_Z[conditional_error(k, n_eff, rho Z)] with Z ~ Exp(1), by adaptive
/// quadrature to 1e-10.
Probability exact_fading_outage(double k, double n_eff, SnrLinear rho,
                                RateUnit unit = RateUnit::nats);

enum class SinrModel {
  interference_limited, ///< P2|h2|^2 / (P1|h1|^2)
  full_noise,           ///< P2|h2|^2 / (1 + P1|h1|^2)
};

/// Density of NOMA user 2's SINR. Interference-limited:
/// P1 P2 / (z P1 + P2)^2 (requires P1 > 0).
double noma_user2_sinr_pdf(double z, const LinkPowers& powers,
                           SinrModel model = SinrModel::interference_limited);
double noma_user2_sinr_cdf(double z, const LinkPowers& powers,
                           SinrModel model = SinrModel::interference_limited);

/// Closed form of the surrogate integrated against the interference-limited
/// SINR density, with the P1^2 delta sigma product grouped outside the slope
/// factor (the grouping that equals the exact surrogate integral).
double noma_user2_outage_closed_form(const QLinearization& lin, const LinkPowers& powers);

/// Same expression with the product grouped inside the first numerator.
/// Kept only for comparison.
double noma_user2_outage_inner_grouping(const QLinearization& lin,
                                          const LinkPowers& powers);

/// Quadrature of W(z) f(z) with the interference-limited density.
double surrogate_sinr_quadrature(const QLinearization& lin, const LinkPowers& powers);

/// Surrogate outage of NOMA user 2. The closed form is cross-checked against
/// quadrature; a gap above 1e-6 makes the quadrature value authoritative
/// (Flag::closed_form_mismatch). sigma < 0 always uses quadrature.
FadingOutage noma_user2_outage(const QLinearization& lin, const LinkPowers& powers);

inline constexpr double kClosedFormTolerance = 1e-6;

/// E[conditional_error(k, n, S)] over NOMA user 2's SINR S, by quadrature.
Probability noma_user2_exact_outage(double k, double n, const LinkPowers& powers,
                                    RateUnit unit = RateUnit::nats,
                                    SinrModel model = SinrModel::interference_limited);

} // namespace nomafbl
