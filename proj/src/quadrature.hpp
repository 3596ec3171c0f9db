#pragma once

#include <functional>
#include <span>
#include <string>

namespace nomafbl::quadrature {

/// Default absolute tolerance for every outage integral.
inline constexpr double kAbsTolerance = 1e-10;

/// Upper integration limit for unit-mean exponential weights: e^-z < 1e-16.
inline constexpr double kExponentialTailCut = 36.841361487904734; // 16 ln 10

/// Bisection budget shared by all panels of one integral.
inline constexpr int kMaxSubdivisions = 4000;

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Globally adaptive Gauss-Kronrod (15-point) integration of f over [a, b],
/// starting from panels split at the given interior breakpoints (points
/// outside (a, b) are ignored).
/// Throws NumericalError when the summed error estimate exceeds abs_tol;
/// the message names the label, interval and estimate.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints = {},
                 double abs_tol = kAbsTolerance, const std::string& label = "integral");

} // namespace nomafbl::quadrature
