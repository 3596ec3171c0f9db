#pragma once

// Oracle comparison: closed forms vs exact quadrature vs Monte Carlo at the
// configured operating point.

#include "config.hpp"

#include <string>
#include <vector>

namespace nomafbl {

inline constexpr double kValidationZLimit = 4.0;

struct ValidationRow {
  std::string case_name;
  std::string quantity;
  double closed_form = 0.0;
  double quadrature = 0.0; ///< reference the Monte Carlo estimate is scored against
  Estimate mc;
  double z = 0.0;          ///< (mc - reference) / std_error; +inf for a mismatch at zero variance
  bool gated = true;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double max_abs_z = 0.0;
  bool passed = true;

  std::string render() const;
};

/// Rows, for both schemes and users at cfg.point:
///  - AWGN outage: closed form vs the degenerate (z = 1) simulation;
///  - Rayleigh outage: linearized closed form, exact quadrature under
///    cfg.point.sinr_model, smooth Monte Carlo under the same model;
///  - NOMA user 2: interference-limited vs full-noise quadrature gap
///    (informational);
///  - type-I ARQ with max(M, 2) rounds under the expected-rounds model:
///    simulated channel uses and residual outage vs the formulas fed with
///    the quadrature outage.
ValidationReport run_validation(const RunConfig& cfg);

} // namespace nomafbl
