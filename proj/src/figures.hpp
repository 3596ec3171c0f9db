#pragma once

// Canonical sweep specifications for the reproduced figures, their curve
// layout, and the qualitative shape checks run against them.

#include "sweep.hpp"

#include <string>
#include <vector>

namespace nomafbl {

struct FigureDef {
  std::string id;
  std::string title;
  SweepSpec spec;
  Metric y_metric = Metric::throughput;
  std::vector<int> plotted_m; ///< m values drawn as curves; empty = all
};

/// fig2 .. fig8, then the extra fading_power and latency figures.
const std::vector<std::string>& figure_ids();

/// Throws ConfigError for unknown ids.
FigureDef canonical_figure(std::string_view id);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  Flags flags;
};

struct Curve {
  std::string label;
  CurveKey key;
  std::vector<CurvePoint> points; ///< ascending x
};

/// Groups records into the figure's curves (scheme, user, OMA beta, m,
/// evaluator). Throws ConfigError when the records do not belong to the
/// figure's sweep.
std::vector<Curve> figure_curves(const FigureDef& fig, const std::vector<ResultRecord>& records);

std::string curve_label(const CurveKey& key, const FigureDef& fig);

struct CheckResult {
  std::string name;
  bool passed = true;
  bool gating = true; ///< informational checks never fail a run
  std::string detail;
};

/// Ordering (NOMA >= OMA per user, OMA beta = 0.8 gating, others
/// informational), saturation (power figures), optimum layout (k and n
/// figures), ARQ trade-offs (fig7, fig8, latency).
std::vector<CheckResult> figure_checks(const FigureDef& fig,
                                       const std::vector<ResultRecord>& records);

/// Grid argmax of the throughput of every curve with m in plotted_m.
std::vector<std::pair<Curve, ArgmaxResult>> grid_optima(const FigureDef& fig,
                                                        const std::vector<ResultRecord>& records);

inline constexpr double kSaturationTolerance = 1e-3;
inline constexpr double kSaturationWindowDb = 5.0;
inline constexpr double kGatingBeta = 0.8;

} // namespace nomafbl
