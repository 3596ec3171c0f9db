#pragma once

// Grid evaluation over one axis of the operating point, and throughput argmax
// search with local step-halving refinement.

#include "evaluate.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace nomafbl {

enum class Axis { k, n, power_db, beta, m_max };

enum class Metric { epsilon, throughput, latency };

/// How a power_db axis value is applied.
enum class PowerMode {
  own,  ///< each user's own power follows the axis; the other stays at the fixed value
  both, ///< P1 = P2 = axis value
};

struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// start, start+step, ... up to stop (inclusive within 1e-9 of a step).
  std::vector<double> values() const;
  /// Range with `count` equally spaced points over [start, stop].
  static Range from_count(double start, double stop, int count);
  void validate() const;
};

struct SweepSpec {
  Axis axis = Axis::k;
  Range range{100.0, 2000.0, 25.0};
  OperatingPoint fixed;
  std::vector<Scheme> schemes{Scheme::noma, Scheme::oma};
  std::vector<double> oma_betas{0.8};   ///< one OMA curve pair per entry
  std::vector<int> m_values{1};         ///< one curve set per entry
  PowerMode power_mode = PowerMode::own;
  std::vector<Metric> metrics{Metric::epsilon, Metric::throughput, Metric::latency};
  std::vector<Evaluator> evaluators{Evaluator::closed_form};
  McSettings mc;
  unsigned threads = 0; ///< 0 = hardware concurrency

  void validate() const;
};

bool is_integer_axis(Axis axis);

/// Operating point of `user` at axis value x, before scheme-specific splits.
OperatingPoint point_at(const SweepSpec& spec, double x, int user);

/// Axis value carried by a record.
double axis_value(const ResultRecord& r, Axis axis, PowerMode mode);

/// Every axis point x every (scheme, beta) x m x evaluator x user, in that
/// nesting order with schemes, betas, m values and evaluators in spec order.
/// Points run in parallel; the output order does not depend on scheduling.
std::vector<ResultRecord> run_sweep(const SweepSpec& spec);

struct ArgmaxResult {
  double x = 0.0;
  double value = 0.0;
};

/// Maximizes metric over range: coarse scan of the grid, then halve the step
/// around the incumbent until it drops below 1 (integer axes) or below 1e-3
/// relative to the incumbent (real axes). nullopt marks infeasible points.
/// Ties go to the smallest x. Throws NoFeasiblePoint if nothing is feasible.
ArgmaxResult argmax_refine(const std::function<std::optional<double>(double)>& metric,
                           const Range& range, bool integer_axis);

struct CurveKey {
  Scheme scheme = Scheme::noma;
  int user = 1;
  double beta = 0.8; ///< OMA only
  int m_max = 1;
  Evaluator evaluator = Evaluator::closed_form;
};

/// Throughput-maximizing axis value for one curve of the sweep.
ArgmaxResult argmax_throughput(const SweepSpec& spec, const CurveKey& target);

std::string_view to_string(Axis a);
std::string_view to_string(Metric m);
std::string_view to_string(PowerMode m);
Axis parse_axis(std::string_view text);
Metric parse_metric(std::string_view text);
PowerMode parse_power_mode(std::string_view text);

} // namespace nomafbl
