#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace nomafbl {

std::vector<double> Range::values() const {
  validate();
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = start + static_cast<double>(i) * step;
  return out;
}

Range Range::from_count(double start, double stop, int count) {
  if (count < 1)
    throw ConfigError("range: point count must be >= 1");
  if (count == 1)
    return {start, start, 1.0};
  return {start, stop, (stop - start) / static_cast<double>(count - 1)};
}

void Range::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
    throw ConfigError("range: start, stop and step must be finite");
  if (stop < start)
    throw ConfigError("range: stop must not precede start");
  if (!(step > 0.0))
    throw ConfigError("range: step must be positive");
}

void SweepSpec::validate() const {
  range.validate();
  if (schemes.empty())
    throw ConfigError("sweep: at least one scheme is required");
  if (evaluators.empty())
    throw ConfigError("sweep: at least one evaluator is required");
  if (m_values.empty() && axis != Axis::m_max)
    throw ConfigError("sweep: at least one m value is required");
  for (int m : m_values)
    if (m < 1)
      throw ConfigError("sweep: m values must be >= 1");
  for (double b : oma_betas)
    if (!(b > 0.0 && b < 1.0))
      throw ConfigError("sweep: OMA beta values must lie strictly inside (0,1)");
  const bool has_oma = std::find(schemes.begin(), schemes.end(), Scheme::oma) != schemes.end();
  if (has_oma && oma_betas.empty() && axis != Axis::beta)
    throw ConfigError("sweep: OMA needs at least one beta value");
  if (axis == Axis::beta &&
      std::find(schemes.begin(), schemes.end(), Scheme::noma) != schemes.end())
    throw ConfigError("sweep: a beta axis applies to OMA only (NOMA ignores beta)");
  if (axis == Axis::m_max && range.start < 1.0)
    throw ConfigError("sweep: m_max axis must start at >= 1");
  if (is_integer_axis(axis) &&
      (range.start != std::floor(range.start) || range.step != std::floor(range.step)))
    throw ConfigError("sweep: integer axes need integer start and step");
}

bool is_integer_axis(Axis axis) {
  return axis == Axis::k || axis == Axis::n || axis == Axis::m_max;
}

OperatingPoint point_at(const SweepSpec& spec, double x, int user) {
  OperatingPoint p = spec.fixed;
  switch (spec.axis) {
  case Axis::k:
    p.frame.k = x;
    break;
  case Axis::n:
    p.frame.n = x;
    break;
  case Axis::beta:
    p.frame.beta = x;
    break;
  case Axis::m_max:
    p.policy.m_max = static_cast<int>(std::lround(x));
    break;
  case Axis::power_db:
    if (spec.power_mode == PowerMode::both || user == 1)
      p.p1_db = x;
    if (spec.power_mode == PowerMode::both || user == 2)
      p.p2_db = x;
    break;
  }
  return p;
}

double axis_value(const ResultRecord& r, Axis axis, PowerMode mode) {
  switch (axis) {
  case Axis::k:
    return r.k;
  case Axis::n:
    return r.n;
  case Axis::beta:
    return r.beta;
  case Axis::m_max:
    return r.m_max;
  case Axis::power_db:
    return (mode == PowerMode::own && r.user == 2) ? r.p2_db : r.p1_db;
  }
  return 0.0;
}

namespace {

struct Task {
  double x;
  Scheme scheme;
  double beta;
  int m;
  Evaluator evaluator;
};

std::vector<Task> build_tasks(const SweepSpec& spec) {
  std::vector<Task> tasks;
  const std::vector<int> ms = spec.axis == Axis::m_max ? std::vector<int>{0} : spec.m_values;
  const std::vector<double> betas =
      spec.axis == Axis::beta ? std::vector<double>{0.0} : spec.oma_betas;
  for (double x : spec.range.values())
    for (Scheme s : spec.schemes)
      for (double beta : s == Scheme::oma ? betas : std::vector<double>{0.0})
        for (int m : ms)
          for (Evaluator e : spec.evaluators)
            tasks.push_back({x, s, beta, m, e});
  return tasks;
}

OperatingPoint task_point(const SweepSpec& spec, const Task& t, int user) {
  OperatingPoint p = point_at(spec, t.x, user);
  if (t.scheme == Scheme::oma && spec.axis != Axis::beta)
    p.frame.beta = t.beta;
  if (spec.axis != Axis::m_max)
    p.policy.m_max = t.m;
  return p;
}

std::array<ResultRecord, 2> run_task(const SweepSpec& spec, const Task& t,
                                     const McSettings& mc) {
  const OperatingPoint p1 = task_point(spec, t, 1);
  auto records = evaluate_point(p1, t.scheme, t.evaluator, mc);
  if (spec.axis == Axis::power_db && spec.power_mode == PowerMode::own) {
    const OperatingPoint p2 = task_point(spec, t, 2);
    records[1] = evaluate_point(p2, t.scheme, t.evaluator, mc)[1];
  }
  return records;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++)
      fn(i);
  };
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < workers; ++i)
    pool.emplace_back(worker);
}

} // namespace

std::vector<ResultRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto tasks = build_tasks(spec);
  std::vector<std::array<ResultRecord, 2>> results(tasks.size());
  const unsigned workers = spec.threads ? spec.threads
                                        : std::max(1u, std::thread::hardware_concurrency());
  McSettings mc = spec.mc;
  // Monte Carlo results are thread-count invariant, so nested pools are
  // avoided by pinning the inner simulation to one worker.
  if (workers > 1)
    mc.threads = 1;
  parallel_for(tasks.size(), workers,
               [&](std::size_t i) { results[i] = run_task(spec, tasks[i], mc); });
  std::vector<ResultRecord> out;
  out.reserve(2 * results.size());
  for (const auto& pair : results) {
    out.push_back(pair[0]);
    out.push_back(pair[1]);
  }
  return out;
}

ArgmaxResult argmax_refine(const std::function<std::optional<double>(double)>& metric,
                           const Range& range, bool integer_axis) {
  std::optional<ArgmaxResult> best;
  for (double x : range.values()) {
    const auto v = metric(x);
    if (v && (!best || *v > best->value))
      best = ArgmaxResult{x, *v};
  }
  if (!best)
    throw NoFeasiblePoint("argmax: no feasible point in the sweep range");

  double h = range.stop > range.start ? range.step : 0.0;
  for (int iter = 0; iter < 200 && h > 0.0; ++iter) {
    h = integer_axis ? std::floor(h / 2.0) : h / 2.0;
    if (integer_axis && h < 1.0)
      break;
    const double scale = best->x != 0.0 ? std::abs(best->x) : range.stop - range.start;
    if (!integer_axis && h < 1e-3 * scale)
      break;
    ArgmaxResult next = *best;
    if (best->x - h >= range.start) {
      const auto v = metric(best->x - h);
      if (v && *v >= next.value)
        next = {best->x - h, *v};
    }
    if (best->x + h <= range.stop) {
      const auto v = metric(best->x + h);
      if (v && *v > next.value)
        next = {best->x + h, *v};
    }
    best = next;
  }
  return *best;
}

ArgmaxResult argmax_throughput(const SweepSpec& spec, const CurveKey& target) {
  spec.validate();
  const Task base{0.0, target.scheme, target.beta, target.m_max, target.evaluator};
  const auto metric = [&](double x) -> std::optional<double> {
    Task t = base;
    t.x = x;
    const auto rec = evaluate_point(task_point(spec, t, target.user), t.scheme, t.evaluator,
                                    spec.mc)[static_cast<std::size_t>(target.user - 1)];
    if (rec.flags.has(Flag::domain_error))
      return std::nullopt;
    return rec.throughput;
  };
  return argmax_refine(metric, spec.range, is_integer_axis(spec.axis));
}

namespace {

template <class E, std::size_t N>
E parse_table(std::string_view text, const std::pair<const char*, E> (&table)[N],
              const char* what) {
  std::string key(text);
  std::replace(key.begin(), key.end(), '-', '_');
  std::string accepted;
  for (const auto& [name, value] : table) {
    if (key == name)
      return value;
    accepted += accepted.empty() ? "" : ", ";
    accepted += name;
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(text) +
                    "' (expected one of: " + accepted + ")");
}

constexpr std::pair<const char*, Axis> kAxes[] = {{"k", Axis::k},
                                                  {"n", Axis::n},
                                                  {"power_db", Axis::power_db},
                                                  {"beta", Axis::beta},
                                                  {"m_max", Axis::m_max}};
constexpr std::pair<const char*, Metric> kMetrics[] = {{"epsilon", Metric::epsilon},
                                                       {"throughput", Metric::throughput},
                                                       {"latency", Metric::latency}};
constexpr std::pair<const char*, PowerMode> kPowerModes[] = {{"own", PowerMode::own},
                                                             {"both", PowerMode::both}};

template <class E, std::size_t N>
std::string_view name_of(E value, const std::pair<const char*, E> (&table)[N]) {
  for (const auto& [name, v] : table)
    if (v == value)
      return name;
  return "?";
}

} // namespace

std::string_view to_string(Axis a) { return name_of(a, kAxes); }
std::string_view to_string(Metric m) { return name_of(m, kMetrics); }
std::string_view to_string(PowerMode m) { return name_of(m, kPowerModes); }
Axis parse_axis(std::string_view text) { return parse_table(text, kAxes, "axis"); }
Metric parse_metric(std::string_view text) { return parse_table(text, kMetrics, "metric"); }
PowerMode parse_power_mode(std::string_view text) {
  return parse_table(text, kPowerModes, "power mode");
}

} // namespace nomafbl
