#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

namespace nomafbl {

namespace {

constexpr double kOrderingSlack = 1e-12;

SweepSpec base_spec(Channel channel, Axis axis, Range range) {
  SweepSpec s;
  s.axis = axis;
  s.range = range;
  s.fixed.channel = channel;
  s.fixed.frame = FrameConfig{500.0, 500.0, 0.8};
  s.fixed.p1_db = 10.0;
  s.fixed.p2_db = 10.0;
  s.fixed.policy = ArqPolicy{1, 0.0, LatencyModel::paper_literal};
  return s;
}

const Range kRangeK{100.0, 2000.0, 25.0};
const Range kRangeN{100.0, 2000.0, 25.0};
const Range kRangePower{0.0, 30.0, 0.5};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

using CurveId = std::tuple<int, int, double, int, int>;

CurveId curve_id(const CurveKey& k) {
  return {static_cast<int>(k.scheme), k.user, k.scheme == Scheme::oma ? k.beta : 0.0, k.m_max,
          static_cast<int>(k.evaluator)};
}

double metric_of(const ResultRecord& r, Metric m) {
  switch (m) {
  case Metric::epsilon:
    return r.epsilon;
  case Metric::throughput:
    return r.throughput;
  case Metric::latency:
    return r.expected_channel_uses;
  }
  return 0.0;
}

// All curves of the sweep for one metric, regardless of plotted_m.
std::map<CurveId, Curve> all_curves(const FigureDef& fig, const std::vector<ResultRecord>& recs,
                                    Metric metric) {
  std::map<CurveId, Curve> curves;
  for (const auto& r : recs) {
    CurveKey key{r.scheme, r.user, r.scheme == Scheme::oma ? r.beta : 0.0, r.m_max, r.evaluator};
    auto [it, inserted] = curves.try_emplace(curve_id(key));
    if (inserted) {
      it->second.key = key;
      it->second.label = curve_label(key, fig);
    }
    it->second.points.push_back(
        {axis_value(r, fig.spec.axis, fig.spec.power_mode), metric_of(r, metric), r.flags});
  }
  for (auto& [id, c] : curves)
    std::stable_sort(c.points.begin(), c.points.end(),
                     [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
  return curves;
}

const Curve* find_curve(const std::map<CurveId, Curve>& curves, const CurveKey& key) {
  const auto it = curves.find(curve_id(key));
  return it == curves.end() ? nullptr : &it->second;
}

// Pointwise comparison of two curves sharing an x grid; pred(a, b) must hold.
template <class Pred>
void compare_curves(const Curve& a, const Curve& b, Pred pred, int& violations,
                    double& worst, double& worst_x, int& compared) {
  const std::size_t n = std::min(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.points[i].flags.has(Flag::domain_error) || b.points[i].flags.has(Flag::domain_error))
      continue;
    ++compared;
    const double gap = pred(a.points[i].y, b.points[i].y, i);
    if (gap > 0.0) {
      ++violations;
      if (gap > worst) {
        worst = gap;
        worst_x = a.points[i].x;
      }
    }
  }
}

CheckResult ordering_check(const std::map<CurveId, Curve>& curves, double beta, int m, Evaluator ev) {
  CheckResult c;
  c.name = "noma_ge_oma(beta=" + fmt(beta) + (m > 1 ? ",M=" + std::to_string(m) : "") + ")";
  c.gating = beta == kGatingBeta;
  std::string detail;
  for (int user = 1; user <= 2; ++user) {
    const Curve* noma = find_curve(curves, {Scheme::noma, user, 0.0, m, ev});
    const Curve* oma = find_curve(curves, {Scheme::oma, user, beta, m, ev});
    if (!noma || !oma)
      continue;
    int violations = 0, compared = 0;
    double worst = 0.0, worst_x = 0.0;
    compare_curves(*noma, *oma,
                   [](double y_noma, double y_oma, std::size_t) {
                     return y_oma - y_noma > kOrderingSlack ? y_oma - y_noma : 0.0;
                   },
                   violations, worst, worst_x, compared);
    if (violations > 0)
      c.passed = false;
    detail += (detail.empty() ? "" : "; ") + std::string("user ") + std::to_string(user) + ": " +
              std::to_string(violations) + "/" + std::to_string(compared) + " violations";
    if (violations > 0)
      detail += " (worst OMA-NOMA " + fmt(worst) + " at x=" + fmt(worst_x) + ")";
  }
  c.detail = detail;
  return c;
}

CheckResult saturation_check(const std::map<CurveId, Curve>& curves, bool gating) {
  CheckResult c;
  c.name = "saturation";
  c.gating = gating;
  double worst_increment = 0.0;
  std::string worst_curve;
  int drops = 0;
  for (const auto& [id, curve] : curves) {
    const auto& pts = curve.points;
    if (pts.size() < 2)
      continue;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i].y < pts[i - 1].y - kOrderingSlack)
        ++drops;
    const double x_ref = pts.back().x - kSaturationWindowDb;
    const auto ref = std::find_if(pts.begin(), pts.end(),
                                  [&](const CurvePoint& p) { return p.x >= x_ref - 1e-9; });
    const double inc = pts.back().y - ref->y;
    if (inc >= worst_increment) {
      worst_increment = inc;
      worst_curve = curve.label;
    }
  }
  c.passed = drops == 0 && worst_increment < kSaturationTolerance;
  c.detail = "decreasing steps: " + std::to_string(drops) + "; max increment over last " +
             fmt(kSaturationWindowDb) + " dB: " + fmt(worst_increment) + " (" + worst_curve +
             ")";
  return c;
}

// Pointwise strict decrease of metric across consecutive m values of each
// (scheme, user) pair; equality is accepted only where the per-round
// outage is 0 or 1 and the metric cannot move.
CheckResult m_trend_check(const std::string& name, const FigureDef& fig,
                          const std::vector<ResultRecord>& recs, Metric metric,
                          const std::vector<int>& ms, bool increasing) {
  CheckResult c;
  c.name = name;
  const auto curves = all_curves(fig, recs, metric);
  const auto per_round = all_curves(fig, recs, Metric::epsilon);
  int violations = 0, compared = 0;
  std::string first;
  for (const auto& [id, curve] : curves) {
    const CurveKey& key = curve.key;
    if (key.m_max != ms.front())
      continue;
    const Curve* eps1 = find_curve(per_round, {key.scheme, key.user, key.beta, 1, key.evaluator});
    for (std::size_t j = 1; j < ms.size(); ++j) {
      const Curve* lo = find_curve(curves, {key.scheme, key.user, key.beta, ms[j - 1], key.evaluator});
      const Curve* hi = find_curve(curves, {key.scheme, key.user, key.beta, ms[j], key.evaluator});
      if (!lo || !hi)
        continue;
      for (std::size_t i = 0; i < std::min(lo->points.size(), hi->points.size()); ++i) {
        ++compared;
        const double a = lo->points[i].y;
        const double b = hi->points[i].y;
        const double e = eps1 && i < eps1->points.size() ? eps1->points[i].y : 0.5;
        const bool degenerate = e <= 0.0 || e >= 1.0 || (metric == Metric::epsilon && a == 0.0);
        const bool ok = increasing ? (degenerate ? b >= a : b > a) : (degenerate ? b <= a : b < a);
        if (!ok) {
          ++violations;
          if (first.empty())
            first = curve.label + " at x=" + fmt(lo->points[i].x) + " (M=" +
                    std::to_string(ms[j - 1]) + ": " + fmt(a) + ", M=" + std::to_string(ms[j]) +
                    ": " + fmt(b) + ")";
        }
      }
    }
  }
  c.passed = violations == 0;
  c.detail = std::to_string(violations) + "/" + std::to_string(compared) + " violations" +
             (first.empty() ? "" : "; first: " + first);
  return c;
}

} // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2", "fig3", "fig4",         "fig5",   "fig6",
                                            "fig7", "fig8", "fading_power", "latency"};
  return ids;
}

FigureDef canonical_figure(std::string_view id) {
  FigureDef f;
  f.id = std::string(id);
  if (id == "fig2") {
    f.title = "AWGN throughput vs information bits k (n=500, P1=P2=10 dB)";
    f.spec = base_spec(Channel::awgn, Axis::k, kRangeK);
  } else if (id == "fig3") {
    f.title = "AWGN throughput vs blocklength n (k=500, P1=P2=10 dB)";
    f.spec = base_spec(Channel::awgn, Axis::n, kRangeN);
  } else if (id == "fig4") {
    f.title = "AWGN throughput vs transmit power (k=n=500, R=1)";
    f.spec = base_spec(Channel::awgn, Axis::power_db, kRangePower);
    f.spec.oma_betas = {0.8, 0.5};
  } else if (id == "fig5") {
    f.title = "Rayleigh throughput vs information bits k (n=500, P1=P2=10 dB)";
    f.spec = base_spec(Channel::rayleigh, Axis::k, kRangeK);
  } else if (id == "fig6") {
    f.title = "Rayleigh throughput vs blocklength n (k=500, P1=P2=10 dB)";
    f.spec = base_spec(Channel::rayleigh, Axis::n, kRangeN);
  } else if (id == "fig7" || id == "fig8" || id == "latency") {
    f.spec = base_spec(Channel::rayleigh, Axis::n, kRangeN);
    f.spec.m_values = {1, 2, 3};
    f.plotted_m = {2, 3};
    if (id == "fig7") {
      f.title = "Type-I ARQ throughput vs blocklength n (k=500, P1=P2=10 dB, D=0)";
    } else if (id == "fig8") {
      f.title = "Type-I ARQ outage vs blocklength n (k=500, P1=P2=10 dB)";
      f.y_metric = Metric::epsilon;
    } else {
      f.title = "Type-I ARQ latency vs blocklength n (k=500, P1=P2=10 dB, D=0)";
      f.y_metric = Metric::latency;
    }
  } else if (id == "fading_power") {
    f.title = "Rayleigh throughput vs transmit power (k=n=500, R=1)";
    f.spec = base_spec(Channel::rayleigh, Axis::power_db, kRangePower);
    f.spec.oma_betas = {0.8, 0.5};
  } else {
    std::string known;
    for (const auto& s : figure_ids())
      known += (known.empty() ? "" : ", ") + s;
    throw ConfigError("unknown figure '" + std::string(id) + "' (expected one of: " + known + ")");
  }
  return f;
}

std::string curve_label(const CurveKey& key, const FigureDef& fig) {
  std::string label = key.scheme == Scheme::noma ? "NOMA" : "OMA";
  if (key.scheme == Scheme::oma && fig.spec.oma_betas.size() > 1)
    label += " (beta=" + fmt(key.beta * 100.0) + "%)";
  label += " User " + std::to_string(key.user);
  if (fig.spec.m_values.size() > 1 && fig.spec.axis != Axis::m_max)
    label += ", M=" + std::to_string(key.m_max);
  if (fig.spec.evaluators.size() > 1)
    label += " [" + std::string(to_string(key.evaluator)) + "]";
  return label;
}

std::vector<Curve> figure_curves(const FigureDef& fig, const std::vector<ResultRecord>& records) {
  const auto& spec = fig.spec;
  for (const auto& r : records) {
    const double x = axis_value(r, spec.axis, spec.power_mode);
    const bool m_ok = spec.axis == Axis::m_max ||
                      std::find(spec.m_values.begin(), spec.m_values.end(), r.m_max) !=
                          spec.m_values.end();
    const bool beta_ok = r.scheme == Scheme::noma || spec.axis == Axis::beta ||
                         std::find(spec.oma_betas.begin(), spec.oma_betas.end(), r.beta) !=
                             spec.oma_betas.end();
    const bool x_ok = x >= spec.range.start - 1e-9 && x <= spec.range.stop + 1e-9;
    const OperatingPoint expected = point_at(spec, x, r.user);
    const bool fixed_ok = r.k == expected.frame.k && r.n == expected.frame.n &&
                          r.p1_db == expected.p1_db && r.p2_db == expected.p2_db;
    if (!m_ok || !beta_ok || !x_ok || !fixed_ok)
      throw ConfigError("record does not belong to figure " + fig.id + " (x=" + fmt(x) +
                        ", M=" + std::to_string(r.m_max) + ")");
  }
  std::vector<Curve> out;
  for (auto& [id, c] : all_curves(fig, records, fig.y_metric)) {
    if (!fig.plotted_m.empty() &&
        std::find(fig.plotted_m.begin(), fig.plotted_m.end(), c.key.m_max) == fig.plotted_m.end())
      continue;
    out.push_back(std::move(c));
  }
  // NOMA before OMA, then user, then beta descending, then m.
  std::stable_sort(out.begin(), out.end(), [](const Curve& a, const Curve& b) {
    const auto rank = [](const CurveKey& k) {
      return std::make_tuple(k.scheme == Scheme::oma, -k.beta, k.user, k.m_max,
                             static_cast<int>(k.evaluator));
    };
    return rank(a.key) < rank(b.key);
  });
  return out;
}

std::vector<std::pair<Curve, ArgmaxResult>> grid_optima(const FigureDef& fig,
                                                        const std::vector<ResultRecord>& records) {
  std::vector<std::pair<Curve, ArgmaxResult>> out;
  FigureDef tput = fig;
  tput.y_metric = Metric::throughput;
  for (auto& c : figure_curves(tput, records)) {
    std::optional<ArgmaxResult> best;
    for (const auto& p : c.points) {
      if (p.flags.has(Flag::domain_error))
        continue;
      if (!best || p.y > best->value)
        best = ArgmaxResult{p.x, p.y};
    }
    if (best)
      out.emplace_back(std::move(c), *best);
  }
  return out;
}

std::vector<CheckResult> figure_checks(const FigureDef& fig,
                                       const std::vector<ResultRecord>& records) {
  std::vector<CheckResult> checks;
  const auto& spec = fig.spec;
  const auto tput = all_curves(fig, records, Metric::throughput);
  const bool has_both = std::find(spec.schemes.begin(), spec.schemes.end(), Scheme::oma) !=
                            spec.schemes.end() &&
                        std::find(spec.schemes.begin(), spec.schemes.end(), Scheme::noma) !=
                            spec.schemes.end();

  if (has_both && fig.id != "fig8" && fig.id != "latency") {
    const std::vector<int> ms = fig.plotted_m.empty() ? spec.m_values : fig.plotted_m;
    for (double beta : spec.oma_betas)
      for (int m : ms)
        for (Evaluator ev : spec.evaluators)
          checks.push_back(ordering_check(tput, beta, m, ev));
  }

  if (spec.axis == Axis::power_db)
    checks.push_back(saturation_check(tput, fig.id == "fig4"));

  if ((spec.axis == Axis::k || spec.axis == Axis::n) && fig.plotted_m.empty()) {
    const auto optima = grid_optima(fig, records);
    CheckResult differ;
    differ.name = "optima_differ";
    bool all_equal = !optima.empty();
    std::string detail;
    for (const auto& [curve, opt] : optima) {
      all_equal = all_equal && opt.x == optima.front().second.x;
      detail += (detail.empty() ? "" : "; ") + curve.label + " @ " + fmt(opt.x);
    }
    differ.passed = !all_equal;
    differ.detail = detail;
    checks.push_back(differ);

    if (fig.id == "fig2") {
      CheckResult c;
      c.name = "noma_user1_optimum_exceeds_oma";
      const Curve* noma = nullptr;
      const Curve* oma = nullptr;
      double x_noma = 0.0, x_oma = 0.0;
      for (const auto& [curve, opt] : optima) {
        if (curve.key.user != 1 || curve.key.evaluator != spec.evaluators.front())
          continue;
        if (curve.key.scheme == Scheme::noma) {
          noma = &curve;
          x_noma = opt.x;
        } else if (curve.key.beta == kGatingBeta) {
          oma = &curve;
          x_oma = opt.x;
        }
      }
      c.passed = noma && oma && x_noma > x_oma;
      c.detail = "NOMA k*=" + fmt(x_noma) + ", OMA k*=" + fmt(x_oma);
      checks.push_back(c);
    }
  }

  if (fig.id == "fig7")
    checks.push_back(m_trend_check("throughput_decreases_with_M", fig, records,
                                   Metric::throughput, spec.m_values, false));
  if (fig.id == "fig8")
    checks.push_back(
        m_trend_check("outage_decreases_with_M", fig, records, Metric::epsilon, {2, 3}, false));
  if (fig.id == "latency")
    checks.push_back(
        m_trend_check("latency_increases_with_M", fig, records, Metric::latency, {2, 3}, true));
  return checks;
}

} // namespace nomafbl
