// Acceptance gates. Each criterion prints exactly one line
//   criterion <N>: PASS|FAIL (<seconds> s) <detail>
// and the process exits non-zero when the selected criterion fails.
#include "arq.hpp"
#include "awgn.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "fading.hpp"
#include "figures.hpp"
#include "golden_values.hpp"
#include "montecarlo.hpp"
#include "numerics.hpp"
#include "sweep.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nomafbl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Context {
  std::string cli;
  fs::path work;
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void note(std::string& detail, const std::string& part) {
  detail += (detail.empty() ? "" : "; ") + part;
}

double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Regression pins, frozen from the first verified run.
constexpr double kPinnedLinearizationGap = 0.000678649111458;  // criterion 2, max |linearized - exact|
constexpr double kPinnedNomaUser2ClosedFormGap = 5.55112e-16; // criterion 3, max |closed form - quadrature|
constexpr double kPinnedFullNoiseGap = 0.29897146682;         // criterion 3, max |full noise - interference limited|
constexpr double kPinTolerance = 1e-9;

bool pinned(double measured, double pin) { return std::abs(measured - pin) <= kPinTolerance; }

// 1. Closed form of the surrogate under Exp(1) equals its quadrature.
Outcome criterion1(const Context&) {
  Outcome o;
  std::mt19937_64 g(101);
  int done = 0;
  double worst = 0.0;
  while (done < 1000) {
    const double n = std::floor(uniform(g, 100.0, 2000.0));
    const double k = std::floor(uniform(g, 0.05, 3.0) * n);
    const double rho = db_to_linear(uniform(g, -5.0, 40.0));
    const QLinearization lin = linearize(k, n, SnrLinear(rho));
    if (!(lin.sigma >= 0.0))
      continue;
    ++done;
    worst = std::max(worst, std::abs(oma_fading_outage_closed_form(lin) -
                                     surrogate_exponential_quadrature(lin)));
  }
  o.passed = worst <= 1e-12;
  note(o.detail, "1000 instances with sigma>=0, max |closed form - quadrature| = " + fmt(worst, 3) +
                     " (limit 1e-12)");
  return o;
}

// 2. Linearized vs exact quadrature vs Monte Carlo for user 1 under fading.
Outcome criterion2(const Context&) {
  Outcome o;
  struct Point {
    Scheme scheme;
    double k, p_db, exact;
  };
  const double n = 500.0;
  const double beta = 0.8;
  std::vector<Point> candidates;
  for (Scheme s : {Scheme::noma, Scheme::oma})
    for (double k : {250.0, 500.0, 1000.0})
      for (double p_db = 4.0; p_db <= 30.0; p_db += 1.0) {
        const double n_eff = s == Scheme::oma ? beta * n : n;
        const double e = exact_fading_outage(k, n_eff, SnrLinear::from_db(p_db)).value();
        if (e >= 0.01 && e <= 0.5)
          candidates.push_back({s, k, p_db, e});
      }
  if (candidates.size() < 50)
    return {false, "only " + std::to_string(candidates.size()) + " grid points in range"};
  std::vector<Point> grid;
  for (int i = 0; i < 50; ++i)
    grid.push_back(candidates[i * (candidates.size() - 1) / 49]);

  double max_gap = 0.0, max_z = 0.0;
  int mc_fail = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point& p = grid[i];
    const double n_eff = p.scheme == Scheme::oma ? beta * n : n;
    const double lin = oma_fading_outage(linearize(p.k, n_eff, SnrLinear::from_db(p.p_db))).eps.value();
    max_gap = std::max(max_gap, std::abs(lin - p.exact));
    SimConfig cfg;
    cfg.trials = 1'000'000;
    cfg.seed = 1000 + i;
    cfg.scheme = p.scheme;
    cfg.channel = Channel::rayleigh;
    cfg.frame = {p.k, n, beta};
    cfg.powers = LinkPowers::from_db(p.p_db, p.p_db);
    const Estimate mc = simulate_outage(cfg).user1;
    const double z = std::abs(mc.mean - p.exact) / mc.std_error;
    max_z = std::max(max_z, z);
    if (z > 3.0)
      ++mc_fail;
  }
  const bool gap_ok = max_gap <= 0.03;
  const bool pin_ok = pinned(max_gap, kPinnedLinearizationGap);
  o.passed = mc_fail == 0 && gap_ok && pin_ok;
  note(o.detail, "50 points, quadrature vs MC max |z| = " + fmt(max_z, 3) + " (" +
                     std::to_string(mc_fail) + " beyond 3 SE)");
  note(o.detail, "max |linearized - quadrature| = " + fmt(max_gap, 12) + " (limit 0.03, pinned " +
                     fmt(kPinnedLinearizationGap, 12) + (pin_ok ? "" : ", PIN MISMATCH") + ")");
  return o;
}

// 3. NOMA user 2: closed form vs surrogate quadrature, and the size of the
// interference-limited approximation against full-noise Monte Carlo.
Outcome criterion3(const Context&) {
  Outcome o;
  std::mt19937_64 g(303);
  double max_cf_gap = 0.0, max_approx_gap = 0.0, max_excess = 0.0;
  int authority_fail = 0, mc_fail = 0, fallback = 0;
  for (int i = 0; i < 100; ++i) {
    const double n = std::floor(uniform(g, 100.0, 2000.0));
    const double k = std::floor(uniform(g, 0.1, 1.5) * n);
    const double p1_db = uniform(g, 0.0, 30.0);
    const double p2_db = uniform(g, 0.0, 30.0);
    const LinkPowers powers = LinkPowers::from_db(p1_db, p2_db);
    const QLinearization lin = linearize_noma_user2(k, n);
    const double quad = surrogate_sinr_quadrature(lin, powers);
    const FadingOutage used = noma_user2_outage(lin, powers);
    if (lin.sigma >= 0.0) {
      const double closed = noma_user2_outage_closed_form(lin, powers);
      const double gap = std::abs(closed - quad);
      max_cf_gap = std::max(max_cf_gap, gap);
      const double expected = gap > kClosedFormTolerance ? quad : closed;
      if (std::abs(used.eps.value() - std::clamp(expected, 0.0, 1.0)) > 1e-15 ||
          used.flags.has(Flag::closed_form_mismatch) != (gap > kClosedFormTolerance))
        ++authority_fail;
    } else {
      ++fallback;
      if (std::abs(used.eps.value() - quad) > 1e-15)
        ++authority_fail;
    }

    const double il = noma_user2_exact_outage(k, n, powers, RateUnit::nats,
                                              SinrModel::interference_limited).value();
    const double fn = noma_user2_exact_outage(k, n, powers, RateUnit::nats,
                                              SinrModel::full_noise).value();
    const double approx_gap = std::abs(fn - il);
    max_approx_gap = std::max(max_approx_gap, approx_gap);
    SimConfig cfg;
    cfg.trials = 200'000;
    cfg.seed = 3000 + i;
    cfg.scheme = Scheme::noma;
    cfg.channel = Channel::rayleigh;
    cfg.frame = {k, n, 0.8};
    cfg.powers = powers;
    cfg.sinr_model = SinrModel::full_noise;
    const Estimate mc = simulate_outage(cfg).user2;
    const double excess = std::abs(mc.mean - il) - approx_gap - 3.0 * mc.std_error;
    max_excess = std::max(max_excess, excess);
    if (excess > 0.0)
      ++mc_fail;
  }
  const bool pins_ok = pinned(max_cf_gap, kPinnedNomaUser2ClosedFormGap) &&
                       pinned(max_approx_gap, kPinnedFullNoiseGap);
  o.passed = authority_fail == 0 && mc_fail == 0 && pins_ok;
  note(o.detail, "100 points (" + std::to_string(fallback) +
                     " with sigma<0), max |closed form - quadrature| = " + fmt(max_cf_gap, 6) +
                     ", authoritative-value errors " + std::to_string(authority_fail));
  note(o.detail, "max |full noise - interference limited| = " + fmt(max_approx_gap, 12) +
                     ", full-noise MC outside gap+3SE at " + std::to_string(mc_fail) + " points");
  if (!pins_ok)
    note(o.detail, "PIN MISMATCH (pinned " + fmt(kPinnedNomaUser2ClosedFormGap, 6) + ", " +
                       fmt(kPinnedFullNoiseGap, 12) + ")");
  return o;
}

// 4. AWGN anchors at the canonical point.
Outcome criterion4(const Context&) {
  Outcome o;
  OperatingPoint p;
  const auto noma = evaluate_point(p, Scheme::noma, Evaluator::closed_form);
  const auto oma = evaluate_point(p, Scheme::oma, Evaluator::closed_form);
  const double e1 = noma[0].epsilon, e2 = noma[1].epsilon, o2 = oma[1].epsilon;
  const bool a = e1 < 1e-100;
  const bool b = std::abs(e2 - 0.924) <= 0.01;
  const bool oracle = std::abs(e2 - golden::kAwgnNomaUser2) <= 1e-12;
  const bool c = o2 > 0.999;
  o.passed = a && b && c && oracle;
  note(o.detail, std::string("NOMA user 1 eps = ") + fmt(e1, 4) + (a ? " ok" : " FAIL"));
  note(o.detail, "NOMA user 2 eps = " + fmt(e2, 8) + " vs 0.924 +- 0.01" + (b ? " ok" : " FAIL") +
                     ", vs scalar oracle " + fmt(golden::kAwgnNomaUser2, 8) +
                     (oracle ? " ok" : " FAIL"));
  note(o.detail, "OMA user 2 eps = " + fmt(o2, 8) + (c ? " ok" : " FAIL"));
  return o;
}

// Records of one curve keyed by axis value.
using CurveMap = std::map<std::tuple<int, int, double, int>, std::map<double, ResultRecord>>;

CurveMap by_curve(const SweepSpec& spec, const std::vector<ResultRecord>& records) {
  CurveMap out;
  for (const auto& r : records) {
    const double beta = r.scheme == Scheme::oma ? r.beta : 0.0;
    out[{static_cast<int>(r.scheme), r.user, beta, r.m_max}][axis_value(r, spec.axis, spec.power_mode)] = r;
  }
  return out;
}

struct PinnedOptimum {
  const char* figure;
  const char* curve;
  double grid_x;
};

// Grid argmax of every curve of figs 2-6 (label as produced by curve_label).
const std::vector<PinnedOptimum> kPinnedOptima = {
    {"fig2", "NOMA User 1", 1650},
    {"fig2", "NOMA User 2", 425},
    {"fig2", "OMA User 1", 1325},
    {"fig2", "OMA User 2", 325},
    {"fig3", "NOMA User 1", 150},
    {"fig3", "NOMA User 2", 600},
    {"fig3", "OMA User 1", 200},
    {"fig3", "OMA User 2", 775},
    {"fig4", "NOMA User 1", 3},
    {"fig4", "NOMA User 2", 13.5},
    {"fig4", "OMA (beta=80%) User 1", 4.5},
    {"fig4", "OMA (beta=80%) User 2", 19},
    {"fig4", "OMA (beta=50%) User 1", 8},
    {"fig4", "OMA (beta=50%) User 2", 8},
    {"fig5", "NOMA User 1", 875},
    {"fig5", "NOMA User 2", 500},
    {"fig5", "OMA User 1", 700},
    {"fig5", "OMA User 2", 175},
    {"fig6", "NOMA User 1", 275},
    {"fig6", "NOMA User 2", 500},
    {"fig6", "OMA User 1", 350},
    {"fig6", "OMA User 2", 1425},
};

struct PinnedRefined {
  const char* figure;
  Scheme scheme;
  int user;
  double x;
};

// Refined (step-halving) argmax of the k and n figures.
const std::vector<PinnedRefined> kPinnedRefined = {
    {"fig2", Scheme::noma, 1, 1651},
    {"fig2", Scheme::noma, 2, 414},
    {"fig2", Scheme::oma, 1, 1314},
    {"fig2", Scheme::oma, 2, 316},
    {"fig3", Scheme::noma, 1, 156},
    {"fig3", Scheme::noma, 2, 600},
    {"fig3", Scheme::oma, 1, 195},
    {"fig3", Scheme::oma, 2, 780},
    {"fig5", Scheme::noma, 1, 873},
    {"fig5", Scheme::noma, 2, 500},
    {"fig5", Scheme::oma, 1, 698},
    {"fig5", Scheme::oma, 2, 175},
    {"fig6", Scheme::noma, 1, 286},
    {"fig6", Scheme::noma, 2, 499},
    {"fig6", Scheme::oma, 1, 358},
    {"fig6", Scheme::oma, 2, 1432},
};

// 5. Figure shapes for figs 2-6.
Outcome criterion5(const Context&) {
  Outcome o;
  int violations = 0, compared = 0;
  std::string worst;
  double worst_diff = 0.0;
  double saturation = 0.0;
  int pin_fail = 0, pins_seen = 0;
  std::string found;
  std::map<std::string, int> by_case;
  for (const char* id : {"fig2", "fig3", "fig4", "fig5", "fig6"}) {
    const FigureDef fig = canonical_figure(id);
    const auto records = run_sweep(fig.spec);
    const auto curves = by_curve(fig.spec, records);
    for (const auto& [key, pts] : curves) {
      const auto [scheme, user, beta, m] = key;
      if (scheme != static_cast<int>(Scheme::oma))
        continue;
      const auto noma = curves.find({static_cast<int>(Scheme::noma), user, 0.0, m});
      if (noma == curves.end())
        continue;
      for (const auto& [x, r] : pts) {
        const auto it = noma->second.find(x);
        if (it == noma->second.end())
          continue;
        ++compared;
        const double diff = r.throughput - it->second.throughput;
        if (diff > 0.0) {
          ++violations;
          ++by_case[std::string(id) + " user " + std::to_string(user) + " beta=" + fmt(beta)];
          if (diff > worst_diff) {
            worst_diff = diff;
            worst = std::string(id) + " user " + std::to_string(user) + " beta=" + fmt(beta) +
                    " x=" + fmt(x);
          }
        }
      }
    }
    if (fig.id == "fig4") {
      for (const auto& [key, pts] : curves) {
        const double last = pts.rbegin()->first;
        const auto ref = pts.lower_bound(last - kSaturationWindowDb - 1e-9);
        saturation = std::max(saturation, pts.rbegin()->second.throughput - ref->second.throughput);
      }
    }
    for (const auto& [curve, opt] : grid_optima(fig, records)) {
      const std::string label = std::string(id) + "/" + curve.label;
      note(found, label + "@" + fmt(opt.x));
      for (const auto& pin : kPinnedOptima)
        if (label == std::string(pin.figure) + "/" + pin.curve) {
          ++pins_seen;
          if (opt.x != pin.grid_x)
            ++pin_fail;
        }
    }
    if (fig.spec.axis == Axis::k || fig.spec.axis == Axis::n) {
      for (Scheme s : {Scheme::noma, Scheme::oma})
        for (int user = 1; user <= 2; ++user) {
          const ArgmaxResult r = argmax_throughput(fig.spec, {s, user, 0.8, 1, Evaluator::closed_form});
          note(found, std::string(id) + "/refined " + std::string(to_string(s)) + " user " +
                          std::to_string(user) + "@" + fmt(r.x));
          for (const auto& pin : kPinnedRefined)
            if (pin.figure == fig.id && pin.scheme == s && pin.user == user) {
              ++pins_seen;
              if (r.x != pin.x)
                ++pin_fail;
            }
        }
    }
  }
  const std::size_t expected_pins = kPinnedOptima.size() + kPinnedRefined.size();
  const bool pins_ok = pin_fail == 0 && pins_seen == static_cast<int>(expected_pins) && expected_pins > 0;
  const bool order_ok = violations == 0;
  const bool sat_ok = saturation < 1e-3;
  o.passed = order_ok && sat_ok && pins_ok;
  note(o.detail, "NOMA >= OMA: " + std::to_string(violations) + "/" + std::to_string(compared) +
                     " violations" + (order_ok ? "" : " (worst " + fmt(worst_diff, 4) + " at " + worst + ")"));
  for (const auto& [where, count] : by_case)
    note(o.detail, where + ": " + std::to_string(count));
  note(o.detail, "fig4 increment over last 5 dB = " + fmt(saturation, 4) + (sat_ok ? " ok" : " FAIL"));
  note(o.detail, "argmax pins " + std::to_string(pins_seen - pin_fail) + "/" +
                     std::to_string(expected_pins) + " matched");
  if (!pins_ok)
    note(o.detail, "found: " + found);
  return o;
}

// 6. ARQ gates.
Outcome criterion6(const Context&) {
  Outcome o;
  std::mt19937_64 g(606);
  double worst_pow = 0.0;
  int m1_mismatch = 0;
  for (int i = 0; i < 10000; ++i) {
    const double e = uniform(g, 0.0, 1.0);
    const int m = 1 + static_cast<int>(g() % 8);
    worst_pow = std::max(worst_pow, std::abs(cumulative_outage(Probability(e), m).value() - std::pow(e, m)));
    const double k = std::floor(uniform(g, 50.0, 2000.0));
    const double n = std::floor(uniform(g, 100.0, 2000.0));
    const ArqPolicy one{1, uniform(g, 0.0, 100.0), LatencyModel::paper_literal};
    if (arq_throughput(k, n, Probability(e), one) != throughput(k, n, Probability(e)))
      ++m1_mismatch;
  }
  const bool pow_ok = worst_pow <= 1e-15;
  note(o.detail, "max |eps_M - eps^M| = " + fmt(worst_pow, 3) + (pow_ok ? " ok" : " FAIL"));
  note(o.detail, "M=1 vs single-shot throughput mismatches: " + std::to_string(m1_mismatch));

  // Pointwise strict order across M. Where the per-round outage is exactly 0
  // or 1 in double precision no M can change anything, so those points only
  // need equality.
  const auto trend = [](const char* id, Metric metric) {
    const FigureDef fig = canonical_figure(id);
    const auto curves = by_curve(fig.spec, run_sweep(fig.spec));
    int bad = 0, total = 0;
    for (const auto& [key, pts] : curves) {
      const auto [scheme, user, beta, m] = key;
      if (m != 1)
        continue;
      const auto& c2 = curves.at({scheme, user, beta, 2});
      const auto& c3 = curves.at({scheme, user, beta, 3});
      for (const auto& [x, r1] : pts) {
        const double eps = r1.epsilon;
        const bool degenerate = eps == 0.0 || eps == 1.0;
        const ResultRecord& r2 = c2.at(x);
        const ResultRecord& r3 = c3.at(x);
        const double y1 = metric == Metric::throughput ? r1.throughput : r1.epsilon;
        const double y2 = metric == Metric::throughput ? r2.throughput : r2.epsilon;
        const double y3 = metric == Metric::throughput ? r3.throughput : r3.epsilon;
        ++total;
        const bool ok = metric == Metric::throughput
                            ? (degenerate ? (y3 == y2 && y2 == y1) : (y3 < y2 && y2 < y1))
                            : (degenerate ? y3 == y2 : y3 < y2);
        if (!ok)
          ++bad;
      }
    }
    return std::make_pair(bad, total);
  };
  const auto [t_bad, t_total] = trend("fig7", Metric::throughput);
  const auto [e_bad, e_total] = trend("fig8", Metric::epsilon);
  note(o.detail, "fig7 throughput M3<M2<M1: " + std::to_string(t_bad) + "/" +
                     std::to_string(t_total) + " violations");
  note(o.detail, "fig8 eps M3<M2: " + std::to_string(e_bad) + "/" + std::to_string(e_total) +
                     " violations");

  SimConfig cfg;
  cfg.trials = 1'000'000;
  cfg.seed = 66;
  cfg.scheme = Scheme::noma;
  cfg.channel = Channel::rayleigh;
  cfg.frame = {500.0, 500.0, 0.8};
  cfg.powers = LinkPowers::from_db(10.0, 10.0);
  cfg.policy = ArqPolicy{3, 50.0, LatencyModel::expected_rounds};
  const auto sim = simulate_arq(cfg);
  double max_z = 0.0;
  for (int user = 1; user <= 2; ++user) {
    const double eps = user == 1
                           ? exact_fading_outage(500.0, 500.0, SnrLinear::from_db(10.0)).value()
                           : noma_user2_exact_outage(500.0, 500.0, cfg.powers, RateUnit::nats,
                                                     SinrModel::interference_limited).value();
    const double expect = expected_channel_uses(Probability(eps), 500.0, *cfg.policy);
    const Estimate& e = user == 1 ? sim.user1.mean_channel_uses : sim.user2.mean_channel_uses;
    max_z = std::max(max_z, std::abs(e.mean - expect) / e.std_error);
  }
  const bool sim_ok = max_z <= 3.0;
  note(o.detail, "simulated channel uses vs expected-rounds formula max |z| = " + fmt(max_z, 3));
  o.passed = pow_ok && m1_mismatch == 0 && t_bad == 0 && e_bad == 0 && sim_ok;
  return o;
}

// 7. Scalar numerics and probability range across every figure sweep.
Outcome criterion7(const Context&) {
  Outcome o;
  double worst_x = 0.0, worst_p = 0.0;
  for (double x = -3.0; x <= 37.5; x += 0.01)
    worst_x = std::max(worst_x, std::abs(q_inv(q_func(x)) - x) / std::max(1.0, std::abs(x)));
  std::mt19937_64 g(707);
  double worst_rel = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double p = i % 2 ? uniform(g, 1e-9, 1.0 - 1e-9)
                           : std::exp(uniform(g, std::log(1e-300), std::log(0.5)));
    const double err = std::abs(q_func(q_inv(p)) - p);
    worst_p = std::max(worst_p, err);
    worst_rel = std::max(worst_rel, err / p);
  }
  const bool rt_ok = worst_x <= 1e-12 && worst_p <= 1e-12;
  note(o.detail, "q round trip: max |x err| = " + fmt(worst_x, 3) + " (x in [-3, 37.5]), max |p err| = " +
                     fmt(worst_p, 3) + " (relative " + fmt(worst_rel, 3) + ")");

  bool rejects_inf = false;
  try {
    q_func(std::numeric_limits<double>::infinity());
  } catch (const DomainError&) {
    rejects_inf = true;
  }
  const double tail = q_func(38.0);
  const bool limits_ok =
      q_func(0.0) == 0.5 && tail > 0.0 && tail < 1e-300 && q_func(-38.0) == 1.0 && rejects_inf &&
      q_inv(0.5) == 0.0 &&
      capacity(SnrLinear(0.0)) == 0.0 && dispersion(SnrLinear(0.0)) == 0.0 &&
      capacity(SnrLinear(1.0)) == 1.0 && capacity(SnrLinear(3.0)) == 2.0 &&
      dispersion(SnrLinear(1.0), RateUnit::nats) == 0.75 &&
      dispersion(SnrLinear(1e300), RateUnit::nats) == 1.0 &&
      dispersion(SnrLinear(1e300)) == kLog2ESquared;
  note(o.detail, std::string("limiting values ") + (limits_ok ? "exact" : "FAIL"));

  std::size_t records = 0, bad = 0;
  for (const auto& id : figure_ids()) {
    for (const auto& r : run_sweep(canonical_figure(id).spec)) {
      ++records;
      if (!(r.epsilon >= 0.0 && r.epsilon <= 1.0) || !(r.throughput >= 0.0) ||
          !(r.expected_channel_uses > 0.0))
        ++bad;
    }
  }
  note(o.detail, std::to_string(records) + " records over " + std::to_string(figure_ids().size()) +
                     " figure sweeps, " + std::to_string(bad) + " out of range");
  o.passed = rt_ok && limits_ok && bad == 0;
  return o;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 8. Every command, run twice and with different worker counts, writes
// byte-identical files.
Outcome criterion8(const Context& ctx) {
  Outcome o;
  if (ctx.cli.empty())
    return {false, "no --cli given"};
  struct Command {
    const char* name;
    std::string args;
  };
  const std::vector<Command> commands = {
      {"eval", "eval --channel rayleigh --scheme noma --evaluator closed_form "
               "--evaluator quadrature --evaluator montecarlo --trials 300000"},
      {"sweep", "sweep --set point.channel=rayleigh --set sweep.axis=n --set sweep.start=300 "
                "--set sweep.stop=700 --set sweep.step=100 --set sweep.evaluators=closed_form,montecarlo "
                "--trials 200000"},
      {"reproduce", "reproduce fig8"},
      {"validate", "validate --trials 100000"},
  };
  const fs::path root = ctx.work / "determinism";
  fs::remove_all(root);
  int failures = 0;
  for (const auto& cmd : commands) {
    std::vector<std::map<std::string, std::string>> runs;
    for (const char* run : {"a_j1", "b_j3", "c_j3"}) {
      const fs::path dir = root / cmd.name / run;
      fs::create_directories(dir);
      const std::string threads = run[3] == '1' ? "1" : "3";
      const std::string line = "\"" + ctx.cli + "\" " + cmd.args + " --seed 7 -j " + threads +
                               " -o \"" + dir.string() + "\" > \"" + (dir / "stdout.txt").string() +
                               "\" 2>&1";
      const int rc = std::system(line.c_str());
      if (rc != 0) {
        ++failures;
        note(o.detail, std::string(cmd.name) + " exited with " + std::to_string(rc));
      }
      std::map<std::string, std::string> files;
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename() != "stdout.txt")
          files[e.path().filename().string()] = read_file(e.path());
      runs.push_back(std::move(files));
    }
    const bool same = !runs[0].empty() && runs[0] == runs[1] && runs[1] == runs[2];
    if (!same)
      ++failures;
    note(o.detail, std::string(cmd.name) + ": " + std::to_string(runs[0].size()) + " file(s) " +
                       (same ? "identical" : "DIFFER"));
  }
  o.passed = failures == 0;
  return o;
}

struct Criterion {
  int id;
  double time_limit_s; // 0 = none
  std::function<Outcome(const Context&)> run;
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance gates"};
  int which = 0;
  Context ctx;
  std::string work = "acceptance_work";
  app.add_option("--criterion", which, "criterion to run (0 = all)")->check(CLI::Range(0, 8));
  app.add_option("--cli", ctx.cli, "path of the command-line tool");
  app.add_option("--work", work, "scratch directory");
  CLI11_PARSE(app, argc, argv);
  ctx.work = work;
  fs::create_directories(ctx.work);

  const std::vector<Criterion> criteria = {
      {1, 5.0, criterion1},   {2, 120.0, criterion2}, {3, 0.0, criterion3},
      {4, 1.0, criterion4},   {5, 30.0, criterion5},  {6, 120.0, criterion6},
      {7, 0.0, criterion7},   {8, 0.0, criterion8},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (which != 0 && which != c.id)
      continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(ctx);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      out.passed = false;
      note(out.detail, "runtime limit " + fmt(c.time_limit_s) + " s exceeded");
    }
    std::printf("criterion %d: %s (%.2f s) %s\n", c.id, out.passed ? "PASS" : "FAIL", secs,
                out.detail.c_str());
    std::fflush(stdout);
    all = all && out.passed;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
