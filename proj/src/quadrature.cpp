#include "quadrature.hpp"

#include "errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <sstream>
#include <vector>

namespace nomafbl::quadrature {

Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, double abs_tol,
                 const std::string& label) {
  if (!(b >= a))
    throw NumericalError(label + ": empty or reversed integration interval");

  std::vector<double> edges{a};
  for (double p : breakpoints)
    if (p > a && p < b)
      edges.push_back(p);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // Global adaptive Gauss-Kronrod (QAG-style): always bisect the panel with
  // the largest error estimate until the summed estimate meets abs_tol.
  // Panels whose estimate is already at the rounding floor are not split,
  // and their estimates do not count against abs_tol since no refinement
  // can reduce them.
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  const auto eval = [&](double lo, double hi) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = GK::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
    return std::pair<Panel, bool>{Panel{lo, hi, v, err}, err <= floor};
  };

  std::priority_queue<Panel> open;
  Result total;
  double rounding = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] <= edges[i])
      continue;
    auto [panel, settled] = eval(edges[i], edges[i + 1]);
    if (settled) {
      total.value += panel.value;
      total.error_estimate += panel.error;
      rounding += panel.error;
    } else {
      open.push(panel);
    }
  }
  const auto open_error = [&] {
    double e = total.error_estimate;
    auto copy = open;
    while (!copy.empty()) {
      e += copy.top().error;
      copy.pop();
    }
    return e;
  };

  double running = open_error();
  for (int split = 0; split < kMaxSubdivisions && !open.empty() && running - rounding > abs_tol; ++split) {
    const Panel worst = open.top();
    open.pop();
    running -= worst.error;
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      total.value += worst.value;
      total.error_estimate += worst.error;
      running += worst.error;
      continue;
    }
    for (const auto& [lo, hi] : {std::pair{worst.lo, mid}, std::pair{mid, worst.hi}}) {
      auto [panel, settled] = eval(lo, hi);
      running += panel.error;
      if (settled) {
        total.value += panel.value;
        total.error_estimate += panel.error;
        rounding += panel.error;
      } else {
        open.push(panel);
      }
    }
  }
  while (!open.empty()) {
    total.value += open.top().value;
    total.error_estimate += open.top().error;
    open.pop();
  }
  if (!std::isfinite(total.value) || total.error_estimate - rounding > abs_tol) {
    std::ostringstream os;
    os.precision(17);
    os << label << ": quadrature did not converge on [" << a << ", " << b
       << "], error estimate " << total.error_estimate << " > " << abs_tol;
    throw NumericalError(os.str());
  }
  return total;
}

} // namespace nomafbl::quadrature
