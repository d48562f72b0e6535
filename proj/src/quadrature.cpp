#include "specshare/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <numbers>
#include <sstream>
#include <vector>

#include "specshare/errors.hpp"

namespace specshare::quadrature {

namespace {

struct StoredRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_n from the Chebyshev-like initial guesses.
StoredRule compute_rule(int n) {
  StoredRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double apply(const Rule& rule, const std::function<double(double)>& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

struct Panel {
  double a;
  double b;
  double estimate;  // sum over the two halves
  double error;     // |halves - whole|

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel make_panel(const Rule& rule, const std::function<double(double)>& f, double a, double b,
                 double whole) {
  const double mid = 0.5 * (a + b);
  const double halves = apply(rule, f, a, mid) + apply(rule, f, mid, b);
  return {a, b, halves, std::abs(halves - whole)};
}

}  // namespace

Rule gauss_legendre(int n) {
  if (n < 1 || n > 256) throw InvalidParameter("Gauss-Legendre order must lie in [1, 256]");
  static std::mutex mutex;
  static std::map<int, StoredRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return {it->second.nodes, it->second.weights};
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options) {
  if (a == b) return 0.0;
  const Rule rule = gauss_legendre(options.nodes_per_panel);
  const int max_panels = 1 << std::min(options.max_depth, 20);

  // Globally adaptive: always split the panel with the largest error estimate.
  std::priority_queue<Panel> panels;
  panels.push(make_panel(rule, f, a, b, apply(rule, f, a, b)));
  double total = panels.top().estimate;
  double error = panels.top().error;
  while (error > options.abs_tolerance) {
    if (static_cast<int>(panels.size()) >= max_panels || !std::isfinite(error)) {
      const Panel& worst = panels.top();
      std::ostringstream msg;
      msg << options.label << ": adaptive quadrature did not converge on [" << a << ", " << b
          << "] (error estimate " << error << " > tolerance " << options.abs_tolerance << " after "
          << panels.size() << " panels; worst panel [" << worst.a << ", " << worst.b << "])";
      throw NumericalError(msg.str());
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = make_panel(rule, f, worst.a, mid, apply(rule, f, worst.a, mid));
    const Panel right = make_panel(rule, f, mid, worst.b, apply(rule, f, mid, worst.b));
    total += left.estimate + right.estimate - worst.estimate;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  for (; !panels.empty(); panels.pop()) total += panels.top().estimate;
  return total;
}

}  // namespace specshare::quadrature
