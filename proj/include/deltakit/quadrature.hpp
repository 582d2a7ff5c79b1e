#pragma once

// Composite Gauss-Legendre quadrature with panel doubling. Panel counts are
// seeded from the number of oscillations the caller expects on the interval.

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "deltakit/error.hpp"

namespace deltakit {

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_doublings = 10;
  int order = 20;                  // nodes per panel
  double panels_per_oscillation = 1.0;

  void validate() const {
    require(abs_tol > 0.0 && rel_tol > 0.0, ErrorKind::PreconditionViolated, "tolerances must be positive");
    require(order >= 2 && max_doublings >= 0, ErrorKind::PreconditionViolated, "bad quadrature spec");
  }
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussLegendreRule gauss_legendre(int n) {
  require(n >= 1, ErrorKind::PreconditionViolated, "rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

/// Rules are built once per order and shared.
inline const GaussLegendreRule& cached_gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(gauss_legendre(n));
  return *slot;
}

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

/// Fixed composite rule with `panels` equal panels.
template <class F>
auto composite_gauss(F&& f, double a, double b, std::size_t panels, const GaussLegendreRule& rule) {
  using T = decltype(f(a));
  T total{};
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + h * static_cast<double>(k);
    const double mid = lo + 0.5 * h;
    T acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += acc * (0.5 * h);
  }
  return total;
}

/// Doubles the panel count until two successive estimates agree to tolerance.
/// `oscillations` is the expected number of periods on [a, b].
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}, double oscillations = 0.0) {
  spec.validate();
  using T = decltype(f(a));
  const auto& rule = cached_gauss_legendre(spec.order);
  std::size_t panels =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(oscillations * spec.panels_per_oscillation)));
  QuadratureResult<T> res;
  T prev = composite_gauss(f, a, b, panels, rule);
  res.evaluations = panels * rule.nodes.size();
  for (int d = 0; d <= spec.max_doublings; ++d) {
    panels *= 2;
    const T cur = composite_gauss(f, a, b, panels, rule);
    res.evaluations += panels * rule.nodes.size();
    const double err = std::abs(cur - prev);
    if (err <= spec.abs_tol || err <= spec.rel_tol * std::abs(cur)) {
      res.value = cur;
      res.error = err;
      res.panels = panels;
      return res;
    }
    prev = cur;
  }
  fail(ErrorKind::QuadratureNonConvergent,
       "no convergence on [" + std::to_string(a) + ", " + std::to_string(b) + "] with " + std::to_string(panels) +
           " panels");
}

}  // namespace deltakit
