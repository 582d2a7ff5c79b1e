#pragma once

#include <cmath>
#include <string>

#include "deltakit/error.hpp"
#include "deltakit/jet.hpp"
#include "deltakit/report.hpp"

namespace deltakit {

/// Smooth step on [0,1]: s(t) / (s(t) + s(1-t)) with s(t) = exp(-1/t).
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

/// Taylor jet of smooth_step at t0.
inline Jet smooth_step_jet(double t0, std::size_t order) {
  // Beyond these cut-offs every derivative is below exp(-1000).
  if (t0 <= 1e-3) return Jet(order, 0.0);
  if (t0 >= 1.0 - 1e-3) return Jet(order, 1.0);
  const Jet t = Jet::variable(order, t0);
  const Jet one(order, 1.0);
  const Jet a = exp(-reciprocal(t));
  const Jet b = exp(-reciprocal(one - t));
  return a / (a + b);
}

/// C-infinity bump: zero outside (lo, hi), one on [core_lo, core_hi], glued
/// by smooth_step transitions. `amplitude` scales the whole window.
struct SmoothWindow {
  double lo = 0.5;
  double core_lo = 1.0;
  double core_hi = 2.0;
  double hi = 3.0;
  double amplitude = 1.0;

  void validate() const {
    require(lo < core_lo && core_lo <= core_hi && core_hi < hi, ErrorKind::PreconditionViolated,
            "window needs lo < core_lo <= core_hi < hi");
  }

  double operator()(double x) const {
    if (x <= lo || x >= hi) return 0.0;
    if (x < core_lo) return amplitude * smooth_step((x - lo) / (core_lo - lo));
    if (x <= core_hi) return amplitude;
    return amplitude * smooth_step((hi - x) / (hi - core_hi));
  }

  /// Taylor jet of the window at x.
  Jet jet(double x, std::size_t order) const {
    if (x <= lo || x >= hi) return Jet(order, 0.0);
    if (x >= core_lo && x <= core_hi) return Jet(order, amplitude);
    if (x < core_lo) {
      const double w = core_lo - lo;
      Jet j = smooth_step_jet((x - lo) / w, order);
      double s = amplitude;
      for (std::size_t i = 0; i <= order; ++i, s /= w) j[i] *= s;
      return j;
    }
    const double w = hi - core_hi;
    Jet j = smooth_step_jet((hi - x) / w, order);
    double s = amplitude;
    for (std::size_t i = 0; i <= order; ++i, s /= -w) j[i] *= s;
    return j;
  }

  double derivative(double x, std::size_t k) const { return jet(x, k).derivative(k); }

  /// The window x -> W(x / factor).
  SmoothWindow scaled(double factor) const {
    return {lo * factor, core_lo * factor, core_hi * factor, hi * factor, amplitude};
  }

  SmoothWindow times(double s) const { return {lo, core_lo, core_hi, hi, amplitude * s}; }

  bool is_zero() const { return amplitude == 0.0; }

  ojson describe() const {
    return {{"support", {lo, hi}}, {"core", {core_lo, core_hi}}, {"amplitude", amplitude}};
  }
};

/// V: supported on [1/2, 3], equal to one on [1, 2].
inline SmoothWindow standard_v_window() { return {0.5, 1.0, 2.0, 3.0, 1.0}; }

/// U: equal to one on the support of V.
inline SmoothWindow standard_u_window() { return {0.25, 0.5, 3.0, 4.0, 1.0}; }

/// Window on [1, 2] used for the Voronoi checks before scaling by N.
inline SmoothWindow voronoi_window() { return {1.0, 1.5, 1.5, 2.0, 1.0}; }

}  // namespace deltakit
