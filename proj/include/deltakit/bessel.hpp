#pragma once

// Bessel functions J_nu, Y_nu of integer order 0 <= nu <= 64 for real x >= 0.
//
//   small x          ascending power series
//   moderate x       Miller backward recurrence normalized by J_0 + 2 sum J_2k = 1;
//                    Y_0, Y_1 from the Neumann series, then forward recurrence
//   x >= x_hankel    Hankel asymptotic expansion, truncated at its smallest term

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "deltakit/error.hpp"

namespace deltakit {

inline constexpr int kMaxBesselOrder = 64;

namespace detail {

inline void check_bessel_args(int nu, double x) {
  if (nu < 0 || nu > kMaxBesselOrder)
    fail(ErrorKind::UnsupportedOrder, "Bessel order " + std::to_string(nu) + " outside [0, 64]");
  require(x >= 0.0 && std::isfinite(x), ErrorKind::PreconditionViolated, "Bessel argument must be finite and >= 0");
}

/// Beyond this the Hankel series reaches full double precision before it
/// starts to diverge.
inline double hankel_threshold(int nu) { return std::max(25.0, 0.5 * nu * nu); }

inline bool use_power_series(int nu, double x) { return x <= 2.0 || x * x <= static_cast<double>(nu + 1); }

inline double power_series_j(int nu, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= nu; ++i) term *= half / i;
  double sum = term;
  const double h2 = half * half;
  for (int k = 1; k < 500; ++k) {
    term *= -h2 / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

struct HankelPQ {
  double P = 1.0;
  double Q = 0.0;
};

inline HankelPQ hankel_pq(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  HankelPQ pq{1.0, 0.0};
  double term = 1.0, prev = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (term == 0.0) break;
    if (std::abs(term) > std::abs(prev) && k > nu) break;  // series has started to diverge
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      pq.P += sign * term;
    else
      pq.Q += sign * term;
    if (std::abs(term) < 1e-17) break;
    prev = term;
  }
  return pq;
}

inline double hankel_phase(int nu, double x) { return x - (0.5 * nu + 0.25) * std::numbers::pi; }

/// J_0(x) .. J_{count-1}(x) by Miller's algorithm.
inline std::vector<double> miller_sequence(double x, int count) {
  const double top = std::max<double>(count, x);
  int start = static_cast<int>(top + 20.0 + std::sqrt(40.0 * top));
  start += start % 2;
  std::vector<double> j(static_cast<std::size_t>(start + 2), 0.0);
  j[static_cast<std::size_t>(start + 1)] = 0.0;
  j[static_cast<std::size_t>(start)] = 1e-300;
  for (int k = start; k >= 1; --k) {
    j[static_cast<std::size_t>(k - 1)] =
        (2.0 * k / x) * j[static_cast<std::size_t>(k)] - j[static_cast<std::size_t>(k + 1)];
    if (std::abs(j[static_cast<std::size_t>(k - 1)]) > 1e250) {
      for (int i = k - 1; i <= start; ++i) j[static_cast<std::size_t>(i)] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[static_cast<std::size_t>(k)];
  for (auto& v : j) v /= norm;
  j.resize(static_cast<std::size_t>(std::max(count, start + 1)));
  return j;
}

/// J_nu(x) alone by the same recurrence, without storing the sequence.
inline double miller_single(int nu, double x) {
  const double top = std::max<double>(nu + 1, x);
  int start = static_cast<int>(top + 20.0 + std::sqrt(40.0 * top));
  start += start % 2;
  double above = 0.0, cur = 1e-300, norm = 0.0, at_nu = 0.0;
  if (start == nu) at_nu = cur;
  if (start % 2 == 0) norm += 2.0 * cur;
  for (int k = start; k >= 1; --k) {
    const double below = (2.0 * k / x) * cur - above;
    above = cur;
    cur = below;
    if (k - 1 == nu) at_nu = cur;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      norm *= 1e-250;
      at_nu *= 1e-250;
    }
  }
  return at_nu / norm;
}

}  // namespace detail

inline double bessel_j(int nu, double x) {
  detail::check_bessel_args(nu, x);
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  if (x >= detail::hankel_threshold(nu)) {
    const auto pq = detail::hankel_pq(nu, x);
    const double chi = detail::hankel_phase(nu, x);
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (pq.P * std::cos(chi) - pq.Q * std::sin(chi));
  }
  if (detail::use_power_series(nu, x)) return detail::power_series_j(nu, x);
  return detail::miller_single(nu, x);
}

inline double bessel_y(int nu, double x) {
  detail::check_bessel_args(nu, x);
  require(x > 0.0, ErrorKind::PreconditionViolated, "Y_nu is singular at 0");
  if (x >= detail::hankel_threshold(nu)) {
    const auto pq = detail::hankel_pq(nu, x);
    const double chi = detail::hankel_phase(nu, x);
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (pq.P * std::sin(chi) + pq.Q * std::cos(chi));
  }
  const auto j = detail::miller_sequence(x, nu + 2);
  const double lg = std::log(0.5 * x) + std::numbers::egamma;
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t k = 1; 2 * k + 1 < j.size(); ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * j[2 * k] / static_cast<double>(k);
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / static_cast<double>(k);
  }
  const double two_pi = 2.0 / std::numbers::pi;
  const double y0 = two_pi * lg * j[0] - 2.0 * two_pi * s0;
  if (nu == 0) return y0;
  const double y1 = -two_pi * j[0] / x + two_pi * lg * j[1] + two_pi * s1;
  double ym = y0, yn = y1;
  for (int n = 1; n < nu; ++n) {
    const double next = (2.0 * n / x) * yn - ym;
    ym = yn;
    yn = next;
  }
  return yn;
}

/// H^(1)_nu(x) = J_nu(x) + i Y_nu(x).
inline std::complex<double> hankel1(int nu, double x) { return {bessel_j(nu, x), bessel_y(nu, x)}; }

/// W_k(x) with J_{k-1}(2 pi x) = W_k(x) e(x)/sqrt(x) + conj(W_k(x)) e(-x)/sqrt(x),
/// taken as W_k(x) = (sqrt(x)/2) H^(1)_{k-1}(2 pi x) e(-x). Defined for x >= 1.
inline std::complex<double> bessel_envelope_w(int k, double x) {
  if (x < 1.0) fail(ErrorKind::DomainTooSmall, "W_k needs x >= 1, got " + std::to_string(x));
  const int nu = k - 1;
  detail::check_bessel_args(nu, x);
  const double z = 2.0 * std::numbers::pi * x;
  if (z >= detail::hankel_threshold(nu)) {
    // The e(x) factor cancels the Hankel phase exactly.
    const auto pq = detail::hankel_pq(nu, z);
    const double shift = -(0.5 * nu + 0.25) * std::numbers::pi;
    return std::complex<double>(pq.P, pq.Q) * std::polar(1.0, shift) / (2.0 * std::numbers::pi);
  }
  const double frac = x - std::floor(x);
  return 0.5 * std::sqrt(x) * hankel1(nu, z) * std::polar(1.0, -2.0 * std::numbers::pi * frac);
}

}  // namespace deltakit
