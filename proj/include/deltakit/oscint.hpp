#pragma once

// Oscillatory integrals (i), (j) and the two-sided Voronoi check for level one.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "deltakit/autforms.hpp"
#include "deltakit/bessel.hpp"
#include "deltakit/error.hpp"
#include "deltakit/jet.hpp"
#include "deltakit/modarith.hpp"
#include "deltakit/parallel.hpp"
#include "deltakit/quadrature.hpp"
#include "deltakit/report.hpp"
#include "deltakit/window.hpp"

namespace deltakit {

// ---------------------------------------------------------------------------
// W_k envelope scan

struct WEnvelopeScan {
  double C = 0.0;               // max |W_k|
  double D = 0.0;               // max |x (W_k(x+h) - W_k(x)) / h|
  double reconstruction = 0.0;  // max reconstruction error over the envelope 1/(pi sqrt x)
  std::vector<ojson> rows;
};

/// Samples W_k on a log grid of [1, xmax].
inline WEnvelopeScan scan_w_envelope(int k, double xmax = 1000.0, std::size_t points = 400, double h = 1e-4) {
  require(xmax > 1.0 && points >= 2, ErrorKind::PreconditionViolated, "bad W scan range");
  WEnvelopeScan out;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = std::pow(xmax, static_cast<double>(i) / static_cast<double>(points - 1));
    const cplx w = bessel_envelope_w(k, x);
    const cplx w2 = bessel_envelope_w(k, x + h);
    const double deriv = x * std::abs(w2 - w) / h;
    const double j = bessel_j(k - 1, 2.0 * std::numbers::pi * x);
    const double rebuilt = 2.0 * (w * e(x - std::floor(x))).real() / std::sqrt(x);
    const double rec = std::abs(rebuilt - j) * std::numbers::pi * std::sqrt(x);
    out.C = std::max(out.C, std::abs(w));
    out.D = std::max(out.D, deriv);
    out.reconstruction = std::max(out.reconstruction, rec);
    if (i % 20 == 0 || i + 1 == points)
      out.rows.push_back({{"x", x}, {"abs_w", std::abs(w)}, {"x_dw", deriv}, {"reconstruction", rec}});
  }
  return out;
}

inline VerificationReport w_envelope_report(int k, double xmax = 1000.0) {
  const auto s = scan_w_envelope(k, xmax);
  VerificationReport r;
  r.check = "bessel-w-envelope";
  r.anchor = "bessel-envelope-decomposition";
  r.params = {{"k", k}, {"xmax", xmax}, {"C_k", s.C}, {"D_k", s.D}};
  r.abs_error = s.reconstruction;
  r.rel_error = s.reconstruction;
  r.pass = s.reconstruction <= 1e-9 && std::isfinite(s.C) && std::isfinite(s.D);
  r.rows = s.rows;
  return r;
}

// ---------------------------------------------------------------------------
// Voronoi summation

struct VoronoiOptions {
  double tolerance = 1e-6;              // pass threshold on relative agreement
  double truncation_tolerance = 1e-12;  // dual tail below this times |LHS|
  int k_min = 4;
  int k_max = 24;
  unsigned workers = 1;
  std::size_t envelope_panels = 256;
};

namespace detail {

/// B_j = ∫|G_j| for j = 0..kmax, where G_0 = F and
/// G_{j+1}(x) = -x^{(nu+j+1)/2} (G_j(x) x^{-(nu+j)/2})'.
/// Then ∫F(x) J_nu(beta sqrt x) dx = (2/beta)^K ∫G_K(x) J_{nu+K}(beta sqrt x) dx.
inline std::vector<double> ibp_envelopes(const SmoothWindow& F, int nu, int kmax, std::size_t panels) {
  const auto& rule = cached_gauss_legendre(16);
  std::vector<double> B(static_cast<std::size_t>(kmax + 1), 0.0);
  const double h = (F.hi - F.lo) / static_cast<double>(panels);
  const auto order = static_cast<std::size_t>(kmax);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = F.lo + h * (static_cast<double>(p) + 0.5);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + 0.5 * h * rule.nodes[i];
      const double w = 0.5 * h * rule.weights[i];
      Jet g = F.jet(x, order);
      B[0] += w * std::abs(g.value());
      for (int j = 0; j < kmax; ++j) {
        const std::size_t ord = order - static_cast<std::size_t>(j);
        const Jet inner = g * Jet::power(ord, x, -0.5 * (nu + j));
        const Jet d = inner.differentiate();
        g = -(d * Jet::power(ord - 1, x, 0.5 * (nu + j + 1)));
        B[static_cast<std::size_t>(j + 1)] += w * std::abs(g.value());
      }
    }
  }
  return B;
}

inline cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace detail

/// Dual side of the Voronoi formula for one modulus c and window F:
/// the integrals ∫F(x) J_{k-1}(4 pi sqrt(n x)/c) dx for n <= cutoff, plus the
/// tail bound that fixed the cutoff. Independent of the numerator a.
struct VoronoiDualPlan {
  i64 c = 1;
  SmoothWindow F;
  int weight = 12;
  i64 cutoff = 0;
  int ibp_order = 0;
  double tail_bound = 0.0;
  std::vector<double> integrals;  // index n - 1
};

inline cplx voronoi_lhs(i64 a, i64 c, const CuspFormCoefficients& cf, const SmoothWindow& F) {
  const i64 lo = std::max<i64>(1, static_cast<i64>(std::floor(F.lo)));
  const i64 hi = static_cast<i64>(std::ceil(F.hi));
  if (hi > cf.nmax) fail(ErrorKind::CoefficientRangeExceeded, "window beyond coefficient range");
  std::vector<cplx> terms;
  terms.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (i64 n = lo; n <= hi; ++n) {
    const double w = F(static_cast<double>(n));
    if (w == 0.0) continue;
    terms.push_back(cf(n) * w * e_frac(mod(a * n, c), c));
  }
  return static_cast<double>(c) * pairwise_sum(terms);
}

/// C with d(n) <= C n^{1/4} for all n: the product over p < 16 of max_a (a+1) / p^{a/4}.
inline double divisor_bound_constant() {
  double C = 1.0;
  for (int p : {2, 3, 5, 7, 11, 13}) {
    double best = 1.0;
    for (int a = 1; a < 64; ++a) best = std::max(best, (a + 1.0) / std::pow(static_cast<double>(p), a / 4.0));
    C *= best;
  }
  return C;
}

/// Bound on Σ_{n > n0} |lambda(n)| 2 pi |∫F J_{k-1}(4 pi sqrt(nx)/c)| after K integrations by parts:
///   2 pi (c/2pi)^K B_K C n0^{5/4 - K/2} / (K/2 - 5/4).
inline double voronoi_tail_bound(double c, int K, double BK, double n0) {
  return 2.0 * std::numbers::pi * std::pow(c / (2.0 * std::numbers::pi), K) * BK * divisor_bound_constant() *
         std::pow(n0, 1.25 - 0.5 * K) / (0.5 * K - 1.25);
}

/// Picks the integration-by-parts order that minimizes the cutoff, then
/// evaluates the integrals up to it.
inline VoronoiDualPlan build_voronoi_plan(i64 c, const CuspFormCoefficients& cf, const SmoothWindow& F,
                                          double target, const VoronoiOptions& opt = {}) {
  require(c >= 1, ErrorKind::PreconditionViolated, "modulus c must be >= 1");
  require(opt.k_min >= 3 && opt.k_max >= opt.k_min, ErrorKind::PreconditionViolated, "need 3 <= k_min <= k_max");
  VoronoiDualPlan plan;
  plan.c = c;
  plan.F = F;
  plan.weight = cf.weight;
  if (F.is_zero()) return plan;
  const int nu = cf.weight - 1;
  const auto B = detail::ibp_envelopes(F, nu, opt.k_max, opt.envelope_panels);
  const double cc = static_cast<double>(c);
  double best = std::numeric_limits<double>::infinity();
  for (int K = opt.k_min; K <= opt.k_max; ++K) {
    const double at_one = voronoi_tail_bound(cc, K, B[static_cast<std::size_t>(K)], 1.0);
    const double n0 = std::pow(at_one / target, 1.0 / (0.5 * K - 1.25));
    if (n0 < best) {
      best = n0;
      plan.ibp_order = K;
    }
  }
  plan.cutoff = std::max<i64>(1, static_cast<i64>(std::ceil(best)));
  if (plan.cutoff > cf.nmax)
    fail(ErrorKind::CoefficientRangeExceeded, "dual sum needs n up to " + std::to_string(plan.cutoff) +
                                                  " but coefficients stop at " + std::to_string(cf.nmax));
  plan.tail_bound = voronoi_tail_bound(cc, plan.ibp_order, B[static_cast<std::size_t>(plan.ibp_order)],
                                       static_cast<double>(plan.cutoff));

  QuadratureSpec spec;
  // Accumulated quadrature error stays below 1e-9 |LHS|; never ask for less than roundoff.
  const double lhs_scale = target / opt.truncation_tolerance;
  spec.abs_tol = std::max(1e-9 * lhs_scale / std::pow(static_cast<double>(plan.cutoff), 1.5),
                          1e-15 * (F.hi - F.lo));
  spec.rel_tol = 1e-12;
  spec.max_doublings = 14;
  spec.panels_per_oscillation = 0.25;
  const double ulo = std::sqrt(F.lo), uhi = std::sqrt(F.hi);
  plan.integrals = parallel_map(static_cast<std::size_t>(plan.cutoff), opt.workers, [&](std::size_t idx) {
    const double n = static_cast<double>(idx + 1);
    const double beta = 4.0 * std::numbers::pi * std::sqrt(n) / cc;
    // x = u^2 makes the Bessel argument linear in u.
    auto f = [&](double u) { return F(u * u) * bessel_j(nu, beta * u) * 2.0 * u; };
    const double osc = beta * (uhi - ulo) / (2.0 * std::numbers::pi);
    return integrate(f, ulo, uhi, spec, osc + 4.0).value;
  });
  return plan;
}

/// c Σ lambda(n) e(a n / c) F(n) on the left; on the right
/// Σ_{n <= cutoff} lambda(n) e(-a' n / c) 2 pi i^k ∫F(x) J_{k-1}(4 pi sqrt(n x)/c) dx with a a' = 1 mod c.
inline cplx voronoi_rhs(i64 a, const VoronoiDualPlan& plan, const CuspFormCoefficients& cf) {
  if (plan.integrals.empty()) return {};
  const i64 c = plan.c;
  const i64 abar = c == 1 ? 0 : inverse_mod(a, c);
  const cplx kernel = 2.0 * std::numbers::pi * detail::i_power(plan.weight);
  std::vector<cplx> terms(plan.integrals.size());
  for (std::size_t idx = 0; idx < terms.size(); ++idx) {
    const i64 n = static_cast<i64>(idx + 1);
    terms[idx] = cf(n) * e_frac(mod(-abar * n, c), c) * plan.integrals[idx];
  }
  return kernel * pairwise_sum(terms);
}

inline VerificationReport voronoi_report(i64 a, i64 N, const VoronoiDualPlan& plan, const CuspFormCoefficients& cf,
                                         cplx lhs, const VoronoiOptions& opt) {
  VerificationReport r;
  r.check = "voronoi";
  r.anchor = "voronoi-summation-level-one";
  r.params = {{"a", a},
              {"c", plan.c},
              {"N", N},
              {"coefficients", cf.label},
              {"window", plan.F.describe()},
              {"dual_cutoff", plan.cutoff},
              {"ibp_order", plan.ibp_order},
              {"tail_bound", plan.tail_bound}};
  r.set_sides(lhs, voronoi_rhs(a, plan, cf));
  r.pass = r.rel_error <= opt.tolerance || (std::abs(lhs) == 0.0 && r.abs_error == 0.0);
  return r;
}

inline SmoothWindow voronoi_scaled_window(i64 N, const SmoothWindow& base = voronoi_window()) {
  return base.scaled(static_cast<double>(N));
}

/// Both sides for a single (a, c).
inline VerificationReport voronoi_check(i64 a, i64 c, const CuspFormCoefficients& cf, i64 N,
                                        const SmoothWindow& base = voronoi_window(),
                                        const VoronoiOptions& opt = {}) {
  require(c >= 1, ErrorKind::PreconditionViolated, "modulus c must be >= 1");
  require(std::gcd(a, c) == 1, ErrorKind::PreconditionViolated, "need gcd(a, c) = 1");
  if (4 * N > cf.nmax) fail(ErrorKind::CoefficientRangeExceeded, "need 4N <= nmax");
  const SmoothWindow F = voronoi_scaled_window(N, base);
  const cplx lhs = voronoi_lhs(a, c, cf, F);
  const double target = opt.truncation_tolerance * std::max(std::abs(lhs), 1e-300);
  const auto plan = build_voronoi_plan(c, cf, F, target, opt);
  return voronoi_report(a, N, plan, cf, lhs, opt);
}

/// Every a mod c with gcd(a, c) = 1, sharing one dual plan sized for the smallest |LHS|.
inline std::vector<VerificationReport> voronoi_sweep(i64 c, const CuspFormCoefficients& cf, i64 N,
                                                     const SmoothWindow& base = voronoi_window(),
                                                     const VoronoiOptions& opt = {}) {
  require(c >= 1, ErrorKind::PreconditionViolated, "modulus c must be >= 1");
  if (4 * N > cf.nmax) fail(ErrorKind::CoefficientRangeExceeded, "need 4N <= nmax");
  const SmoothWindow F = voronoi_scaled_window(N, base);
  std::vector<i64> as;
  for (i64 a = 0; a < c; ++a)
    if (std::gcd(a, c) == 1) as.push_back(a);
  std::vector<cplx> lhs;
  double smallest = std::numeric_limits<double>::infinity();
  for (i64 a : as) {
    lhs.push_back(voronoi_lhs(a, c, cf, F));
    smallest = std::min(smallest, std::abs(lhs.back()));
  }
  const double target = opt.truncation_tolerance * std::max(smallest, 1e-300);
  const auto plan = build_voronoi_plan(c, cf, F, target, opt);
  std::vector<VerificationReport> out;
  for (std::size_t i = 0; i < as.size(); ++i) out.push_back(voronoi_report(as[i], N, plan, cf, lhs[i], opt));
  return out;
}

// ---------------------------------------------------------------------------
// Integrals (i) and (j)

struct OscillatoryIntegral {
  cplx value{};
  double error = 0.0;
  double trivial_bound = 0.0;  // ∫|window| (times sup|W| for (i))
  double threshold = 0.0;      // p^2 q^2 / N for (i), p^4 q^2 / N for (j)
  bool decay_flag = false;     // n beyond threshold * N^eps
  std::size_t evaluations = 0;
};

struct IntegralParams {
  i64 q = 1;
  i64 p = 3;
  double N = 1000.0;
  double delta = 0.0;  // |x| <= delta; 0 means p / N
  int weight = 12;
  double eps = 0.1;
  QuadratureSpec quad{};
};

namespace detail {

inline void check_integral_params(double n, double x, const IntegralParams& P) {
  require(n > 0.0 && P.q >= 1 && P.p >= 1 && P.N > 0.0, ErrorKind::PreconditionViolated,
          "integral parameters must be positive");
  const double delta = P.delta > 0.0 ? P.delta : static_cast<double>(P.p) / P.N;
  require(std::abs(x) <= delta * (1.0 + 1e-12), ErrorKind::PreconditionViolated, "need |x| <= delta");
}

inline double window_mass(const SmoothWindow& V) {
  return integrate([&](double y) { return V(y); }, V.lo, V.hi, QuadratureSpec{}, 4.0).value;
}

}  // namespace detail

inline double integral_i_threshold(i64 p, i64 q, double N) {
  const double pq = static_cast<double>(p) * static_cast<double>(q);
  return pq * pq / N;
}

inline double integral_j_threshold(i64 p, i64 q, double N) {
  const double p2 = static_cast<double>(p) * static_cast<double>(p);
  return p2 * p2 * static_cast<double>(q) * static_cast<double>(q) / N;
}

/// (i): ∫V(y) e(Nxy/p ± (4 pi/(pq)) sqrt(Nny)) W_g(4 pi sqrt(Nny)/(pq)) dy.
inline OscillatoryIntegral integral_I(double n, double x, const IntegralParams& P, const SmoothWindow& V, int sign) {
  detail::check_integral_params(n, x, P);
  require(sign == 1 || sign == -1, ErrorKind::PreconditionViolated, "sign must be +1 or -1");
  const double pq = static_cast<double>(P.p) * static_cast<double>(P.q);
  const double scale = 4.0 * std::numbers::pi / pq;
  const double a = P.N * x / static_cast<double>(P.p);
  const double lo_arg = scale * std::sqrt(P.N * n * V.lo);
  if (lo_arg < 1.0)
    fail(ErrorKind::DomainTooSmall, "W argument " + std::to_string(lo_arg) + " below 1 at the window edge");
  double wmax = 0.0;
  auto f = [&](double y) -> cplx {
    const double v = V(y);
    if (v == 0.0) return {};
    const double r = scale * std::sqrt(P.N * n * y);
    const cplx w = bessel_envelope_w(P.weight, r);
    wmax = std::max(wmax, std::abs(w));
    const double phase = a * y + sign * r;
    return v * e(phase - std::floor(phase)) * w;
  };
  const double osc = std::abs(a) * (V.hi - V.lo) + scale * std::sqrt(P.N * n) * (std::sqrt(V.hi) - std::sqrt(V.lo));
  const auto res = integrate(f, V.lo, V.hi, P.quad, osc + 4.0);
  OscillatoryIntegral out;
  out.value = res.value;
  out.error = res.error;
  out.evaluations = res.evaluations;
  out.trivial_bound = detail::window_mass(V) * wmax;
  out.threshold = integral_i_threshold(P.p, P.q, P.N);
  out.decay_flag = n >= out.threshold * std::pow(P.N, P.eps);
  return out;
}

/// (j): ∫U(y) e(-Nxy/p^2 ± 2 sqrt(mNy)/(p^2 q)) dy.
inline OscillatoryIntegral integral_J(double m, double x, const IntegralParams& P, const SmoothWindow& U, int sign) {
  detail::check_integral_params(m, x, P);
  require(sign == 1 || sign == -1, ErrorKind::PreconditionViolated, "sign must be +1 or -1");
  const double p2 = static_cast<double>(P.p) * static_cast<double>(P.p);
  const double a = -P.N * x / p2;
  const double b = 2.0 * std::sqrt(m * P.N) / (p2 * static_cast<double>(P.q));
  auto f = [&](double y) -> cplx {
    const double u = U(y);
    if (u == 0.0) return {};
    const double phase = a * y + sign * b * std::sqrt(y);
    return u * e(phase - std::floor(phase));
  };
  const double osc = std::abs(a) * (U.hi - U.lo) + b * (std::sqrt(U.hi) - std::sqrt(U.lo));
  const auto res = integrate(f, U.lo, U.hi, P.quad, osc + 4.0);
  OscillatoryIntegral out;
  out.value = res.value;
  out.error = res.error;
  out.evaluations = res.evaluations;
  out.trivial_bound = detail::window_mass(U);
  out.threshold = integral_j_threshold(P.p, P.q, P.N);
  out.decay_flag = m >= out.threshold * std::pow(P.N, P.eps);
  return out;
}

// ---------------------------------------------------------------------------
// Decay onset and stationary phase scans

enum class IntegralKind { I, J };

inline const char* to_string(IntegralKind k) { return k == IntegralKind::I ? "i" : "j"; }

struct DecayScanOptions {
  double level = 1e-8;
  double lo_factor = 1.0 / 16.0;  // grid starts at threshold * lo_factor
  double hi_factor = 16384.0;     // and ends at threshold * hi_factor
  int steps_per_octave = 4;
  double x = 0.0;
  double allowed_factor = 4.0;
};

struct DecayOnset {
  IntegralKind kind = IntegralKind::I;
  i64 p = 0, q = 0;
  double N = 0.0;
  double threshold = 0.0;
  double onset = std::numeric_limits<double>::infinity();  // smallest grid point after which max|.| <= level
  double ratio = std::numeric_limits<double>::infinity();
  bool within = false;
};

/// Scans n (or m) on a geometric grid; both signs, the larger modulus counts.
inline DecayOnset decay_onset(IntegralKind kind, i64 p, i64 q, double N, const SmoothWindow& window,
                              const DecayScanOptions& opt = {}) {
  IntegralParams P;
  P.p = p;
  P.q = q;
  P.N = N;
  DecayOnset out;
  out.kind = kind;
  out.p = p;
  out.q = q;
  out.N = N;
  out.threshold = kind == IntegralKind::I ? integral_i_threshold(p, q, N) : integral_j_threshold(p, q, N);
  const int steps = static_cast<int>(std::round(std::log2(opt.hi_factor / opt.lo_factor) * opt.steps_per_octave));
  double onset = std::numeric_limits<double>::infinity();
  for (int s = steps; s >= 0; --s) {
    const double t = out.threshold * opt.lo_factor * std::exp2(static_cast<double>(s) / opt.steps_per_octave);
    double mag = std::numeric_limits<double>::infinity();
    try {
      mag = 0.0;
      for (int sign : {1, -1}) {
        const auto r = kind == IntegralKind::I ? integral_I(t, opt.x, P, window, sign)
                                               : integral_J(t, opt.x, P, window, sign);
        mag = std::max(mag, std::abs(r.value));
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DomainTooSmall) throw;
      mag = std::numeric_limits<double>::infinity();
    }
    if (mag > opt.level) break;
    onset = t;
  }
  out.onset = onset;
  out.ratio = onset / out.threshold;
  out.within = std::isfinite(out.ratio) && out.ratio <= opt.allowed_factor && out.ratio >= 1.0 / opt.allowed_factor;
  return out;
}

inline VerificationReport decay_onset_scan(const std::vector<i64>& ps, const std::vector<i64>& qs, double N,
                                           const DecayScanOptions& opt = {}, unsigned workers = 1) {
  struct Job {
    IntegralKind kind;
    i64 p, q;
  };
  std::vector<Job> jobs;
  for (i64 p : ps)
    for (i64 q : qs)
      for (auto kind : {IntegralKind::I, IntegralKind::J}) jobs.push_back({kind, p, q});
  const auto results = parallel_map(jobs.size(), workers, [&](std::size_t i) {
    const auto& j = jobs[i];
    const SmoothWindow w = j.kind == IntegralKind::I ? standard_v_window() : standard_u_window();
    return decay_onset(j.kind, j.p, j.q, N, w, opt);
  });
  VerificationReport r;
  r.check = "integrals-decay-onset";
  r.anchor = "oscillatory-integral-decay";
  r.params = {{"N", N}, {"level", opt.level}, {"allowed_factor", opt.allowed_factor}, {"x", opt.x},
              {"steps_per_octave", opt.steps_per_octave}};
  bool all = true;
  double worst = 0.0;
  for (const auto& d : results) {
    all = all && d.within;
    const double off = std::isfinite(d.ratio) ? std::max(d.ratio, 1.0 / d.ratio) : std::numeric_limits<double>::max();
    worst = std::max(worst, off);
    r.rows.push_back({{"integral", to_string(d.kind)},
                      {"p", d.p},
                      {"q", d.q},
                      {"threshold", d.threshold},
                      {"onset", std::isfinite(d.onset) ? ojson(d.onset) : ojson(nullptr)},
                      {"ratio", std::isfinite(d.ratio) ? ojson(d.ratio) : ojson(nullptr)},
                      {"within", d.within}});
  }
  r.bound_ratio = worst;
  r.pass = all;
  return r;
}

/// |J| against the stationary-phase scale p q^{1/2} (mN)^{-1/4} for m whose
/// stationary point y = m / (N x^2 q^2) lies in the flat part of U.
inline VerificationReport stationary_phase_scan(i64 p, i64 q, double N, std::size_t points = 16) {
  const SmoothWindow U = standard_u_window();
  IntegralParams P;
  P.p = p;
  P.q = q;
  P.N = N;
  const double x = 0.5 * static_cast<double>(p) / N;
  const double unit = N * x * x * static_cast<double>(q * q);
  const double mlo = unit * U.core_lo * 1.5, mhi = unit * U.core_hi / 1.5;
  VerificationReport r;
  r.check = "integrals-stationary-phase";
  r.anchor = "oscillatory-integral-trivial-bound";
  r.params = {{"p", p}, {"q", q}, {"N", N}, {"x", x}, {"m_range", {mlo, mhi}}};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  bool bounded = true;
  for (std::size_t i = 0; i < points; ++i) {
    const double m = mlo * std::pow(mhi / mlo, static_cast<double>(i) / static_cast<double>(points - 1));
    const auto res = integral_J(m, x, P, U, 1);
    const double scale = static_cast<double>(p) * std::sqrt(static_cast<double>(q)) * std::pow(m * N, -0.25);
    const double norm = std::abs(res.value) / scale;
    lo = std::min(lo, norm);
    hi = std::max(hi, norm);
    bounded = bounded && std::abs(res.value) <= res.trivial_bound * (1.0 + 1e-9);
    r.rows.push_back({{"m", m}, {"abs_J", std::abs(res.value)}, {"scale", scale}, {"normalized", norm}});
  }
  r.params["normalized_min"] = lo;
  r.params["normalized_max"] = hi;
  r.bound_ratio = hi;
  r.pass = bounded && lo >= 0.1 && hi <= 10.0;
  return r;
}

}  // namespace deltakit
