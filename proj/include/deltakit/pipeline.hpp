#pragma once

// S(N) = Σ lambda_f(n) lambda_g(n) V(n/N) against its circle-method average
//   S~(N) = (1/2delta) ∫_{-delta}^{delta} S~_x dx,
//   S~_x  = (1/(L p)) Σ_{q in Phi} Σ_{b mod p} Σ*_{a mod q} S(a,q,x,g) T(a,q,x,f),
// with S(.., g) = Σ lambda_g(n) e(an/pq) e((b+x)n/p) V(n/N) and
//      T(.., f) = Σ lambda_f(m) e(-am/pq) e(-(b+x)m/p) U(m/N).
// The pair (a, b) enters only through r = a + bq mod pq, so the inner sums are
// evaluated at theta = r/(pq) + x/p with gcd(r, q) = 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "deltakit/autforms.hpp"
#include "deltakit/circle.hpp"
#include "deltakit/error.hpp"
#include "deltakit/modarith.hpp"
#include "deltakit/parallel.hpp"
#include "deltakit/quadrature.hpp"
#include "deltakit/report.hpp"
#include "deltakit/window.hpp"

namespace deltakit {

struct PipelineParams {
  i64 p = 3;
  i64 N = 1000;
  double eta = 0.1;
  double Q = 0.0;
  double delta = 0.0;
  ModuliSet phi;
  int nodes = 64;
  SmoothWindow V = standard_v_window();
  SmoothWindow U = standard_u_window();
  unsigned workers = 1;

  ojson describe() const {
    ojson moduli = ojson::array();
    for (i64 q : phi.moduli) moduli.push_back(q);
    return {{"p", p},
            {"N", N},
            {"eta", eta},
            {"Q", Q},
            {"delta", delta},
            {"L", phi.L},
            {"L_over_Q2", static_cast<double>(phi.L) / (Q * Q)},
            {"delta_in_range", delta_in_range(phi, delta)},
            {"moduli", moduli},
            {"nodes", nodes}};
  }
};

/// Q = sqrt(N/p) p^eta, delta = p/N, Phi = primes in [Q, 2Q] (or products).
inline PipelineParams make_pipeline_params(i64 p, i64 N, double eta, int nodes = 64,
                                           ModuliMode mode = ModuliMode::Primes) {
  require(is_prime(p) && p > 2, ErrorKind::NotPrime, "pipeline needs an odd prime p");
  require(N >= 1 && nodes >= 2, ErrorKind::PreconditionViolated, "need N >= 1 and at least two nodes");
  PipelineParams P;
  P.p = p;
  P.N = N;
  P.eta = eta;
  P.Q = std::sqrt(static_cast<double>(N) / static_cast<double>(p)) * std::pow(static_cast<double>(p), eta);
  P.delta = static_cast<double>(p) / static_cast<double>(N);
  P.phi = build_moduli(P.Q, p, mode);
  P.nodes = nodes;
  return P;
}

/// Same as `base` with an explicit moduli set.
inline PipelineParams with_moduli(PipelineParams base, ModuliSet phi) {
  base.phi = std::move(phi);
  return base;
}

struct PipelineCoefficients {
  CuspFormCoefficients f;  // stand-in for the level p^4 form
  CuspFormCoefficients g;
};

/// lambda_g: Delta. lambda_f: Delta with multiples of p zeroed, or seeded random signs.
inline PipelineCoefficients make_pipeline_coefficients(const CuspFormCoefficients& tau, i64 p,
                                                       CoefficientSource f_source = CoefficientSource::DeltaPPrimitive,
                                                       std::uint64_t seed = 1) {
  PipelineCoefficients c;
  c.g = tau;
  switch (f_source) {
    case CoefficientSource::Delta: c.f = tau; break;
    case CoefficientSource::DeltaPPrimitive: c.f = with_multiples_zeroed(tau, p); break;
    case CoefficientSource::RandomMultiplicative: c.f = random_multiplicative(tau.nmax, seed); break;
  }
  return c;
}

namespace detail {

struct WeightedRange {
  i64 lo = 1;
  std::vector<double> w;  // w[i] belongs to n = lo + i
};

inline WeightedRange weighted_coefficients(const CuspFormCoefficients& cf, const SmoothWindow& win, i64 N) {
  const SmoothWindow W = win.scaled(static_cast<double>(N));
  WeightedRange r;
  r.lo = std::max<i64>(1, static_cast<i64>(std::floor(W.lo)));
  const i64 hi = static_cast<i64>(std::ceil(W.hi));
  if (hi > cf.nmax) fail(ErrorKind::CoefficientRangeExceeded, "window reaches " + std::to_string(hi) +
                                                                 " beyond nmax " + std::to_string(cf.nmax));
  for (i64 n = r.lo; n <= hi; ++n) r.w.push_back(W.is_zero() ? 0.0 : cf(n) * W(static_cast<double>(n)));
  return r;
}

/// theta = r/(pq) + x/p for every q in Phi (ascending) and r mod pq with gcd(r, q) = 1.
struct Frequency {
  i64 r = 0;
  i64 modulus = 1;  // p q
};

inline std::vector<Frequency> frequencies(const PipelineParams& P) {
  std::vector<i64> moduli = P.phi.moduli;
  std::sort(moduli.begin(), moduli.end());
  std::vector<Frequency> out;
  for (i64 q : moduli) {
    const i64 pq = P.p * q;
    for (i64 r = 0; r < pq; ++r)
      if (std::gcd(r, q) == 1) out.push_back({r, pq});
  }
  return out;
}

/// Σ w[i] e((lo+i) theta) with theta = r/M + y, resynchronized every 256 terms.
inline cplx twisted_sum(const WeightedRange& c, i64 r, i64 M, double y) {
  auto phase = [&](i64 n) {
    const double t = static_cast<double>(mod(r * n, M)) / static_cast<double>(M) + static_cast<double>(n) * y;
    return e(t - std::floor(t));
  };
  const cplx step = phase(1);
  cplx acc{}, z{};
  for (std::size_t i = 0; i < c.w.size(); ++i) {
    if (i % 256 == 0) z = phase(c.lo + static_cast<i64>(i));
    acc += c.w[i] * z;
    z *= step;
  }
  return acc;
}

inline double inner_ratio(const PipelineParams& P) { return 1.0 / (static_cast<double>(P.phi.L) * static_cast<double>(P.p)); }

}  // namespace detail

/// S(N) = Σ lambda_f(n) lambda_g(n) V(n/N).
inline cplx s_direct(const PipelineParams& P, const PipelineCoefficients& c) {
  const auto g = detail::weighted_coefficients(c.g, P.V, P.N);
  std::vector<double> terms(g.w.size());
  for (std::size_t i = 0; i < g.w.size(); ++i) terms[i] = g.w[i] * c.f(g.lo + static_cast<i64>(i));
  return pairwise_sum(terms);
}

/// S~_x for one x.
inline cplx s_tilde_at(const PipelineParams& P, double x,
                       const std::vector<detail::Frequency>& freqs, const detail::WeightedRange& g,
                       const detail::WeightedRange& f) {
  const double y = x / static_cast<double>(P.p);
  std::vector<cplx> terms(freqs.size());
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const cplx A = detail::twisted_sum(g, freqs[k].r, freqs[k].modulus, y);
    const cplx B = std::conj(detail::twisted_sum(f, freqs[k].r, freqs[k].modulus, y));
    terms[k] = A * B;
  }
  return pairwise_sum(terms) * detail::inner_ratio(P);
}

struct STildeResult {
  cplx value{};
  cplx half_nodes{};  // same rule with nodes/2
  double quadrature_error = 0.0;
};

/// The x-average by Gauss-Legendre on [-delta, delta]; also the nodes/2 rule as an error estimate.
inline STildeResult s_tilde(const PipelineParams& P, const PipelineCoefficients& c) {
  require(P.phi.L > 0, ErrorKind::EmptySet, "empty moduli set");
  const auto g = detail::weighted_coefficients(c.g, P.V, P.N);
  const auto f = detail::weighted_coefficients(c.f, P.U, P.N);
  const auto freqs = detail::frequencies(P);
  struct Node {
    double x, w;
    int rule;
  };
  std::vector<Node> nodes;
  for (int rule : {0, 1}) {
    const auto& gl = cached_gauss_legendre(rule == 0 ? P.nodes : std::max(1, P.nodes / 2));
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) nodes.push_back({P.delta * gl.nodes[i], gl.weights[i], rule});
  }
  const auto vals = parallel_map(nodes.size(), P.workers,
                                 [&](std::size_t i) { return s_tilde_at(P, nodes[i].x, freqs, g, f); });
  std::vector<cplx> full, half;
  for (std::size_t i = 0; i < nodes.size(); ++i) (nodes[i].rule == 0 ? full : half).push_back(nodes[i].w * vals[i]);
  // (1/(2 delta)) ∫ over [-delta, delta] = half the weighted sum on [-1, 1].
  STildeResult out;
  out.value = 0.5 * pairwise_sum(full);
  out.half_nodes = 0.5 * pairwise_sum(half);
  out.quadrature_error = std::abs(out.value - out.half_nodes);
  return out;
}

/// Oracle: Σ_{n,m} lambda_g(n) V lambda_f(m) U K(n-m) C(n-m) with
/// K(h) = sin(2 pi delta h/p)/(2 pi delta h/p) the exact x-average and
/// C(h) = (1/(Lp)) Σ_q Σ_{r mod pq, (r,q)=1} e(hr/(pq)). Quadratic in N.
inline cplx s_tilde_direct(const PipelineParams& P, const PipelineCoefficients& c) {
  require(P.N <= 400, ErrorKind::PreconditionViolated, "direct double sum is meant for N <= 400");
  const auto g = detail::weighted_coefficients(c.g, P.V, P.N);
  const auto f = detail::weighted_coefficients(c.f, P.U, P.N);
  const auto freqs = detail::frequencies(P);
  const i64 hmax = static_cast<i64>(g.w.size() + f.w.size()) + std::max(g.lo, f.lo);
  std::vector<cplx> kernel(static_cast<std::size_t>(2 * hmax + 1));
  for (i64 h = -hmax; h <= hmax; ++h) {
    std::vector<cplx> cs(freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k) cs[k] = e_frac(mod(h * freqs[k].r, freqs[k].modulus), freqs[k].modulus);
    const double z = 2.0 * std::numbers::pi * P.delta * static_cast<double>(h) / static_cast<double>(P.p);
    const double K = h == 0 ? 1.0 : std::sin(z) / z;
    kernel[static_cast<std::size_t>(h + hmax)] = K * pairwise_sum(cs) * detail::inner_ratio(P);
  }
  std::vector<cplx> terms;
  for (std::size_t i = 0; i < g.w.size(); ++i) {
    if (g.w[i] == 0.0) continue;
    const i64 n = g.lo + static_cast<i64>(i);
    cplx row{};
    for (std::size_t j = 0; j < f.w.size(); ++j) {
      const i64 m = f.lo + static_cast<i64>(j);
      row += f.w[j] * kernel[static_cast<std::size_t>(n - m + hmax)];
    }
    terms.push_back(g.w[i] * row);
  }
  return pairwise_sum(terms);
}

/// Oracle from the circle module: with lambda_g supported at one n0,
/// S~ = V(n0/N) Σ_{m = n0 mod p} lambda_f(m) U(m/N) ∫ I~(alpha) e((n0 - m) alpha / p) d alpha.
inline cplx s_tilde_via_indicator(const PipelineParams& P, const CuspFormCoefficients& f, i64 n0) {
  const auto Itilde = tilde_indicator(P.phi, P.delta);
  const SmoothWindow Vn = P.V.scaled(static_cast<double>(P.N));
  const auto fw = detail::weighted_coefficients(f, P.U, P.N);
  std::vector<cplx> terms;
  for (std::size_t j = 0; j < fw.w.size(); ++j) {
    const i64 m = fw.lo + static_cast<i64>(j);
    if (mod(n0 - m, P.p) != 0 || fw.w[j] == 0.0) continue;
    const double freq = static_cast<double>(n0 - m) / static_cast<double>(P.p);
    terms.push_back(fw.w[j] * Itilde.fourier(freq));
  }
  return Vn(static_cast<double>(n0)) * pairwise_sum(terms);
}

/// Coefficients equal to 1 at n0 and 0 elsewhere.
inline CuspFormCoefficients single_coefficient(i64 nmax, i64 n0) {
  require(n0 >= 1 && n0 <= nmax, ErrorKind::PreconditionViolated, "n0 outside [1, nmax]");
  CuspFormCoefficients cf;
  cf.nmax = nmax;
  cf.label = "single-" + std::to_string(n0);
  cf.lambda.assign(static_cast<std::size_t>(nmax + 1), 0.0);
  cf.lambda[static_cast<std::size_t>(n0)] = 1.0;
  return cf;
}

inline double gap_envelope(const PipelineParams& P) {
  // N sqrt(Q^2 / (delta L^2))
  return static_cast<double>(P.N) * P.Q / (static_cast<double>(P.phi.L) * std::sqrt(P.delta));
}

inline VerificationReport approximation_gap_check(const PipelineParams& P, const PipelineCoefficients& c,
                                                  double allowed = 10.0) {
  const cplx S = s_direct(P, c);
  const auto St = s_tilde(P, c);
  VerificationReport r;
  r.check = "pipeline-gap";
  r.anchor = "circle-method-approximation-bound";
  r.params = P.describe();
  r.params["f_source"] = c.f.label;
  r.params["g_source"] = c.g.label;
  r.params["envelope"] = gap_envelope(P);
  r.params["quadrature_error"] = St.quadrature_error;
  r.set_sides(S, St.value);
  r.bound_ratio = r.abs_error / gap_envelope(P);
  r.pass = *r.bound_ratio <= allowed;
  if (!delta_in_range(P.phi, P.delta)) r.note = "delta outside (Q^-2, Q^-1)";
  return r;
}

/// Factored S~ against the (n, m) double sum; tiny N only.
inline VerificationReport s_tilde_oracle_check(const PipelineParams& P, const PipelineCoefficients& c,
                                               double tolerance = 1e-8) {
  VerificationReport r;
  r.check = "pipeline-factored-vs-direct";
  r.anchor = "circle-method-average";
  r.params = P.describe();
  r.params["f_source"] = c.f.label;
  r.set_sides(s_tilde(P, c).value, s_tilde_direct(P, c));
  r.pass = r.rel_error <= tolerance;
  return r;
}

/// Factored S~ with a single-coefficient lambda_g against the Fourier transform of I~.
inline VerificationReport s_tilde_indicator_check(const PipelineParams& P, const CuspFormCoefficients& f, i64 n0,
                                                  double tolerance = 1e-8) {
  PipelineCoefficients c{f, single_coefficient(f.nmax, n0)};
  VerificationReport r;
  r.check = "pipeline-single-frequency";
  r.anchor = "circle-method-average";
  r.params = P.describe();
  r.params["n0"] = n0;
  r.set_sides(s_tilde(P, c).value, s_tilde_via_indicator(P, f, n0));
  r.pass = r.abs_error <= tolerance * std::max(1.0, std::abs(*r.rhs));
  return r;
}

/// |S - S~| over a list of Q values at fixed p, N.
inline VerificationReport gap_vs_q_sweep(i64 p, i64 N, const std::vector<double>& Qs, const PipelineCoefficients& c,
                                         int nodes = 64, unsigned workers = 1) {
  VerificationReport r;
  r.check = "pipeline-gap-vs-q";
  r.anchor = "circle-method-approximation-bound";
  r.params = {{"p", p}, {"N", N}, {"nodes", nodes}, {"f_source", c.f.label}};
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  const cplx S = [&] {
    PipelineParams P0 = make_pipeline_params(p, N, 0.0, nodes);
    return s_direct(P0, c);
  }();
  for (double Q : Qs) {
    PipelineParams P = make_pipeline_params(p, N, 0.0, nodes);
    P.Q = Q;
    P.phi = build_moduli(Q, p);
    P.workers = workers;
    const double gap = std::abs(S - s_tilde(P, c).value);
    monotone = monotone && gap <= prev;
    prev = gap;
    r.rows.push_back({{"Q", Q}, {"L", P.phi.L}, {"gap", gap}, {"envelope", gap_envelope(P)},
                      {"ratio", gap / gap_envelope(P)}});
  }
  r.params["non_increasing"] = monotone;
  r.pass = monotone;
  return r;
}

}  // namespace deltakit
