#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "deltakit/oscint.hpp"

using namespace deltakit;

namespace {

const CuspFormCoefficients& tau_table() {
  static const auto t = tau_series(100000);
  return t;
}

/// J_nu(x) = (1/2pi) ∫_0^{2pi} cos(nu t - x sin t) dt; the trapezoid rule on a
/// periodic analytic integrand converges geometrically.
double bessel_oracle(int nu, double x) {
  const int m = 2 * static_cast<int>(x + nu) + 200;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * std::numbers::pi * i / m;
    acc += std::cos(nu * t - x * std::sin(t));
  }
  return acc / m;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalMismatch;
}

}  // namespace

// Frozen values from 30-digit reference evaluations.
TEST(Bessel, FrozenValues) {
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(5, 0.0), 0.0);
  EXPECT_NEAR(bessel_j(0, 1.0), 0.765197686557966551, 1e-15);
  EXPECT_NEAR(bessel_j(1, 0.5), 0.242268457674873886, 1e-15);
  EXPECT_NEAR(bessel_j(11, 30.0), 0.0250588051378245437, 1e-14);
  EXPECT_NEAR(bessel_j(5, 10.0), -0.23406152818679364, 1e-14);
  EXPECT_NEAR(bessel_j(30, 31.5), 0.198627475198444601, 1e-13);
  EXPECT_NEAR(bessel_j(63, 100.0), -0.0375824224211744551, 1e-13);
  EXPECT_NEAR(bessel_j(64, 80.0), 0.11112833093796254, 1e-13);
  EXPECT_NEAR(bessel_j(63, 2000.0), -0.0148963822375516927, 1e-14);
  EXPECT_NEAR(bessel_j(11, 1e-3) / 1.22324745427357445e-44, 1.0, 1e-13);
  EXPECT_NEAR(bessel_y(0, 1.0), 0.088256964215676958, 1e-14);
  EXPECT_NEAR(bessel_y(1, 2.5), 0.145918137966785799, 1e-14);
  EXPECT_NEAR(bessel_y(11, 30.0), 0.148908918366623643, 1e-13);
  EXPECT_NEAR(bessel_y(11, 5.0) / -92.7525571940638059, 1.0, 1e-12);
  EXPECT_NEAR(bessel_y(64, 80.0), -0.0299042058759013295, 1e-12);
  EXPECT_NEAR(bessel_y(40, 1000.0), 0.0210764033319231945, 1e-14);
  EXPECT_NEAR(bessel_y(3, 0.01) / -5093021.84171373667, 1.0, 1e-12);
}

TEST(Bessel, SmallArgumentLeadingTerm) {
  const double x = 1e-4;
  EXPECT_NEAR(bessel_j(11, x) / (std::pow(x / 2, 11) / std::tgamma(12.0)), 1.0, 1e-8);
}

TEST(Bessel, J11At30MatchesIntegralRepresentation) {
  // (1/pi) ∫_0^pi cos(11 t - 30 sin t) dt
  EXPECT_NEAR(bessel_j(11, 30.0), bessel_oracle(11, 30.0), 1e-10 * std::abs(bessel_oracle(11, 30.0)));
}

// Relative error is measured against |J| below the turning point and against
// the envelope sqrt(2/(pi x)) above it, where J itself has zeros.
TEST(Bessel, LogGridAgainstIntegralRepresentation) {
  for (int nu : {0, 1, 2, 5, 11, 20, 33, 47, 64}) {
    double x0 = 1e-3;
    while (std::abs(bessel_oracle(nu, x0)) < 1e-5) x0 *= 1.05;
    const double x1 = 5000.0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = x0 * std::pow(x1 / x0, i / 99.0);
      const double ref = bessel_oracle(nu, x);
      const double scale = x < nu ? std::abs(ref) : std::max(std::abs(ref), std::sqrt(2.0 / (std::numbers::pi * x)));
      worst = std::max(worst, std::abs(bessel_j(nu, x) - ref) / scale);
    }
    EXPECT_LE(worst, 1e-10) << "nu = " << nu;
  }
}

TEST(Bessel, WronskianHolds) {
  for (int nu : {0, 3, 11, 40})
    for (double x : {0.7, 3.0, 11.5, 24.9, 25.1, 90.0, 850.0, 3000.0}) {
      const double w = bessel_j(nu + 1, x) * bessel_y(nu, x) - bessel_j(nu, x) * bessel_y(nu + 1, x);
      const double expect = 2.0 / (std::numbers::pi * x);
      EXPECT_NEAR(w / expect, 1.0, 1e-9) << nu << " " << x;
    }
}

TEST(Bessel, Errors) {
  EXPECT_EQ(kind_of([] { bessel_j(65, 1.0); }), ErrorKind::UnsupportedOrder);
  EXPECT_EQ(kind_of([] { bessel_j(-1, 1.0); }), ErrorKind::UnsupportedOrder);
  EXPECT_EQ(kind_of([] { bessel_j(2, -1.0); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { bessel_y(2, 0.0); }), ErrorKind::PreconditionViolated);
}

TEST(BesselEnvelope, ReconstructionAtFive) {
  const cplx w = bessel_envelope_w(12, 5.0);
  EXPECT_NEAR(w.real(), -0.15045160480988314689, 1e-13);
  EXPECT_NEAR(w.imag(), 0.0663245395138620928525, 1e-13);
  const double rebuilt = 2.0 * (w * e(5.0)).real() / std::sqrt(5.0);
  EXPECT_NEAR(rebuilt, bessel_j(11, 10.0 * std::numbers::pi), 1e-12);
}

TEST(BesselEnvelope, DomainTooSmall) {
  EXPECT_EQ(kind_of([] { bessel_envelope_w(12, 0.5); }), ErrorKind::DomainTooSmall);
}

TEST(BesselEnvelope, ContinuousAcrossHankelSwitch) {
  const double z = detail::hankel_threshold(11);
  const double x = z / (2.0 * std::numbers::pi);
  EXPECT_NEAR(std::abs(bessel_envelope_w(12, x * (1 - 1e-12)) - bessel_envelope_w(12, x * (1 + 1e-12))), 0.0, 1e-10);
}

TEST(BesselEnvelope, GridScan) {
  const auto s = scan_w_envelope(12);
  EXPECT_LE(s.reconstruction, 1e-9);
  EXPECT_TRUE(std::isfinite(s.C));
  EXPECT_TRUE(std::isfinite(s.D));
  EXPECT_GE(s.C, 1.0 / (2.0 * std::numbers::pi) * 0.99);
  EXPECT_TRUE(w_envelope_report(12).pass);
}

TEST(Voronoi, ZeroWindow) {
  const auto F = voronoi_window().times(0.0);
  const auto r = voronoi_check(1, 3, tau_table(), 500, F);
  EXPECT_EQ(*r.lhs, cplx(0.0, 0.0));
  EXPECT_EQ(*r.rhs, cplx(0.0, 0.0));
  EXPECT_TRUE(r.pass);
}

TEST(Voronoi, ConstantCalibratedAtCOne) {
  const auto r = voronoi_check(1, 1, tau_table(), 1000);
  EXPECT_TRUE(r.pass) << r.rel_error;
  EXPECT_LE(r.rel_error, 1e-6);
}

TEST(Voronoi, CFiveAtFiveHundred) {
  const auto r = voronoi_check(2, 5, tau_table(), 500);
  EXPECT_TRUE(r.pass) << r.rel_error;
  EXPECT_GT(r.params["dual_cutoff"].get<i64>(), 0);
}

TEST(Voronoi, SweepMatchesSingleChecks) {
  VoronoiOptions opt;
  opt.workers = 3;
  const auto sweep = voronoi_sweep(4, tau_table(), 250, voronoi_window(), opt);
  ASSERT_EQ(sweep.size(), 2u);
  for (const auto& r : sweep) EXPECT_TRUE(r.pass) << r.rel_error;
  opt.workers = 1;
  const auto again = voronoi_sweep(4, tau_table(), 250, voronoi_window(), opt);
  for (std::size_t i = 0; i < sweep.size(); ++i) EXPECT_EQ(to_json_line(sweep[i]), to_json_line(again[i]));
}

TEST(Voronoi, Preconditions) {
  EXPECT_EQ(kind_of([] { voronoi_check(2, 4, tau_table(), 250); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { voronoi_check(1, 3, tau_table(), 30000); }), ErrorKind::CoefficientRangeExceeded);
}

TEST(Voronoi, TailBoundDecreasesWithCutoff) {
  EXPECT_NEAR(divisor_bound_constant(), 8.44696, 1e-4);
  for (i64 n = 1; n <= 5000; ++n)
    EXPECT_LE(static_cast<double>(divisors(n).size()), divisor_bound_constant() * std::pow(double(n), 0.25));
  EXPECT_LT(voronoi_tail_bound(3, 10, 1.0, 2000), voronoi_tail_bound(3, 10, 1.0, 1000));
}

TEST(IntegralI, TrivialBoundAndCoreSize) {
  IntegralParams P;
  P.p = 3;
  P.q = 11;
  const auto V = standard_v_window();
  const double nmin = std::pow(P.p * P.q / (4 * std::numbers::pi), 2) / (P.N * V.lo) * 1.01;
  for (double n : {nmin, 2 * nmin, integral_i_threshold(3, 11, P.N)}) {
    for (int sign : {1, -1}) {
      const auto r = integral_I(n, 0.001, P, V, sign);
      EXPECT_LE(std::abs(r.value), r.trivial_bound * (1 + 1e-9));
      EXPECT_FALSE(r.decay_flag);
    }
  }
  const auto core = integral_I(nmin, 0.0, P, V, -1);
  // Far from negligible: several orders above the decay tolerance.
  EXPECT_GT(std::abs(core.value), 1e-4 * core.trivial_bound);
  EXPECT_GT(std::abs(core.value), 1e-4);
}

TEST(IntegralI, NegligibleBeyondStatedThreshold) {
  IntegralParams P;
  for (i64 p : {3, 5, 7})
    for (i64 q : {11, 13, 17}) {
      P.p = p;
      P.q = q;
      const double n = 10.0 * integral_i_threshold(p, q, P.N) * std::pow(P.N, 0.1);
      for (int sign : {1, -1}) {
        const auto r = integral_I(n, 0.0, P, standard_v_window(), sign);
        EXPECT_TRUE(r.decay_flag);
        EXPECT_LE(std::abs(r.value), 1e-8) << p << " " << q;
      }
    }
}

TEST(IntegralI, SmallArgumentIsDomainTooSmall) {
  IntegralParams P;
  EXPECT_EQ(kind_of([&] { integral_I(1e-6, 0.0, P, standard_v_window(), 1); }), ErrorKind::DomainTooSmall);
  EXPECT_EQ(kind_of([&] { integral_I(10.0, 1.0, P, standard_v_window(), 1); }), ErrorKind::PreconditionViolated);
}

TEST(IntegralI, ContinuousInN) {
  IntegralParams P;
  P.p = 5;
  P.q = 13;
  const double n = integral_i_threshold(5, 13, P.N);
  const auto a = integral_I(n, 0.0, P, standard_v_window(), 1);
  const auto b = integral_I(n * (1 + 1e-7), 0.0, P, standard_v_window(), 1);
  EXPECT_LE(std::abs(a.value - b.value), 1e-5 * a.trivial_bound);
}

TEST(IntegralJ, TrivialBound) {
  IntegralParams P;
  P.p = 5;
  P.q = 13;
  const auto U = standard_u_window();
  for (double m : {1.0, 10.0, 100.0, 1e4})
    for (double x : {0.0, 0.004, -0.005}) {
      const auto r = integral_J(m, x, P, U, 1);
      EXPECT_LE(std::abs(r.value), r.trivial_bound * (1 + 1e-9));
    }
  EXPECT_NEAR(integral_J(1e-9, 0.0, P, U, 1).trivial_bound, std::abs(integral_J(1e-12, 0.0, P, U, 1).value), 1e-5);
}

TEST(IntegralJ, NegligibleBeyondStatedThreshold) {
  IntegralParams P;
  for (i64 p : {3, 5, 7})
    for (i64 q : {11, 13, 17}) {
      P.p = p;
      P.q = q;
      const double m = 10.0 * integral_j_threshold(p, q, P.N) * std::pow(P.N, 0.1);
      for (int sign : {1, -1}) EXPECT_LE(std::abs(integral_J(m, 0.0, P, standard_u_window(), sign).value), 1e-8);
    }
}

TEST(IntegralJ, StationaryPhaseScale) {
  for (i64 p : {3, 5, 7}) {
    const auto r = stationary_phase_scan(p, 11, 1000.0);
    EXPECT_TRUE(r.pass) << r.params.dump();
  }
}

TEST(DecayOnset, ScanIsWorkerIndependent) {
  DecayScanOptions opt;
  opt.hi_factor = 64.0;
  const auto a = decay_onset_scan({3}, {11, 13}, 1000.0, opt, 1);
  const auto b = decay_onset_scan({3}, {11, 13}, 1000.0, opt, 4);
  EXPECT_EQ(to_json_line(a), to_json_line(b));
}

TEST(DecayOnset, OnsetRatiosAreScaleFree) {
  const auto a = decay_onset(IntegralKind::I, 3, 11, 1000.0, standard_v_window());
  const auto b = decay_onset(IntegralKind::I, 7, 17, 1000.0, standard_v_window());
  ASSERT_TRUE(std::isfinite(a.ratio));
  EXPECT_NEAR(a.ratio, b.ratio, 1e-9 * a.ratio);
}
