#include <gtest/gtest.h>

#include <algorithm>

#include "deltakit/pipeline.hpp"

using namespace deltakit;

namespace {

const CuspFormCoefficients& tau_table() {
  static const auto t = tau_series(8000);
  return t;
}

}  // namespace

// Frozen from an independent 30-digit summation with the same window.
TEST(SDirect, FrozenValues) {
  auto P = make_pipeline_params(3, 600, 0.1);
  const auto delta = make_pipeline_coefficients(tau_table(), 3, CoefficientSource::Delta);
  const auto zeroed = make_pipeline_coefficients(tau_table(), 3, CoefficientSource::DeltaPPrimitive);
  EXPECT_NEAR(s_direct(P, delta).real(), 402.21495844592415644, 1e-10);
  EXPECT_NEAR(s_direct(P, zeroed).real(), 333.60285941707540899, 1e-10);
  EXPECT_EQ(s_direct(P, delta).imag(), 0.0);
}

TEST(SDirect, ZeroWindowAndLinearity) {
  auto P = make_pipeline_params(5, 2000, 0.2);
  const auto c = make_pipeline_coefficients(tau_table(), 5);
  const cplx base = s_direct(P, c);
  EXPECT_EQ(base, s_direct(P, c));
  auto P2 = P;
  P2.V = P.V.times(2.5);
  EXPECT_NEAR(std::abs(s_direct(P2, c) - 2.5 * base), 0.0, 1e-12 * std::abs(base));
  P2.V = P.V.times(0.0);
  EXPECT_EQ(s_direct(P2, c), cplx(0.0, 0.0));
}

TEST(SDirect, RangeExceeded) {
  auto P = make_pipeline_params(3, 4000, 0.1);
  EXPECT_THROW(s_direct(P, make_pipeline_coefficients(tau_table(), 3)), Error);
}

TEST(STilde, ZeroUWindow) {
  auto P = make_pipeline_params(3, 200, 0.1);
  P.U = P.U.times(0.0);
  EXPECT_EQ(s_tilde(P, make_pipeline_coefficients(tau_table(), 3)).value, cplx(0.0, 0.0));
}

TEST(STilde, FactoredMatchesDirectDoubleSum) {
  for (i64 p : {3, 5})
    for (auto src : {CoefficientSource::DeltaPPrimitive, CoefficientSource::RandomMultiplicative}) {
      const auto P = make_pipeline_params(p, 200, 0.1);
      const auto c = make_pipeline_coefficients(tau_table(), p, src, 7);
      const auto r = s_tilde_oracle_check(P, c, 1e-8);
      EXPECT_TRUE(r.pass) << p << " " << r.rel_error;
    }
}

TEST(STilde, SingleFrequencyMatchesIndicatorTransform) {
  for (i64 p : {3, 5}) {
    const auto P = make_pipeline_params(p, 200, 0.1);
    const auto c = make_pipeline_coefficients(tau_table(), p);
    for (i64 n0 : {151, 301, 452}) {
      const auto r = s_tilde_indicator_check(P, c.f, n0, 1e-8);
      EXPECT_TRUE(r.pass) << p << " " << n0 << " " << r.abs_error;
    }
  }
}

TEST(STilde, QuadratureErrorEstimateCoversRefinement) {
  const auto c = make_pipeline_coefficients(tau_table(), 3);
  const auto P = make_pipeline_params(3, 1000, 0.1, 64);
  auto Pfine = P;
  Pfine.nodes = 96;
  const auto coarse = s_tilde(P, c);
  const auto fine = s_tilde(Pfine, c);
  EXPECT_LE(std::abs(fine.value - coarse.value), std::max(coarse.quadrature_error, 1e-12 * std::abs(coarse.value)));
}

TEST(STilde, InvariantUnderModuliOrderAndWorkers) {
  const auto c = make_pipeline_coefficients(tau_table(), 5);
  auto P = make_pipeline_params(5, 400, 0.2);
  const auto ref = s_tilde(P, c).value;
  auto shuffled = P;
  std::reverse(shuffled.phi.moduli.begin(), shuffled.phi.moduli.end());
  shuffled.workers = 3;
  EXPECT_EQ(s_tilde(shuffled, c).value, ref);
}

TEST(Gap, StatedExample) {
  const auto P = make_pipeline_params(5, 2000, 0.2);
  const auto r = approximation_gap_check(P, make_pipeline_coefficients(tau_table(), 5));
  ASSERT_TRUE(r.bound_ratio.has_value());
  EXPECT_LE(*r.bound_ratio, 10.0);
  EXPECT_TRUE(r.pass);
}

TEST(Gap, LargerQGivesSmallerGap) {
  const auto c = make_pipeline_coefficients(tau_table(), 3);
  const auto r = gap_vs_q_sweep(3, 1000, {20.0, 40.0}, c);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_LT(r.rows[1]["gap"].get<double>(), r.rows[0]["gap"].get<double>());
}

TEST(Params, Construction) {
  const auto P = make_pipeline_params(3, 1000, 0.1);
  EXPECT_NEAR(P.Q, std::sqrt(1000.0 / 3.0) * std::pow(3.0, 0.1), 1e-12);
  EXPECT_DOUBLE_EQ(P.delta, 0.003);
  for (i64 q : P.phi.moduli) {
    EXPECT_GE(static_cast<double>(q), P.Q);
    EXPECT_LE(static_cast<double>(q), 2.0 * P.Q);
  }
  EXPECT_THROW(make_pipeline_params(4, 1000, 0.1), Error);
}
