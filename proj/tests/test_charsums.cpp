#include <gtest/gtest.h>

#include <cmath>

#include "deltakit/charsums.hpp"

using namespace deltakit;

// Frozen values below were produced by an independent 30-digit brute-force
// evaluation of the defining sums.

TEST(Kloosterman, Examples) {
  EXPECT_NEAR(kloosterman(1, 1, 5), 0.38196601125010515, 1e-13);
  EXPECT_NEAR(kloosterman(1, -1, 3), 2.0, 1e-13);
  for (i64 p : {3, 5, 7, 61}) EXPECT_NEAR(kloosterman(0, 1, p), -1.0, 1e-12);
  EXPECT_NEAR(kloosterman(1, 1, 7), 2.0489173395223053, 1e-13);
  EXPECT_NEAR(kloosterman(1, 1, 13), 5.2595340479050087, 1e-12);
  EXPECT_NEAR(kloosterman(1, 1, 61), 10.961316461691086, 1e-11);
  EXPECT_NEAR(kloosterman(1, 1, 199), 5.6900365647520212, 1e-10);
  EXPECT_NEAR(kloosterman(3, 5, 7), 2.0489173395223053, 1e-13);
  EXPECT_THROW(kloosterman(1, 1, 9), Error);
}

TEST(Kloosterman, TableMatchesDirectSum) {
  for (i64 p : {3, 5, 11, 31}) {
    const KloostermanTable t(p);
    for (i64 a = 0; a < p; ++a)
      for (i64 b = 0; b < p; ++b) EXPECT_NEAR(t(a, b), kloosterman(a, b, p), 1e-11);
  }
}

TEST(Kloosterman, AngleReconstructsValue) {
  const KloostermanTable t(29);
  for (i64 b = 1; b < 29; ++b) {
    const auto kv = t.value(3, b);
    ASSERT_TRUE(kv.angle.has_value());
    EXPECT_GE(*kv.angle, 0.0);
    EXPECT_LE(*kv.angle, std::numbers::pi);
    EXPECT_NEAR(2.0 * std::sqrt(29.0) * std::cos(*kv.angle), kv.value, 1e-10);
  }
  EXPECT_FALSE(t.value(0, 4).angle.has_value());
}

TEST(Kloosterman, WeilBoundAllPrimesTo199) {
  for (i64 p = 3; p <= 199; ++p) {
    if (!is_prime(p)) continue;
    const KloostermanTable t(p);
    const double bound = 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9;
    for (i64 c = 1; c < p; ++c) EXPECT_LE(std::abs(t.unit(c)), bound) << p << " " << c;
  }
}

TEST(Kloosterman, ScalingLawExhaustive) {
  for (i64 p = 3; p <= 61; ++p) {
    if (!is_prime(p)) continue;
    const auto res = weil_scan_exhaustive(p);
    EXPECT_LE(res.max_scaling_error, 1e-9) << p;
    EXPECT_LE(res.max_ratio, 1.0 + 1e-12) << p;
    EXPECT_EQ(res.pairs, static_cast<std::size_t>((p - 1) * (p - 1)));
  }
}

TEST(Kloosterman, SampledScanIsSeedDeterministic) {
  const auto a = weil_scan_sampled(197, 2000, 42);
  const auto b = weil_scan_sampled(197, 2000, 42);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_EQ(a.max_scaling_error, b.max_scaling_error);
  EXPECT_TRUE(weil_report(199, false, 10000, 3).pass);
}

TEST(GaussSum, Examples) {
  for (i64 p : {3, 7, 13}) {
    const auto ctx = make_prime_context(p);
    EXPECT_NEAR(std::abs(gauss_sum(DirichletCharacter(ctx, 0)) - cplx(-1.0, 0.0)), 0.0, 1e-12);
  }
  const auto g3 = gauss_sum(DirichletCharacter(make_prime_context(3), 1));
  EXPECT_NEAR(g3.real(), 0.0, 1e-12);
  EXPECT_NEAR(g3.imag(), std::sqrt(3.0), 1e-12);
}

TEST(GaussSum, ModulusSquaredIsP) {
  for (i64 p = 3; p <= 199; ++p) {
    if (!is_prime(p)) continue;
    for (const auto& chi : all_characters(make_prime_context(p))) {
      if (chi.is_principal()) continue;
      EXPECT_NEAR(std::norm(gauss_sum(chi)), static_cast<double>(p), 1e-9 * static_cast<double>(p));
    }
  }
}

TEST(Ramanujan, Examples) {
  EXPECT_EQ(ramanujan_cq(7, 0), 6);
  EXPECT_EQ(ramanujan_cq(7, 3), -1);
  EXPECT_EQ(ramanujan_cq(6, 3), -2);
  EXPECT_EQ(ramanujan_cq(1, 5), 1);
  EXPECT_EQ(ramanujan_cq(12, -6), -4);
}

TEST(Ramanujan, BothFormsAgree) {
  const auto r = ramanujan_agreement_check(200, 400);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.params["failures"].get<i64>(), 0);
}

TEST(PseudoCharSum, BruteForceExamples) {
  EXPECT_NEAR(std::abs(cp_bruteforce({1, 1, 1, 3}) - cplx(3.0, 0.0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(cp_bruteforce({2, 1, 1, 5}) - cplx(-13.944271909999159, 0.0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(cp_bruteforce({3, 4, 2, 7}) - cplx(11.293504037133832, 0.0)), 0.0, 1e-10);
  EXPECT_THROW(cp_bruteforce({3, 1, 1, 3}), Error);
  EXPECT_THROW(cp_bruteforce({1, 1, 3, 3}), Error);
}

TEST(PseudoCharSum, UnitRescalingInvariance) {
  const i64 p = 11;
  for (i64 c = 2; c < p; ++c)
    for (i64 m = 1; m < p; ++m) {
      const cplx base = cp_bruteforce({m, 3, 2, p});
      const cplx scaled = cp_bruteforce({c * m, c * 3, c * 2, p});
      EXPECT_LE(std::abs(base - scaled), 1e-9);
    }
}

TEST(PseudoCharSum, ClosedFormExamples) {
  EXPECT_NEAR(cp_closed(1, 1, 3), 3.0, 1e-12);
  EXPECT_NEAR(cp_closed(1, 1, 5), 4.0 * kloosterman(1, -1, 5) - 1.0, 1e-12);
  EXPECT_NEAR(cp_closed(2, 1, 5), -13.944271909999159, 1e-10);
  for (i64 c = 1; c < 13; ++c) EXPECT_NEAR(cp_closed(c * 3, c * 5, 13), cp_closed(3, 5, 13), 1e-9);
}

TEST(PseudoCharSum, ClosedFormMatchesBruteForce) {
  for (i64 p : {3, 5, 7, 11, 13}) {
    for (i64 q : {1, 2, 3, 5, 7}) {
      if (q % p == 0) continue;
      const auto r = cp_closed_form_audit(p, q);
      EXPECT_TRUE(r.pass) << p << " " << q << " " << r.abs_error;
    }
  }
}

TEST(PseudoCharSum, QEqualsOneIsThePPart) {
  for (i64 m = 1; m <= 4; ++m)
    for (i64 n = 1; n <= 4; ++n) EXPECT_LE(std::abs(pseudo_char_sum(m, n, 1, 5) - cp_bruteforce({m, n, 1, 5})), 1e-9);
}

TEST(Factorization, Examples) {
  EXPECT_TRUE(factorization_check(1, 1, 2, 3).pass);
  EXPECT_TRUE(factorization_check(7, 2, 5, 3).pass);
  EXPECT_THROW(factorization_check(3, 1, 2, 3), Error);
}

TEST(Factorization, GridSmall) {
  for (i64 p : {3, 5, 7})
    for (i64 q : {2, 3, 5, 7}) {
      if (q == p) continue;
      const auto r = factorization_grid(p, q, 8);
      EXPECT_TRUE(r.pass) << p << " " << q;
    }
}

TEST(Correlation, Examples) {
  EXPECT_NEAR(correlation_A(1, 1, 0, 3), 18.0, 1e-10);
  EXPECT_NEAR(correlation_A(1, 2, 1, 5), 10.0, 1e-10);
  EXPECT_NEAR(correlation_A(2, 5, 3, 11), 190.67086772122727, 1e-8);
}

TEST(Correlation, PeriodicityAndSymmetry) {
  const i64 p = 13;
  const CorrelationEngine eng(p);
  for (i64 u = 1; u < p; u += 3)
    for (i64 u2 = 1; u2 < p; u2 += 2)
      for (i64 l = 0; l < p; l += 4) {
        const double a = eng(u, u2, l);
        EXPECT_EQ(a, eng(u + p, u2, l));
        EXPECT_EQ(a, eng(u, u2 - p, l));
        EXPECT_EQ(a, eng(u, u2, l + p));
        EXPECT_NEAR(a, eng(u2, u, l), 1e-9 * p * p * p);
      }
}

TEST(Correlation, BoundScanSmallPrimes) {
  for (i64 p : {5, 7, 11}) {
    const auto r = correlation_bound_scan(p, {true, 0, 1});
    EXPECT_TRUE(r.pass) << p;
    ASSERT_TRUE(r.bound_ratio.has_value());
    EXPECT_LE(*r.bound_ratio, 16.0);
  }
}

TEST(Correlation, ScanIndependentOfWorkers) {
  const auto a = correlation_bound_scan(17, {true, 0, 1}, 1);
  const auto b = correlation_bound_scan(17, {true, 0, 1}, 4);
  EXPECT_EQ(to_json_line(a), to_json_line(b));
  const auto s1 = correlation_bound_scan(101, {false, 500, 9}, 1);
  const auto s2 = correlation_bound_scan(101, {false, 500, 9}, 3);
  EXPECT_EQ(to_json_line(s1), to_json_line(s2));
}

TEST(Correlation, RangedSums) {
  const i64 p = 7;
  const double A = correlation_A(1, 3, 2, p);
  const CorrelationEngine eng(p);
  double one = 0.0, two = 0.0;
  for (i64 n = 1; n <= 2 * p; ++n) (n <= p ? one : two) += eng.term(1, 3, 2, n);
  EXPECT_NEAR(one, A, 1e-9);
  EXPECT_NEAR(one + two, 2.0 * A, 1e-9);
  EXPECT_TRUE(ranged_correlation_check(1, 3, 2, p, p).pass);
  EXPECT_TRUE(ranged_correlation_check(1, 3, 2, p, 3 * p).pass);
  EXPECT_TRUE(ranged_correlation_check(1, 3, 2, p, p + 1).pass);
}
