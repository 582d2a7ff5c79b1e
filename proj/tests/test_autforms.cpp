#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include "deltakit/autforms.hpp"

using namespace deltakit;

namespace {

const CuspFormCoefficients& tau2000() {
  static const auto t = tau_series(2000);
  return t;
}

i128 big(const char* s) { return parse_i128(s); }

}  // namespace

// Frozen values from an independent eta^3 cubing-and-squaring expansion.
TEST(Tau, SmallValues) {
  const std::vector<i64> expect = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944};
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_TRUE(tau2000().a(static_cast<i64>(i + 1)) == expect[i]) << i + 1;
  EXPECT_TRUE(tau2000().a(6) == tau2000().a(2) * tau2000().a(3));
}

TEST(Tau, LargerValues) {
  const auto& t = tau2000();
  EXPECT_TRUE(t.a(100) == big("37534859200"));
  EXPECT_TRUE(t.a(997) == big("-21400415987399554"));
  EXPECT_TRUE(t.a(1000) == big("-30328412970240000"));
  EXPECT_TRUE(t.a(1999) == big("-1159913672832202000"));
  EXPECT_TRUE(t.a(2000) == big("-354382910343168000"));
}

TEST(Tau, WideValuesNeedInt128) {
  const auto t = tau_series(100000);
  EXPECT_TRUE(t.a(100000) == big("-2983637890141033828147200000"));
  EXPECT_TRUE(t.a(59049) == big("179090148438649827109433637"));
  EXPECT_EQ(to_string(t.a(100000)), "-2983637890141033828147200000");
}

TEST(Tau, NormalizationAndRange) {
  const auto& t = tau2000();
  EXPECT_DOUBLE_EQ(t(1), 1.0);
  EXPECT_NEAR(t(2), -24.0 / std::pow(2.0, 5.5), 1e-15);
  EXPECT_THROW(t(2001), Error);
  EXPECT_THROW(t(0), Error);
}

TEST(Tau, HeckeAndMultiplicativity) {
  const auto t = tau_series(10000);
  const auto h = hecke_recursion_check(t, 10000);
  EXPECT_GT(h.checked, 0u);
  EXPECT_EQ(h.failures, 0u);
  EXPECT_EQ(multiplicativity_check(t, 2000).failures, 0u);
  for (i64 m = 2; m < 60; ++m)
    for (i64 n = 2; m * n <= 10000 && n < 60; ++n)
      if (std::gcd(m, n) == 1) EXPECT_NEAR(t(m * n), t(m) * t(n), 1e-12 * std::max(1.0, std::abs(t(m * n))));
}

TEST(Tau, HeckeCatchesCorruption) {
  auto t = tau_series(500);
  t.raw[8] += 1;
  EXPECT_GT(hecke_recursion_check(t, 500).failures, 0u);
}

TEST(Tau, Deligne) {
  const auto t = tau_series(20000);
  const auto d = deligne_check(t, 20000);
  EXPECT_EQ(d.failures, 0u);
  EXPECT_LE(d.max_ratio, 1.0);
}

TEST(Tau, MeanSquare) {
  const auto t = tau_series(100000);
  const auto r = ramanujan_average_check(t, {1000, 10000, 100000});
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.rows.front()["sum"].get<double>(), 1.0);
  double prev = 0.0;
  for (const auto& row : r.rows) {
    EXPECT_GE(row["sum"].get<double>(), prev);
    prev = row["sum"].get<double>();
  }
}

TEST(Tau, Wilton) {
  const auto& t = tau2000();
  const auto r = wilton_scan(t, 600, 64);
  EXPECT_TRUE(r.pass);
  const double at_zero = std::abs(twisted_window_sum(t, 600, 0.0, standard_v_window()));
  EXPECT_LE(at_zero, 20.0 * std::pow(600.0, 0.6));
  EXPECT_EQ(twisted_window_sum(t, 600, 0.3, standard_v_window().times(0.0)), cplx(0.0, 0.0));
}

TEST(Coefficients, ZeroedMultiples) {
  const auto z = with_multiples_zeroed(tau2000(), 5);
  EXPECT_EQ(z(5), 0.0);
  EXPECT_EQ(z(1000), 0.0);
  EXPECT_EQ(z(7), tau2000()(7));
  EXPECT_EQ(z.source, CoefficientSource::DeltaPPrimitive);
}

TEST(Coefficients, RandomMultiplicativeIsSeeded) {
  const auto a = random_multiplicative(3000, 11), b = random_multiplicative(3000, 11), c = random_multiplicative(3000, 12);
  EXPECT_EQ(a.lambda, b.lambda);
  EXPECT_NE(a.lambda, c.lambda);
  for (i64 m = 1; m < 50; ++m)
    for (i64 n = 1; n < 50; ++n) EXPECT_EQ(a(m * n), a(m) * a(n));
}

TEST(Coefficients, CacheRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "deltakit_cache_test";
  std::filesystem::remove_all(dir);
  const auto built = load_or_build_tau(3000, dir);
  ASSERT_TRUE(std::filesystem::exists(dir / "tau_weight12.txt"));
  const auto loaded = load_or_build_tau(2000, dir);
  EXPECT_EQ(loaded.nmax, 2000);
  for (i64 n = 1; n <= 2000; ++n) EXPECT_TRUE(loaded.a(n) == built.a(n));
  EXPECT_EQ(loaded.lambda, tau2000().lambda);
  std::filesystem::remove_all(dir);
}

TEST(Coefficients, CorruptCacheIsRebuilt) {
  const auto dir = std::filesystem::temp_directory_path() / "deltakit_cache_corrupt";
  std::filesystem::remove_all(dir);
  load_or_build_tau(500, dir);
  const auto path = dir / "tau_weight12.txt";
  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const auto pos = text.find("\n2 -24\n");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 7, "\n2 -25\n");
  std::ofstream(path) << text;
  const auto t = load_or_build_tau(500, dir);
  EXPECT_TRUE(t.a(2) == -24);
  std::filesystem::remove_all(dir);
}
