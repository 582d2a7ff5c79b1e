#include <gtest/gtest.h>

#include "deltakit/modarith.hpp"

using namespace deltakit;

TEST(ModInverse, SmallExamples) {
  EXPECT_EQ(mod_inverse(Residue(1, 7)).value(), 1);
  EXPECT_EQ(mod_inverse(Residue(2, 5)).value(), 3);
  EXPECT_EQ(mod_inverse(Residue(3, 7)).value(), 5);
  EXPECT_EQ(inverse_mod(-1, 11), 10);
}

TEST(ModInverse, NonUnitThrows) {
  try {
    mod_inverse(Residue(6, 9));
    FAIL() << "expected NonInvertible";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonInvertible);
  }
}

TEST(ModInverse, InvolutionAndProduct) {
  for (i64 q = 2; q <= 120; ++q)
    for (i64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const Residue r(a, q);
      const Residue inv = mod_inverse(r);
      EXPECT_EQ(mod_inverse(inv), r);
      EXPECT_EQ(mul_mod(a, inv.value(), q), 1 % q);
    }
}

TEST(PrimitiveRoot, SmallestGenerator) {
  EXPECT_EQ(find_primitive_root(3), 2);
  EXPECT_EQ(find_primitive_root(5), 2);
  EXPECT_EQ(find_primitive_root(7), 3);
  EXPECT_EQ(find_primitive_root(23), 5);
  EXPECT_EQ(find_primitive_root(41), 6);
  EXPECT_THROW(find_primitive_root(9), Error);
}

TEST(PrimitiveRoot, BruteForceOrder) {
  for (i64 p = 3; p < 300; ++p) {
    if (!is_prime(p)) continue;
    const i64 g = find_primitive_root(p);
    i64 x = 1, order = 0;
    do {
      x = x * g % p;
      ++order;
    } while (x != 1);
    EXPECT_EQ(order, p - 1) << p;
    for (i64 h = 2; h < g; ++h) {
      i64 y = 1, ord = 0;
      do {
        y = y * h % p;
        ++ord;
      } while (y != 1);
      EXPECT_LT(ord, p - 1) << "smaller generator " << h << " mod " << p;
    }
  }
}

TEST(Characters, BasicValues) {
  const auto ctx = make_prime_context(5);
  const DirichletCharacter principal(ctx, 0), quad(ctx, 2);
  for (i64 x = 1; x < 5; ++x) EXPECT_EQ(char_eval(principal, x), cplx(1.0, 0.0));
  EXPECT_NEAR(std::abs(char_eval(quad, 2) - cplx(-1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(char_eval(quad, 4) - cplx(1.0, 0.0)), 0.0, 1e-15);
  for (const auto& chi : all_characters(ctx)) {
    EXPECT_NEAR(std::abs(chi(1) - cplx(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_EQ(chi(0), cplx(0.0, 0.0));
    EXPECT_EQ(chi(10), cplx(0.0, 0.0));
  }
}

TEST(Characters, QuadraticMatchesSquares) {
  for (i64 p : {3, 5, 7, 11, 13, 101}) {
    const DirichletCharacter quad(make_prime_context(p), (p - 1) / 2);
    std::vector<bool> square(static_cast<std::size_t>(p), false);
    for (i64 x = 1; x < p; ++x) square[static_cast<std::size_t>(x * x % p)] = true;
    for (i64 x = 1; x < p; ++x)
      EXPECT_NEAR(quad(x).real(), square[static_cast<std::size_t>(x)] ? 1.0 : -1.0, 1e-12);
    EXPECT_EQ(quad.parity(), p % 4 == 1 ? 1 : -1);
  }
}

TEST(Characters, Orthogonality) {
  for (i64 p = 3; p <= 200; ++p) {
    if (!is_prime(p)) continue;
    for (const auto& chi : all_characters(make_prime_context(p))) {
      cplx s = 0.0;
      for (i64 x = 1; x < p; ++x) s += chi(x);
      const cplx expect = chi.is_principal() ? cplx(static_cast<double>(p - 1), 0.0) : cplx(0.0, 0.0);
      EXPECT_LE(std::abs(s - expect), 1e-10 * static_cast<double>(p)) << p << " " << chi.index();
    }
  }
}

TEST(Characters, CompleteMultiplicativity) {
  for (i64 p = 3; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    for (const auto& chi : all_characters(make_prime_context(p)))
      for (i64 a = 1; a < p; ++a)
        for (i64 b = 1; b < p; ++b) EXPECT_LE(std::abs(chi(a * b) - chi(a) * chi(b)), 1e-12);
  }
}

TEST(Arithmetic, MultiplicativeFunctions) {
  EXPECT_EQ(euler_phi(1), 1);
  EXPECT_EQ(euler_phi(36), 12);
  EXPECT_EQ(euler_phi(97), 96);
  EXPECT_EQ(mobius(1), 1);
  EXPECT_EQ(mobius(6), 1);
  EXPECT_EQ(mobius(12), 0);
  EXPECT_EQ(mobius(30), -1);
  EXPECT_EQ(divisors(12), (std::vector<i64>{1, 2, 3, 4, 6, 12}));
}
