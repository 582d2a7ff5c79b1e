#pragma once

// Exact modular arithmetic, primitive roots and Dirichlet characters to an
// odd prime modulus.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "deltakit/error.hpp"

namespace deltakit {

using i64 = std::int64_t;
using cplx = std::complex<double>;

/// Least nonnegative residue of a modulo q (q > 0).
constexpr i64 mod(i64 a, i64 q) {
  const i64 r = a % q;
  return r < 0 ? r + q : r;
}

constexpr i64 mul_mod(i64 a, i64 b, i64 q) {
  return static_cast<i64>((static_cast<__int128>(mod(a, q)) * mod(b, q)) % q);
}

constexpr i64 pow_mod(i64 base, i64 exp, i64 q) {
  i64 result = 1 % q;
  base = mod(base, q);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return result;
}

constexpr bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (i64 d = 5; d * d <= n; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

struct PrimePower {
  i64 prime;
  int exponent;
};

inline std::vector<PrimePower> factorize(i64 n) {
  require(n >= 1, ErrorKind::PreconditionViolated, "factorize needs n >= 1");
  std::vector<PrimePower> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline i64 euler_phi(i64 n) {
  i64 result = n;
  for (const auto& [prime, exponent] : factorize(n)) result = result / prime * (prime - 1);
  return result;
}

inline int mobius(i64 n) {
  int sign = 1;
  for (const auto& [prime, exponent] : factorize(n)) {
    if (exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> small, large;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// A residue class a mod q, stored as its least nonnegative representative.
class Residue {
 public:
  Residue(i64 value, i64 modulus) : modulus_(modulus) {
    require(modulus >= 1, ErrorKind::PreconditionViolated, "modulus must be positive");
    value_ = mod(value, modulus);
  }

  i64 value() const noexcept { return value_; }
  i64 modulus() const noexcept { return modulus_; }

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  i64 value_;
  i64 modulus_;
};

/// Inverse of a unit residue (the overline ā throughout the character-sum code).
inline Residue mod_inverse(const Residue& a) {
  i64 old_r = a.value(), r = a.modulus();
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  if (old_r != 1 && a.modulus() != 1)
    fail(ErrorKind::NonInvertible,
         std::to_string(a.value()) + " mod " + std::to_string(a.modulus()) + " has no inverse");
  return Residue(old_s, a.modulus());
}

inline i64 inverse_mod(i64 a, i64 q) { return mod_inverse(Residue(a, q)).value(); }

/// Smallest generator of the unit group mod p.
inline i64 find_primitive_root(i64 p) {
  require(is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  const auto factors = factorize(p - 1);
  for (i64 g = 2; g < p; ++g) {
    bool generates = true;
    for (const auto& f : factors) {
      if (pow_mod(g, (p - 1) / f.prime, p) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  fail(ErrorKind::InternalMismatch, "no primitive root found");
}

/// e(x) = exp(2 pi i x).
inline cplx e(double x) {
  const double angle = 2.0 * std::numbers::pi * x;
  return {std::cos(angle), std::sin(angle)};
}

/// e(k/q) for integer k, reduced exactly before the trigonometric call.
inline cplx e_frac(i64 k, i64 q) {
  return e(static_cast<double>(mod(k, q)) / static_cast<double>(q));
}

/// Table of e(j/q) for 0 <= j < q.
class RootsOfUnity {
 public:
  explicit RootsOfUnity(i64 q) : q_(q), table_(static_cast<std::size_t>(q)) {
    require(q >= 1, ErrorKind::PreconditionViolated, "order must be positive");
    for (i64 j = 0; j < q; ++j) table_[static_cast<std::size_t>(j)] = e_frac(j, q);
  }

  i64 order() const noexcept { return q_; }
  const cplx& operator()(i64 k) const { return table_[static_cast<std::size_t>(mod(k, q_))]; }

 private:
  i64 q_;
  std::vector<cplx> table_;
};

/// An odd prime together with its smallest primitive root and discrete-log
/// table. Immutable after construction.
class PrimeContext {
 public:
  explicit PrimeContext(i64 p) : p_(p) {
    require(is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    require(p >= 3, ErrorKind::PreconditionViolated, "prime context needs an odd prime");
    g0_ = find_primitive_root(p);
    dlog_.assign(static_cast<std::size_t>(p), -1);
    power_.resize(static_cast<std::size_t>(p - 1));
    i64 x = 1;
    for (i64 j = 0; j < p - 1; ++j) {
      power_[static_cast<std::size_t>(j)] = x;
      dlog_[static_cast<std::size_t>(x)] = j;
      x = mul_mod(x, g0_, p);
    }
    additive_ = std::make_shared<RootsOfUnity>(p);
    multiplicative_ = std::make_shared<RootsOfUnity>(p - 1);
  }

  i64 p() const noexcept { return p_; }
  i64 primitive_root() const noexcept { return g0_; }

  /// Index of x base g0; -1 when p | x.
  i64 dlog(i64 x) const { return dlog_[static_cast<std::size_t>(mod(x, p_))]; }
  i64 power(i64 j) const { return power_[static_cast<std::size_t>(mod(j, p_ - 1))]; }

  /// e(k/p)
  const cplx& additive(i64 k) const { return (*additive_)(k); }
  /// e(k/(p-1))
  const cplx& multiplicative(i64 k) const { return (*multiplicative_)(k); }

 private:
  i64 p_;
  i64 g0_ = 0;
  std::vector<i64> dlog_;
  std::vector<i64> power_;
  std::shared_ptr<const RootsOfUnity> additive_;
  std::shared_ptr<const RootsOfUnity> multiplicative_;
};

/// chi_k(g0^j) = e(k j / (p-1)); zero on multiples of p.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const PrimeContext> ctx, i64 index)
      : ctx_(std::move(ctx)), index_(0) {
    require(ctx_ != nullptr, ErrorKind::PreconditionViolated, "null prime context");
    index_ = mod(index, ctx_->p() - 1);
  }

  const PrimeContext& context() const noexcept { return *ctx_; }
  i64 index() const noexcept { return index_; }
  i64 modulus() const noexcept { return ctx_->p(); }
  bool is_principal() const noexcept { return index_ == 0; }

  cplx operator()(i64 x) const {
    const i64 j = ctx_->dlog(x);
    if (j < 0) return {0.0, 0.0};
    return ctx_->multiplicative(mul_mod(index_, j, ctx_->p() - 1));
  }

  /// chi(-1), which is exactly +1 or -1.
  int parity() const noexcept { return index_ % 2 == 0 ? 1 : -1; }

  DirichletCharacter conjugate() const { return {ctx_, -index_}; }

 private:
  std::shared_ptr<const PrimeContext> ctx_;
  i64 index_;
};

inline cplx char_eval(const DirichletCharacter& chi, i64 x) { return chi(x); }

inline std::vector<DirichletCharacter> all_characters(const std::shared_ptr<const PrimeContext>& ctx) {
  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(ctx->p() - 1));
  for (i64 k = 0; k < ctx->p() - 1; ++k) out.emplace_back(ctx, k);
  return out;
}

inline std::shared_ptr<const PrimeContext> make_prime_context(i64 p) {
  return std::make_shared<const PrimeContext>(p);
}

}  // namespace deltakit
