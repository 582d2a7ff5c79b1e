#pragma once

// Truncated Taylor series ("jets") with runtime order. c[i] is the i-th
// Taylor coefficient, so the i-th derivative is i! c[i].

#include <cmath>
#include <cstddef>
#include <vector>

namespace deltakit {

class Jet {
 public:
  Jet() = default;
  explicit Jet(std::size_t order, double value = 0.0) : c_(order + 1, 0.0) { c_[0] = value; }

  /// The identity map t -> t expanded at t0.
  static Jet variable(std::size_t order, double t0) {
    Jet j(order, t0);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  /// t -> t^a expanded at t0 > 0 (real exponent).
  static Jet power(std::size_t order, double t0, double a) {
    Jet j(order);
    double binom = 1.0;
    for (std::size_t i = 0; i <= order; ++i) {
      j.c_[i] = binom * std::pow(t0, a - static_cast<double>(i));
      binom *= (a - static_cast<double>(i)) / static_cast<double>(i + 1);
    }
    return j;
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  double value() const { return c_[0]; }

  double derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return c_[k] * f;
  }

  /// d/dt; the order drops by one.
  Jet differentiate() const {
    Jet d(order() == 0 ? 0 : order() - 1);
    if (order() == 0) return d;
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) d.c_[i] = c_[i + 1] * static_cast<double>(i + 1);
    return d;
  }

  Jet truncated(std::size_t order) const {
    Jet t(order);
    for (std::size_t i = 0; i <= order && i < c_.size(); ++i) t.c_[i] = c_[i];
    return t;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t i = 0; i < c_.size() && i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t i = 0; i < c_.size() && i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const std::size_t n = std::min(a.order(), b.order());
    Jet r(n);
    for (std::size_t k = 0; k <= n; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    const std::size_t n = std::min(a.order(), b.order());
    Jet r(n);
    for (std::size_t k = 0; k <= n; ++k) {
      double acc = a.c_[k];
      for (std::size_t i = 1; i <= k; ++i) acc -= b.c_[i] * r.c_[k - i];
      r.c_[k] = acc / b.c_[0];
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    Jet r(a.order());
    r.c_[0] = std::exp(a.c_[0]);
    for (std::size_t k = 1; k <= a.order(); ++k) {
      double acc = 0.0;
      for (std::size_t i = 1; i <= k; ++i) acc += static_cast<double>(i) * a.c_[i] * r.c_[k - i];
      r.c_[k] = acc / static_cast<double>(k);
    }
    return r;
  }

  friend Jet reciprocal(const Jet& a) { return Jet(a.order(), 1.0) / a; }

 private:
  std::vector<double> c_ = std::vector<double>(1, 0.0);
};

}  // namespace deltakit
