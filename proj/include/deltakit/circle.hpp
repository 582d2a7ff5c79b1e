#pragma once

// Jutila's approximant to the indicator of [0,1]: an L-normalized overlay of
// intervals of radius delta centred at reduced fractions d/q, q in a moduli set.
// The approximant is piecewise constant, so every integral here is exact up to
// floating summation.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltakit/error.hpp"
#include "deltakit/modarith.hpp"
#include "deltakit/report.hpp"

namespace deltakit {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

enum class ModuliMode { Primes, ProductOfPrimeSets };

struct ModuliSet {
  std::vector<i64> moduli;  // sorted
  double Q = 0.0;
  i64 p_excluded = 0;
  i64 L = 0;  // sum of phi(q)
  ModuliMode mode = ModuliMode::Primes;
  std::vector<i64> first_factors;   // product mode only
  std::vector<i64> second_factors;  // product mode only
};

namespace detail {

inline std::vector<i64> primes_in(double lo, double hi, i64 excluded) {
  std::vector<i64> out;
  for (i64 n = static_cast<i64>(std::ceil(lo)); static_cast<double>(n) <= hi; ++n)
    if (is_prime(n) && n != excluded) out.push_back(n);
  return out;
}

}  // namespace detail

/// Primes in [Q, 2Q] coprime to p, or (product mode) products q1 q2 of primes
/// from disjoint dyadic blocks [Q1, 2Q1] and [Q2, 2Q2] with Q1 Q2 = Q.
inline ModuliSet build_moduli(double Q, i64 p, ModuliMode mode = ModuliMode::Primes,
                              std::optional<double> Q1 = std::nullopt) {
  require(Q >= 2.0, ErrorKind::PreconditionViolated, "Q must be >= 2");
  require(is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  ModuliSet set;
  set.Q = Q;
  set.p_excluded = p;
  set.mode = mode;
  if (mode == ModuliMode::Primes) {
    set.moduli = detail::primes_in(Q, 2.0 * Q, p);
  } else {
    // Q2 > 2 Q1 keeps the two dyadic blocks disjoint.
    const double q1 = Q1.value_or(std::sqrt(Q / 3.0));
    const double q2 = Q / q1;
    require(q1 >= 1.0 && q2 > 2.0 * q1 - 1e-12, ErrorKind::PreconditionViolated,
            "product mode needs Q2 > 2 Q1 for disjoint blocks");
    set.first_factors = detail::primes_in(q1, 2.0 * q1, p);
    set.second_factors = detail::primes_in(q2, 2.0 * q2, p);
    for (i64 a : set.first_factors)
      for (i64 b : set.second_factors)
        if (a != b) set.moduli.push_back(a * b);
    std::sort(set.moduli.begin(), set.moduli.end());
    set.moduli.erase(std::unique(set.moduli.begin(), set.moduli.end()), set.moduli.end());
  }
  require(!set.moduli.empty(), ErrorKind::EmptySet, "no admissible moduli");
  for (i64 q : set.moduli) set.L += euler_phi(q);
  return set;
}

/// Single-modulus or hand-built sets, mainly for degenerate cases.
inline ModuliSet moduli_from_list(std::vector<i64> moduli, i64 p_excluded = 0) {
  require(!moduli.empty(), ErrorKind::EmptySet, "no moduli");
  ModuliSet set;
  std::sort(moduli.begin(), moduli.end());
  set.moduli = std::move(moduli);
  set.Q = static_cast<double>(set.moduli.front());
  set.p_excluded = p_excluded;
  for (i64 q : set.moduli) {
    require(q >= 1, ErrorKind::PreconditionViolated, "moduli must be positive");
    set.L += euler_phi(q);
  }
  return set;
}

/// A function that is constant on [b_i, b_{i+1}) and zero outside
/// [b_0, b_last).
class PiecewiseConstantFn {
 public:
  PiecewiseConstantFn() = default;
  PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<double> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    require(breakpoints_.size() == values_.size() + 1 || (breakpoints_.empty() && values_.empty()),
            ErrorKind::PreconditionViolated, "need one value per interval");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
      require(breakpoints_[i - 1] < breakpoints_[i], ErrorKind::PreconditionViolated,
              "breakpoints must be strictly increasing");
  }

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t pieces() const noexcept { return values_.size(); }

  double support_lo() const { return breakpoints_.empty() ? 0.0 : breakpoints_.front(); }
  double support_hi() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back(); }

  double operator()(double x) const {
    if (breakpoints_.empty() || x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
  }

  double integral() const {
    CompensatedSum acc;
    for (std::size_t i = 0; i < values_.size(); ++i) acc.add(values_[i] * (breakpoints_[i + 1] - breakpoints_[i]));
    return acc.value();
  }

  /// Integral of f(x) e(freq x) over the real line, piece by piece in closed form.
  std::complex<double> fourier(double freq) const {
    std::complex<double> acc{};
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double lo = breakpoints_[i], hi = breakpoints_[i + 1], len = hi - lo;
      const double z = std::numbers::pi * freq * len;
      const double sinc = std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
      acc += values_[i] * len * sinc * e(freq * 0.5 * (lo + hi));
    }
    return acc;
  }

  /// Merges neighbouring pieces with equal values and trims zero ends.
  PiecewiseConstantFn normalized() const {
    std::vector<double> bp, val;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!val.empty() && val.back() == values_[i]) {
        bp.back() = breakpoints_[i + 1];
        continue;
      }
      if (val.empty()) bp.push_back(breakpoints_[i]);
      val.push_back(values_[i]);
      bp.push_back(breakpoints_[i + 1]);
    }
    while (!val.empty() && val.back() == 0.0) {
      val.pop_back();
      bp.pop_back();
    }
    std::size_t lead = 0;
    while (lead < val.size() && val[lead] == 0.0) ++lead;
    val.erase(val.begin(), val.begin() + static_cast<std::ptrdiff_t>(lead));
    bp.erase(bp.begin(), bp.begin() + static_cast<std::ptrdiff_t>(lead));
    if (val.empty()) bp.clear();
    return {std::move(bp), std::move(val)};
  }

  friend bool operator==(const PiecewiseConstantFn&, const PiecewiseConstantFn&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// True when Q^-2 < delta < Q^-1, the regime in which the approximation is meant.
inline bool delta_in_range(const ModuliSet& set, double delta) {
  return delta > 1.0 / (set.Q * set.Q) && delta < 1.0 / set.Q;
}

/// (1/(2 delta L)) sum_{q in set} sum_{d mod q, (d,q)=1} 1_[d/q - delta, d/q + delta].
inline PiecewiseConstantFn tilde_indicator(const ModuliSet& set, double delta) {
  require(delta > 0.0 && std::isfinite(delta), ErrorKind::InvalidDelta, "delta must be positive");
  require(set.L > 0, ErrorKind::EmptySet, "empty moduli set");
  std::vector<std::pair<double, int>> events;
  for (i64 q : set.moduli)
    for (i64 d = 0; d < q; ++d) {
      if (std::gcd(d, q) != 1) continue;
      const double centre = static_cast<double>(d) / static_cast<double>(q);
      events.emplace_back(centre - delta, +1);
      events.emplace_back(centre + delta, -1);
    }
  std::sort(events.begin(), events.end());
  const double height = 1.0 / (2.0 * delta * static_cast<double>(set.L));
  std::vector<double> bp, val;
  long depth = 0;
  for (std::size_t i = 0; i < events.size();) {
    const double x = events[i].first;
    while (i < events.size() && events[i].first == x) depth += events[i++].second;
    bp.push_back(x);
    if (i < events.size()) val.push_back(static_cast<double>(depth) * height);
  }
  return PiecewiseConstantFn(std::move(bp), std::move(val)).normalized();
}

/// Integral over R of |1_[0,1](x) - f(x)|^2, by merging breakpoints.
inline double l2_deviation_from_unit_indicator(const PiecewiseConstantFn& f) {
  std::vector<double> cuts = f.breakpoints();
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  CompensatedSum acc;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const double mid = 0.5 * (lo + hi);
    const double target = (mid >= 0.0 && mid < 1.0) ? 1.0 : 0.0;
    const double diff = target - f(mid);
    acc.add(diff * diff * (hi - lo));
  }
  return acc.value();
}

inline double l2_deviation(const ModuliSet& set, double delta) {
  return l2_deviation_from_unit_indicator(tilde_indicator(set, delta));
}

/// Measure of {x in [0,1] : f(x) = 0}; a lower bound for the L2 deviation.
inline double zero_measure_in_unit_interval(const PiecewiseConstantFn& f) {
  std::vector<double> cuts = f.breakpoints();
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  CompensatedSum acc;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(cuts[i], 0.0), hi = std::min(cuts[i + 1], 1.0);
    if (hi <= lo) continue;
    if (f(0.5 * (cuts[i] + cuts[i + 1])) == 0.0) acc.add(hi - lo);
  }
  return acc.value();
}

/// delta = coeff * Q^exponent, parsed from text such as "q^-1.5" or "0.5*Q^-1.5".
struct DeltaRule {
  double coeff = 1.0;
  double exponent = -1.5;

  double operator()(double Q) const { return coeff * std::pow(Q, exponent); }

  std::string text() const {
    nlohmann::json c = coeff, ex = exponent;
    return c.dump() + "*Q^" + ex.dump();
  }

  static DeltaRule parse(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    DeltaRule rule{1.0, 0.0};
    try {
      const auto caret = s.find('^');
      auto qpos = s.find_first_of("qQ");
      if (qpos == std::string::npos) {
        rule.coeff = std::stod(s);
        return rule;
      }
      if (qpos > 0) {
        std::string head = s.substr(0, qpos);
        if (!head.empty() && head.back() == '*') head.pop_back();
        rule.coeff = std::stod(head);
      }
      rule.exponent = caret == std::string::npos ? 1.0 : std::stod(s.substr(caret + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::Usage, "cannot parse delta rule '" + s + "'");
    }
    return rule;
  }
};

/// Exact-integration sweep of the L2 deviation against Q^2/(delta L^2).
inline VerificationReport jutila_bound_scan(const std::vector<double>& Q_list, const DeltaRule& rule, i64 p,
                                            ModuliMode mode = ModuliMode::Primes, double envelope = 10.0) {
  VerificationReport r;
  r.check = "jutila";
  r.anchor = "jutila-l2-approximation";
  r.params = {{"p", p},
              {"delta_rule", rule.text()},
              {"mode", mode == ModuliMode::Primes ? "primes" : "product"},
              {"envelope", envelope}};
  bool ok = true;
  double worst_ratio = 0.0, worst_mass_error = 0.0;
  for (double Q : Q_list) {
    const auto set = build_moduli(Q, p, mode);
    const double delta = rule(Q);
    const auto f = tilde_indicator(set, delta);
    const double mass = f.integral();
    const double deviation = l2_deviation_from_unit_indicator(f);
    const double zero_measure = zero_measure_in_unit_interval(f);
    const double L = static_cast<double>(set.L);
    const double bound = Q * Q / (delta * L * L);
    const double ratio = deviation / bound;
    const double mass_error = std::abs(mass - 1.0);
    worst_ratio = std::max(worst_ratio, ratio);
    worst_mass_error = std::max(worst_mass_error, mass_error);
    const bool row_ok = ratio <= envelope && mass_error <= 1e-12 && deviation >= zero_measure;
    ok = ok && row_ok;
    r.rows.push_back({{"Q", Q},
                      {"moduli", set.moduli.size()},
                      {"L", set.L},
                      {"L_over_Q2", L / (Q * Q)},
                      {"delta", delta},
                      {"delta_in_range", delta_in_range(set, delta)},
                      {"integral", mass},
                      {"deviation", deviation},
                      {"zero_measure", zero_measure},
                      {"bound", bound},
                      {"ratio", ratio},
                      {"pass", row_ok}});
  }
  r.bound_ratio = worst_ratio;
  r.abs_error = worst_mass_error;
  r.pass = ok;
  return r;
}

}  // namespace deltakit
