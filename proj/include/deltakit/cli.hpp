#pragma once

// Command-line front end: one subcommand per verification family, reports as
// JSON lines (default) or CSV.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "deltakit/autforms.hpp"
#include "deltakit/charsums.hpp"
#include "deltakit/circle.hpp"
#include "deltakit/error.hpp"
#include "deltakit/oscint.hpp"
#include "deltakit/pipeline.hpp"
#include "deltakit/report.hpp"

namespace deltakit::cli {

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"charsum-cp", "charsum-factor", "charsum-corr", "jutila", "voronoi",
                                                 "integrals",  "taucheck",       "pipeline",     "all"};
  return names;
}

/// Everything a run depends on. Empty lists mean "the subcommand's defaults".
struct RunConfig {
  std::string subcommand;
  std::vector<i64> p;
  std::optional<i64> pmax;  // charsum-cp: 199, charsum-corr: 61
  std::vector<double> q;
  std::vector<i64> n;
  std::vector<double> eta;
  i64 cmax = 10;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string format = "json";
  std::string out;
  std::optional<double> tolerance;
  bool exhaustive = false;
  std::size_t samples = 0;  // 0: exhaustive where feasible
  std::string delta_rule = "q^-1.5";
  int nodes = 64;
  std::string f_source = "delta-p-primitive";
  bool timing = false;

  unsigned effective_workers() const {
    return workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  }
};

namespace detail {

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

template <class T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

inline std::vector<i64> odd_primes_between(i64 lo, i64 hi) {
  std::vector<i64> out;
  for (i64 p = std::max<i64>(lo, 3); p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

inline void require_odd_primes(const std::vector<i64>& ps) {
  for (i64 p : ps)
    if (p < 3 || !is_prime(p)) fail(ErrorKind::Usage, "--p expects odd primes, got " + std::to_string(p));
}

inline CoefficientSource parse_source(const std::string& s) {
  if (s == "delta") return CoefficientSource::Delta;
  if (s == "delta-p-primitive") return CoefficientSource::DeltaPPrimitive;
  if (s == "random") return CoefficientSource::RandomMultiplicative;
  fail(ErrorKind::Usage, "unknown --f-source '" + s + "'");
}

/// Shared tau table, built once per process.
inline const CuspFormCoefficients& tau_table() {
  static const CuspFormCoefficients table = load_or_build_tau(100000);
  return table;
}

}  // namespace detail

inline std::string show_config(const RunConfig& c) {
  std::ostringstream os;
  os << "subcommand = " << c.subcommand << "\n"
     << "p = " << detail::join(c.p) << "\n"
     << "pmax = " << (c.pmax ? std::to_string(*c.pmax) : std::string()) << "\n"
     << "q = " << detail::join(c.q) << "\n"
     << "n = " << detail::join(c.n) << "\n"
     << "eta = " << detail::join(c.eta) << "\n"
     << "cmax = " << c.cmax << "\n"
     << "seed = " << c.seed << "\n"
     << "workers = " << c.workers << "\n"
     << "format = " << c.format << "\n"
     << "out = " << c.out << "\n"
     << "tolerance = " << (c.tolerance ? std::to_string(*c.tolerance) : std::string()) << "\n"
     << "exhaustive = " << (c.exhaustive ? "true" : "false") << "\n"
     << "samples = " << c.samples << "\n"
     << "delta-rule = " << c.delta_rule << "\n"
     << "nodes = " << c.nodes << "\n"
     << "f-source = " << c.f_source << "\n"
     << "cache-dir = " << cache_directory().string() << "\n";
  return os.str();
}

using Reports = std::vector<VerificationReport>;

/// Runs `fn` and stamps the wall time on its reports when requested.
inline void timed(Reports& out, const RunConfig& cfg, const std::function<Reports()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Reports rs = fn();
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (auto& r : rs) {
    if (cfg.timing) r.wall_time = dt / static_cast<double>(rs.size());
    out.push_back(std::move(r));
  }
}

inline Reports run_charsum_cp(const RunConfig& cfg) {
  Reports out;
  const auto ps = detail::or_default(cfg.p, {3, 5, 7, 11, 13});
  detail::require_odd_primes(ps);
  const auto qs = detail::or_default(cfg.q, {1.0, 2.0, 3.0, 5.0, 7.0});
  for (i64 p : ps)
    for (double qd : qs) {
      const auto q = static_cast<i64>(qd);
      if (std::gcd(q, p) != 1) continue;
      timed(out, cfg, [&] { return Reports{cp_closed_form_audit(p, q)}; });
    }
  for (i64 p : detail::odd_primes_between(3, cfg.pmax.value_or(199))) {
    const bool exhaustive = cfg.exhaustive || (cfg.samples == 0 && p <= 61);
    const std::size_t samples = cfg.samples ? cfg.samples : 10000;
    timed(out, cfg, [&] { return Reports{weil_report(p, exhaustive, samples, cfg.seed)}; });
  }
  return out;
}

inline Reports run_charsum_factor(const RunConfig& cfg) {
  Reports out;
  const auto ps = detail::or_default(cfg.p, {3, 5, 7, 11, 13});
  detail::require_odd_primes(ps);
  const auto qs = detail::or_default(cfg.q, {2.0, 3.0, 5.0, 7.0});
  for (i64 p : ps)
    for (double qd : qs) {
      const auto q = static_cast<i64>(qd);
      if (q < 1 || std::gcd(q, p) != 1) continue;
      timed(out, cfg, [&] { return Reports{factorization_grid(p, q, 20)}; });
    }
  timed(out, cfg, [&] { return Reports{ramanujan_agreement_check(200, 400)}; });
  return out;
}

inline Reports run_charsum_corr(const RunConfig& cfg) {
  Reports out;
  const auto ps = detail::or_default(cfg.p, detail::odd_primes_between(5, cfg.pmax.value_or(61)));
  detail::require_odd_primes(ps);
  CorrelationScanMode mode;
  mode.exhaustive = cfg.exhaustive || cfg.samples == 0;
  mode.samples = cfg.samples;
  mode.seed = cfg.seed;
  for (i64 p : ps) {
    timed(out, cfg, [&] { return Reports{correlation_bound_scan(p, mode, cfg.effective_workers())}; });
    timed(out, cfg, [&] { return Reports{correlation_case_audit(p)}; });
  }
  return out;
}

inline Reports run_jutila(const RunConfig& cfg) {
  Reports out;
  const auto Qs = detail::or_default(cfg.q, {20.0, 40.0, 80.0, 160.0});
  const i64 p = cfg.p.empty() ? 3 : cfg.p.front();
  detail::require_odd_primes({p});
  const auto rule = DeltaRule::parse(cfg.delta_rule);
  timed(out, cfg, [&] { return Reports{jutila_bound_scan(Qs, rule, p)}; });
  return out;
}

inline Reports run_voronoi(const RunConfig& cfg) {
  Reports out;
  const auto Ns = detail::or_default(cfg.n, {250, 500, 1000});
  VoronoiOptions opt;
  opt.workers = cfg.effective_workers();
  if (cfg.tolerance) opt.tolerance = *cfg.tolerance;
  const auto& tau = detail::tau_table();
  for (i64 N : Ns)
    for (i64 c = 1; c <= cfg.cmax; ++c)
      timed(out, cfg, [&] { return voronoi_sweep(c, tau, N, voronoi_window(), opt); });
  return out;
}

inline Reports run_integrals(const RunConfig& cfg) {
  Reports out;
  const auto ps = detail::or_default(cfg.p, {3, 5, 7});
  detail::require_odd_primes(ps);
  std::vector<i64> qs;
  for (double q : detail::or_default(cfg.q, {11.0, 13.0, 17.0})) qs.push_back(static_cast<i64>(q));
  const double N = static_cast<double>(cfg.n.empty() ? 1000 : cfg.n.front());
  DecayScanOptions opt;
  if (cfg.tolerance) opt.level = *cfg.tolerance;
  timed(out, cfg, [&] { return Reports{w_envelope_report(12)}; });
  timed(out, cfg, [&] { return Reports{decay_onset_scan(ps, qs, N, opt, cfg.effective_workers())}; });
  for (i64 p : ps)
    for (i64 q : qs) timed(out, cfg, [&] { return Reports{stationary_phase_scan(p, q, N)}; });
  return out;
}

inline Reports run_taucheck(const RunConfig& cfg) {
  Reports out;
  const auto& tau = detail::tau_table();
  const auto Ns = detail::or_default(cfg.n, {1000, 3000, 10000, 30000, 100000});
  timed(out, cfg, [&] { return Reports{hecke_report(tau, 10000)}; });
  timed(out, cfg, [&] { return Reports{deligne_report(tau, 100000)}; });
  timed(out, cfg, [&] { return Reports{ramanujan_average_check(tau, Ns)}; });
  timed(out, cfg, [&] { return Reports{wilton_scan(tau, 1000, 512)}; });
  return out;
}

inline Reports run_pipeline(const RunConfig& cfg) {
  Reports out;
  const auto ps = detail::or_default(cfg.p, {3, 5});
  detail::require_odd_primes(ps);
  const auto Ns = detail::or_default(cfg.n, {1000, 2000});
  const auto etas = detail::or_default(cfg.eta, {0.1, 0.2});
  const auto source = detail::parse_source(cfg.f_source);
  const auto& tau = detail::tau_table();
  for (i64 p : ps) {
    const auto coeffs = make_pipeline_coefficients(tau, p, source, cfg.seed);
    for (i64 N : Ns)
      for (double eta : etas) {
        auto P = make_pipeline_params(p, N, eta, cfg.nodes);
        P.workers = cfg.effective_workers();
        timed(out, cfg, [&] { return Reports{approximation_gap_check(P, coeffs)}; });
      }
    auto small = make_pipeline_params(p, 200, etas.front(), cfg.nodes);
    small.workers = cfg.effective_workers();
    const double tol = cfg.tolerance.value_or(1e-8);
    timed(out, cfg, [&] { return Reports{s_tilde_oracle_check(small, coeffs, tol)}; });
    timed(out, cfg, [&] { return Reports{s_tilde_indicator_check(small, coeffs.f, 301, tol)}; });
  }
  return out;
}

inline Reports run_subcommand(const RunConfig& cfg) {
  static const std::map<std::string, Reports (*)(const RunConfig&)> table = {
      {"charsum-cp", run_charsum_cp}, {"charsum-factor", run_charsum_factor}, {"charsum-corr", run_charsum_corr},
      {"jutila", run_jutila},         {"voronoi", run_voronoi},               {"integrals", run_integrals},
      {"taucheck", run_taucheck},     {"pipeline", run_pipeline}};
  if (cfg.subcommand == "all") {
    Reports out;
    for (const auto& name : subcommands()) {
      if (name == "all") continue;
      auto part = table.at(name)(cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  const auto it = table.find(cfg.subcommand);
  if (it == table.end()) fail(ErrorKind::Usage, "unknown subcommand '" + cfg.subcommand + "'");
  return it->second(cfg);
}

inline std::string render(const Reports& reports, const std::string& format) {
  if (format == "csv") return to_csv(reports);
  std::string s;
  for (const auto& r : reports) s += to_json_line(r);
  return s;
}

/// Parses `args` (without the program name). Returns the exit code: 0 when
/// every report passes, 1 on any failure, 2 on a usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  bool show = false;
  CLI::App app{"deltakit: numerical checks for a delta-method subconvexity argument", "deltakit_cli"};
  app.set_config("--config", "", "key = value file; flags override it");
  app.add_option("subcommand", cfg.subcommand, "check family")->required()->check(CLI::IsMember(subcommands()));
  app.add_option("--p", cfg.p, "primes p (comma separated)")->delimiter(',');
  app.add_option("--pmax", cfg.pmax, "largest p for prime sweeps");
  app.add_option("--q", cfg.q, "moduli q, or Q values for jutila")->delimiter(',');
  app.add_option("--n", cfg.n, "lengths N")->delimiter(',');
  app.add_option("--eta", cfg.eta, "pipeline exponents")->delimiter(',');
  app.add_option("--cmax", cfg.cmax, "largest Voronoi modulus c");
  app.add_option("--seed", cfg.seed, "RNG seed for sampled scans");
  app.add_option("--workers", cfg.workers, "worker threads; 0 means all cores");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "write reports to this file");
  app.add_option("--tolerance", cfg.tolerance, "override the check tolerance");
  auto* ex = app.add_flag("--exhaustive", cfg.exhaustive, "exhaustive scans");
  app.add_option("--samples", cfg.samples, "sampled scans with K samples")->excludes(ex);
  app.add_option("--delta-rule", cfg.delta_rule, "delta as a function of Q, e.g. q^-1.5");
  app.add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes for the x-average");
  app.add_option("--f-source", cfg.f_source, "delta, delta-p-primitive or random")
      ->check(CLI::IsMember({"delta", "delta-p-primitive", "random"}));
  app.add_flag("--timing", cfg.timing, "record wall time (output no longer byte-stable)");
  app.add_flag("--show-config", show, "print the resolved configuration and exit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (show) {
    out << show_config(cfg);
    return 0;
  }
  if (cfg.nodes < 2) {
    err << "usage error: --nodes must be >= 2\n";
    return 2;
  }

  Reports reports;
  try {
    reports = run_subcommand(cfg);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::Usage ? 2 : 1;
  }
  const std::string text = render(reports, cfg.format);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out << "\n";
      return 1;
    }
    f << text;
  }
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return ok ? 0 : 1;
}

}  // namespace deltakit::cli
