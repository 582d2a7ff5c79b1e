#pragma once

// Per-check verification records and their JSON-lines / CSV encodings.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace deltakit {

using ojson = nlohmann::ordered_json;

struct VerificationReport {
  std::string check;
  std::string anchor;
  ojson params = ojson::object();
  std::optional<std::complex<double>> lhs;
  std::optional<std::complex<double>> rhs;
  double abs_error = 0.0;
  double rel_error = 0.0;
  std::optional<double> bound_ratio;
  bool pass = false;
  std::optional<double> wall_time;
  std::string note;
  /// Sweep tables; each row is a flat object with the same keys.
  std::vector<ojson> rows;

  /// Fills lhs/rhs and the derived errors.
  void set_sides(std::complex<double> left, std::complex<double> right) {
    lhs = left;
    rhs = right;
    abs_error = std::abs(left - right);
    const double scale = std::max(std::abs(left), std::abs(right));
    rel_error = scale > 0.0 ? abs_error / scale : 0.0;
  }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

namespace detail {

inline ojson complex_to_json(std::complex<double> z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

inline std::complex<double> complex_from_json(const ojson& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_cell(const ojson& v) {
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_null()) return "";
  return csv_escape(v.dump());
}

}  // namespace detail

inline ojson to_json(const VerificationReport& r) {
  ojson j;
  j["check"] = r.check;
  j["anchor"] = r.anchor;
  j["params"] = r.params;
  j["lhs"] = r.lhs ? detail::complex_to_json(*r.lhs) : ojson(nullptr);
  j["rhs"] = r.rhs ? detail::complex_to_json(*r.rhs) : ojson(nullptr);
  j["abs_error"] = r.abs_error;
  j["rel_error"] = r.rel_error;
  j["bound_ratio"] = r.bound_ratio ? ojson(*r.bound_ratio) : ojson(nullptr);
  j["pass"] = r.pass;
  if (r.wall_time) j["wall_time"] = *r.wall_time;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.rows.empty()) j["rows"] = r.rows;
  return j;
}

inline VerificationReport report_from_json(const ojson& j) {
  VerificationReport r;
  r.check = j.at("check").get<std::string>();
  r.anchor = j.at("anchor").get<std::string>();
  r.params = j.at("params");
  if (!j.at("lhs").is_null()) r.lhs = detail::complex_from_json(j.at("lhs"));
  if (!j.at("rhs").is_null()) r.rhs = detail::complex_from_json(j.at("rhs"));
  r.abs_error = j.at("abs_error").get<double>();
  r.rel_error = j.at("rel_error").get<double>();
  if (!j.at("bound_ratio").is_null()) r.bound_ratio = j.at("bound_ratio").get<double>();
  r.pass = j.at("pass").get<bool>();
  if (j.contains("wall_time")) r.wall_time = j.at("wall_time").get<double>();
  if (j.contains("note")) r.note = j.at("note").get<std::string>();
  if (j.contains("rows")) r.rows = j.at("rows").get<std::vector<ojson>>();
  return r;
}

/// One compact JSON object per line.
inline std::string to_json_line(const VerificationReport& r) { return to_json(r).dump() + "\n"; }

/// CSV: sweep rows are emitted as tables (prefixed by the check name); reports
/// without rows collapse to one summary line each.
inline std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  out << "check,anchor,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_error,rel_error,bound_ratio,pass\n";
  auto num = [](double v) { return detail::csv_cell(ojson(v)); };
  for (const auto& r : reports) {
    out << detail::csv_escape(r.check) << ',' << detail::csv_escape(r.anchor) << ','
        << detail::csv_escape(r.params.dump()) << ',';
    out << (r.lhs ? num(r.lhs->real()) + "," + num(r.lhs->imag()) : std::string(","));
    out << ',';
    out << (r.rhs ? num(r.rhs->real()) + "," + num(r.rhs->imag()) : std::string(","));
    out << ',' << num(r.abs_error) << ',' << num(r.rel_error) << ','
        << (r.bound_ratio ? num(*r.bound_ratio) : std::string()) << ',' << (r.pass ? "true" : "false")
        << '\n';
  }
  for (const auto& r : reports) {
    if (r.rows.empty()) continue;
    out << '\n' << "# " << r.check << '\n';
    std::vector<std::string> keys;
    for (const auto& [key, value] : r.rows.front().items()) keys.push_back(key);
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << detail::csv_escape(keys[i]);
    out << '\n';
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < keys.size(); ++i)
        out << (i ? "," : "") << (row.contains(keys[i]) ? detail::csv_cell(row.at(keys[i])) : "");
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace deltakit
