#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace orbital_loc {

inline constexpr const char* kReportSchema = "orbital-loc/1";

struct CheckRecord {
  std::string name;
  std::complex<double> lhs, rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// |lhs - rhs| < tol
inline CheckRecord abs_check(std::string name, std::complex<double> lhs, std::complex<double> rhs, double tol) {
  CheckRecord r{std::move(name), lhs, rhs};
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / std::max(std::abs(rhs), 1e-300);
  r.tolerance = tol;
  r.pass = r.abs_err < tol;
  return r;
}

/// |lhs - rhs| / |rhs| < tol
inline CheckRecord rel_check(std::string name, std::complex<double> lhs, std::complex<double> rhs, double tol) {
  auto r = abs_check(std::move(name), lhs, rhs, tol);
  r.pass = r.rel_err < tol;
  return r;
}

/// value >= bound; abs_err holds the shortfall.
inline CheckRecord lower_bound_check(std::string name, double value, double bound) {
  CheckRecord r{std::move(name), value, bound};
  r.abs_err = std::max(0.0, bound - value);
  r.rel_err = r.abs_err / std::max(std::abs(bound), 1e-300);
  r.tolerance = 0.0;
  r.pass = value >= bound;
  return r;
}

/// Monte Carlo estimate within k standard errors.
inline CheckRecord mc_check(std::string name, std::complex<double> estimate, std::complex<double> exact,
                            double stderr_, double k) {
  return abs_check(std::move(name), estimate, exact, k * stderr_);
}

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> records;
  nlohmann::json environment = nlohmann::json::object();
  nlohmann::json data = nlohmann::json::object();
  std::string error;

  void add(CheckRecord r) { records.push_back(std::move(r)); }

  bool pass() const {
    return error.empty() && std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
  }

  void sort_records() {
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  }

  nlohmann::json to_json() const {
    auto sorted = *this;
    sorted.sort_records();
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : sorted.records)
      recs.push_back({{"name", r.name},
                      {"lhs", {r.lhs.real(), r.lhs.imag()}},
                      {"rhs", {r.rhs.real(), r.rhs.imag()}},
                      {"abs_err", r.abs_err},
                      {"rel_err", r.rel_err},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}});
    nlohmann::json j{{"schema", kReportSchema}, {"suite", suite},          {"pass", pass()},
                     {"environment", environment}, {"records", recs}, {"data", data}};
    if (!error.empty()) j["error"] = error;
    return j;
  }

  std::string to_csv() const {
    auto sorted = *this;
    sorted.sort_records();
    std::string out = "suite,name,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tolerance,pass\n";
    char buf[512];
    for (const auto& r : sorted.records) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.lhs.real(), r.lhs.imag(),
                    r.rhs.real(), r.rhs.imag(), r.abs_err, r.rel_err, r.tolerance, r.pass ? 1 : 0);
      out += suite + ",\"" + r.name + "\"" + buf;
    }
    if (!error.empty()) out += suite + ",error,,,,,,,,0\n";
    return out;
  }
};

/// Concatenation of several suites; records are prefixed with the suite name.
inline VerificationReport merge_reports(std::string name, const std::vector<VerificationReport>& parts) {
  VerificationReport out;
  out.suite = std::move(name);
  nlohmann::json suites = nlohmann::json::object();
  for (const auto& p : parts) {
    for (auto r : p.records) {
      r.name = p.suite + "/" + r.name;
      out.add(std::move(r));
    }
    suites[p.suite] = {{"pass", p.pass()}, {"environment", p.environment}, {"data", p.data}};
    if (!p.error.empty()) {
      suites[p.suite]["error"] = p.error;
      out.error += (out.error.empty() ? "" : "; ") + p.suite + ": " + p.error;
    }
  }
  out.data = {{"suites", suites}};
  return out;
}

}  // namespace orbital_loc
