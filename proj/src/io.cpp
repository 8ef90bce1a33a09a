// SPDX-License-Identifier: Apache-2.0

#include "ssw/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace ssw {

void write_trace_csv(std::ostream& out, const EvolutionTrace& trace) {
  out << "tau,full_norm,stable_norm,unstable_coeff\n";
  char buf[160];
  for (int i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", trace.taus[i],
                  trace.full_norm[i], trace.stable_norm[i], trace.unstable_coeff[i]);
    out << buf;
  }
}

void write_trace_csv_file(const std::string& path, const EvolutionTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_trace_csv(out, trace);
}

Json trace_meta_json(const EvolutionTrace& trace) {
  Json j;
  j["kind"] = trace.meta.kind;
  j["d"] = trace.meta.d;
  j["p"] = trace.meta.p;
  j["epsilon"] = trace.meta.epsilon;
  j["N"] = trace.meta.N;
  j["dt"] = trace.meta.dt;
  j["T"] = trace.meta.T;
  j["T0"] = trace.meta.T0;
  j["samples"] = trace.size();
  j["aborted"] = trace.aborted;
  return j;
}

Json spectrum_json(const SpectrumReport& report) {
  Json j;
  j["threshold"] = report.threshold;
  j["resolutions"] = report.resolutions;
  Json unstable = Json::array();
  for (const auto& z : report.analytic_unstable) unstable.push_back({{"re", z.real()}, {"im", z.imag()}});
  j["analytic_unstable"] = unstable;
  Json heads = Json::array();
  for (const auto& z : report.analytic_stable_heads) heads.push_back({{"re", z.real()}, {"im", z.imag()}});
  j["analytic_stable_heads"] = heads;
  Json eigs = Json::array();
  for (const auto& rec : report.records) {
    Json e;
    e["re"] = rec.value.real();
    e["im"] = rec.value.imag();
    e["source"] = "matrix";
    e["persistent"] = rec.persistent;
    e["drift"] = rec.drift;
    if (rec.matched_family > 0) {
      e["matched_to"] = rec.matched_value;
      e["matched_family"] = rec.matched_family;
      e["match_distance"] = rec.match_distance;
    } else {
      e["matched_to"] = nullptr;
    }
    eigs.push_back(e);
  }
  j["eigenvalues"] = eigs;
  return j;
}

Json rate_report_json(const RateReport& report) {
  Json j;
  j["mode"] = report.mode == RateMode::full ? "full" : "lower_regularity";
  j["expected"] = report.expected;
  Json entries = Json::array();
  for (const auto& e : report.per_norm) {
    Json item;
    item["norm"] = e.label;
    item["fitted_rate"] = e.applicable ? Json(e.fitted) : Json(nullptr);
    item["applicable"] = e.applicable;
    item["window"] = {e.window.first, e.window.second};
    item["passed"] = e.passed;
    entries.push_back(item);
  }
  j["per_norm"] = entries;
  j["all_passed"] = report.all_passed();
  return j;
}

Json check_results_json(const std::vector<CheckResult>& results) {
  Json j = Json::array();
  for (const auto& r : results) {
    j.push_back({{"name", r.name}, {"measured", r.measured}, {"threshold", r.threshold},
                 {"pass", r.pass}});
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string run_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%08llx", static_cast<unsigned long long>(h & 0xffffffffull));
  return buf;
}

}  // namespace ssw
