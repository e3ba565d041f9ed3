#include "finegrain/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace finegrain {

using nlohmann::json;

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// Hand-rolled emitter: sorted keys, %.17g reals, LF endings. nlohmann's
// shortest-round-trip double format would not honor the 17-digit contract.
void emit_stat(std::ostringstream& os, const StatEntry& s) {
  os << "{\"deviation\":" << format_real(s.deviation)
     << ",\"name\":" << json(s.name).dump()
     << ",\"pass\":" << (s.pass ? "true" : "false")
     << ",\"reference\":" << format_real(s.reference)
     << ",\"threshold\":" << format_real(s.threshold)
     << ",\"value\":" << format_real(s.value) << "}";
}

void emit_report(std::ostringstream& os, const TrialReport& r) {
  os << "{\"alpha\":" << format_real(r.alpha)
     << ",\"error\":" << json(r.error).dump()
     << ",\"generator\":" << json(r.generator).dump()
     << ",\"n\":" << r.n_points
     << ",\"ok\":" << (r.ok ? "true" : "false")
     << ",\"runtime_ms\":" << format_real(r.runtime_ms)
     << ",\"seed\":" << r.seed
     << ",\"spec\":" << json(r.spec).dump()
     << ",\"stats\":[";
  for (std::size_t i = 0; i < r.stats.size(); ++i) {
    if (i) os << ",";
    emit_stat(os, r.stats[i]);
  }
  os << "],\"version\":" << json(std::string(kToolVersion)).dump() << "}";
}

StatEntry stat_from_json(const json& j) {
  StatEntry s;
  s.name = j.at("name").get<std::string>();
  s.value = j.at("value").get<double>();
  s.reference = j.at("reference").get<double>();
  s.deviation = j.at("deviation").get<double>();
  s.threshold = j.at("threshold").get<double>();
  s.pass = j.at("pass").get<bool>();
  return s;
}

TrialReport report_from(const json& j) {
  TrialReport r;
  r.generator = j.at("generator").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.alpha = j.at("alpha").get<double>();
  r.spec = j.at("spec").get<std::string>();
  r.n_points = j.at("n").get<std::int64_t>();
  r.ok = j.at("ok").get<bool>();
  r.error = j.at("error").get<std::string>();
  r.runtime_ms = j.at("runtime_ms").get<double>();
  for (const auto& s : j.at("stats")) r.stats.push_back(stat_from_json(s));
  return r;
}

}  // namespace

std::string report_to_json(const TrialReport& report) {
  std::ostringstream os;
  emit_report(os, report);
  os << "\n";
  return os.str();
}

std::string reports_to_json(const std::vector<TrialReport>& reports) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) os << ",\n";
    emit_report(os, reports[i]);
  }
  os << "]\n";
  return os.str();
}

TrialReport report_from_json(const std::string& json_text) {
  return report_from(json::parse(json_text));
}

std::string variance_curve_to_csv(const VarianceCurve& curve) {
  std::ostringstream os;
  os << "N,variance,stderr\n";
  for (std::size_t i = 0; i < curve.n_values.size(); ++i)
    os << curve.n_values[i] << "," << format_real(curve.variances[i]) << ","
       << format_real(curve.std_errors[i]) << "\n";
  return os.str();
}

std::string gap_histogram_to_csv(const GapHistogram& hist) {
  std::ostringstream os;
  os << "s,G,poisson\n";
  for (std::size_t i = 0; i < hist.s_grid.size(); ++i)
    os << format_real(hist.s_grid[i]) << "," << format_real(hist.cdf[i]) << ","
       << format_real(poisson_gap_cdf(hist.s_grid[i])) << "\n";
  return os.str();
}

void write_text_file(const std::string& text, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("write_text_file: cannot open " + tmp);
    os << text;
    if (!os) throw std::runtime_error("write_text_file: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_report_file(const std::vector<TrialReport>& reports, const std::string& path) {
  if (reports.empty())
    throw std::invalid_argument("write_report_file: refusing to write empty results");
  write_text_file(reports_to_json(reports), path);
}

}  // namespace finegrain
