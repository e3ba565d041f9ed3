#pragma once

#include <string>
#include <vector>

#include "finegrain/harness.hpp"

namespace finegrain {

inline constexpr const char* kToolVersion = "0.1.0";

// Bit-stable serialization: sorted keys, 17 significant digits, LF endings.
std::string report_to_json(const TrialReport& report);
std::string reports_to_json(const std::vector<TrialReport>& reports);
TrialReport report_from_json(const std::string& json_text);

std::string variance_curve_to_csv(const VarianceCurve& curve);
std::string gap_histogram_to_csv(const GapHistogram& hist);

// Refuses empty results; writes atomically (no partial file on error).
void write_report_file(const std::vector<TrialReport>& reports, const std::string& path);
void write_text_file(const std::string& text, const std::string& path);

std::string format_real(double v);  // 17 significant digits

}  // namespace finegrain
