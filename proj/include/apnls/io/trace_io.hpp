#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "apnls/nls/trace.hpp"

namespace apnls::io {

// One CSV row per trace sample. Doubles are written in shortest round-trip
// form, so reading a file back reproduces the values bit for bit.
struct TraceRow {
  double t = 0.0;
  double a_norm = 0.0;
  double l2_norm = 0.0;
  double re_zero_mode = 0.0;
  double im_zero_mode = 0.0;
  double discarded_mass = 0.0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

inline constexpr const char* kTraceHeader = "t,a_norm,l2_norm,re_zero_mode,im_zero_mode,discarded_mass";

std::vector<TraceRow> trace_rows(const SolutionTrace& trace);

std::string format_double(double v);

// Written to a temporary file and renamed into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

void write_trace_csv(const std::filesystem::path& path, const SolutionTrace& trace);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

}  // namespace apnls::io
