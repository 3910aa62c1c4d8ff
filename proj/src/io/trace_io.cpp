#include "apnls/io/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "apnls/core/errors.hpp"

namespace apnls::io {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format double");
  return std::string(buf, ptr);
}

std::vector<TraceRow> trace_rows(const SolutionTrace& trace) {
  std::vector<TraceRow> rows;
  rows.reserve(trace.size());
  for (const TraceSample& s : trace.samples) {
    rows.push_back({s.t, s.a_norm, s.l2_norm, s.zero_mode.real(), s.zero_mode.imag(), s.discarded_mass});
  }
  return rows;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_trace_csv(const std::filesystem::path& path, const SolutionTrace& trace) {
  std::string text = std::string(kTraceHeader) + "\n";
  for (const TraceRow& r : trace_rows(trace)) {
    text += format_double(r.t) + ',' + format_double(r.a_norm) + ',' + format_double(r.l2_norm) + ',' +
            format_double(r.re_zero_mode) + ',' + format_double(r.im_zero_mode) + ',' +
            format_double(r.discarded_mass) + '\n';
  }
  write_text_atomic(path, text);
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw Error(path.string() + ": unexpected trace header");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[6];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < 6; ++c) {
      auto [next, ec] = std::from_chars(p, end, v[c]);
      if (ec != std::errc()) throw Error(path.string() + ": malformed row '" + line + "'");
      p = next;
      if (c < 5) {
        if (p == end || *p != ',') throw Error(path.string() + ": malformed row '" + line + "'");
        ++p;
      }
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return rows;
}

}  // namespace apnls::io
