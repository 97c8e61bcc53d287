#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "takde/batch.hpp"
#include "takde/errors.hpp"

namespace takde {

// One CSV row of the stream format: header "batch,value", then one
// observation per line. Batch indices are contiguous from 0.
struct StreamRecord {
  std::int64_t batch = 0;
  double value = 0.0;
};

namespace detail {

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

template <class T>
T parse_number(std::string_view token, const char* what, std::size_t line_no) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw FormatError(std::string("malformed ") + what + " '" + std::string(token) + "'", line_no);
  return value;
}

}  // namespace detail

inline StreamRecord parse_stream_record(std::string_view line, std::size_t line_no) {
  const std::size_t comma = line.find(',');
  if (comma == std::string_view::npos) throw FormatError("expected 'batch,value'", line_no);
  StreamRecord rec;
  rec.batch = detail::parse_number<std::int64_t>(line.substr(0, comma), "batch index", line_no);
  rec.value = detail::parse_number<double>(line.substr(comma + 1), "value", line_no);
  return rec;
}

// Reads a whole stream. Enforces the header, per-row syntax, and contiguous
// batch indices starting at 0; violations carry the offending line number.
inline std::vector<Batch> read_stream_csv(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;

  if (!std::getline(in, raw)) throw FormatError("missing 'batch,value' header", 1);
  ++line_no;
  if (detail::strip_cr(raw) != "batch,value")
    throw FormatError("header must be 'batch,value'", line_no);

  std::vector<Batch> batches;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::strip_cr(raw);
    if (line.empty()) continue;
    const StreamRecord rec = parse_stream_record(line, line_no);
    if (batches.empty()) {
      if (rec.batch != 0) throw FormatError("batch indices must start at 0", line_no);
      batches.push_back(Batch{0, {}});
    } else if (rec.batch == batches.back().t + 1) {
      batches.push_back(Batch{rec.batch, {}});
    } else if (rec.batch != batches.back().t) {
      throw FormatError("non-contiguous batch index " + std::to_string(rec.batch), line_no);
    }
    batches.back().points.push_back(rec.value);
  }
  return batches;
}

inline std::vector<Batch> read_stream_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path.string());
  return read_stream_csv(in);
}

// Writes a full file through a temporary sibling and renames it into place,
// so a failed run never leaves a truncated output behind.
template <class WriteBody>
void atomic_write_file(const std::filesystem::path& path, WriteBody&& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file: " + tmp.string());
    body(out);
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw NumericError("cannot format value");
  return std::string(buf, ptr);
}

inline void write_stream_csv(std::ostream& out, std::span<const Batch> batches) {
  out << "batch,value\n";
  for (const Batch& batch : batches)
    for (double x : batch.points) out << batch.t << ',' << format_double(x) << '\n';
}

inline void write_stream_csv_file(const std::filesystem::path& path,
                                  std::span<const Batch> batches) {
  atomic_write_file(path, [&](std::ostream& out) { write_stream_csv(out, batches); });
}

// Per-batch output record of a run: window size, fitted parameters, and the
// optional evaluation products.
struct RunRecord {
  std::int64_t t = 0;
  int window_size = 0;
  std::vector<double> sigmas;
  std::vector<double> alphas;
  std::optional<double> mean_log_lik;
  std::optional<std::vector<double>> density;  // in grid order
};

inline nlohmann::json run_record_json(const RunRecord& rec) {
  nlohmann::json j{{"t", rec.t},
                   {"window_size", rec.window_size},
                   {"sigmas", rec.sigmas},
                   {"alphas", rec.alphas}};
  if (rec.mean_log_lik) j["mean_log_lik"] = *rec.mean_log_lik;
  if (rec.density) j["density"] = *rec.density;
  return j;
}

// Evaluation grid flag "lo:hi:count" with count >= 2.
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;

  static GridSpec parse(std::string_view text) {
    const std::size_t first = text.find(':');
    const std::size_t second = first == std::string_view::npos
                                   ? std::string_view::npos
                                   : text.find(':', first + 1);
    if (first == std::string_view::npos || second == std::string_view::npos)
      throw InvalidArgumentError("grid must be lo:hi:count");
    GridSpec spec;
    try {
      spec.lo = detail::parse_number<double>(text.substr(0, first), "grid lo", 0);
      spec.hi =
          detail::parse_number<double>(text.substr(first + 1, second - first - 1), "grid hi", 0);
      spec.count = detail::parse_number<int>(text.substr(second + 1), "grid count", 0);
    } catch (const FormatError& err) {
      throw InvalidArgumentError(err.what());  // a bad flag value, not bad data
    }
    if (!(spec.hi > spec.lo)) throw InvalidArgumentError("grid needs hi > lo");
    if (spec.count < 2) throw InvalidArgumentError("grid needs count >= 2");
    return spec;
  }

  std::vector<double> points() const {
    std::vector<double> xs(static_cast<std::size_t>(count));
    const double step = (hi - lo) / double(count - 1);
    for (int i = 0; i < count; ++i) xs[std::size_t(i)] = lo + step * double(i);
    return xs;
  }
};

}  // namespace takde
