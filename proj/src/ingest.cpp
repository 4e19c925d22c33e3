#include "photonstat/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "photonstat/errors.hpp"

namespace photonstat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_count(std::string_view s, std::int64_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

}  // namespace

ArrivalSample read_times(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<double> times;
  std::string line;
  std::size_t line_no = 0;
  bool seen_record = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    double value = 0.0;
    if (!parse_double(body, value)) {
      // A single leading non-numeric line is the optional header.
      if (!seen_record && times.empty() && line_no == 1) continue;
      throw ParseError(path, line_no, "not a number: '" + std::string(body) + "'");
    }
    seen_record = true;
    if (!std::isfinite(value))
      throw ParseError(path, line_no, "non-finite time");
    if (value < 0.0)
      throw ParseError(path, line_no, "negative time");
    times.push_back(value);
  }
  if (times.empty()) throw ParseError(path, 0, "empty input: no time records");
  return ArrivalSample(std::move(times));
}

void write_times(const std::string& path, const ArrivalSample& sample) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "time_ns\n";
  char buf[40];
  for (double t : sample.times()) {
    std::snprintf(buf, sizeof buf, "%.17g", t);
    out << buf << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

HistogramData read_histogram(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  HistogramData h;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const std::size_t comma = body.find(',');
    if (comma == std::string_view::npos)
      throw ParseError(path, line_no, "expected 'time_ns,count'");
    const std::string_view time_field = trim(body.substr(0, comma));
    const std::string_view count_field = trim(body.substr(comma + 1));
    double center = 0.0;
    std::int64_t count = 0;
    if (!parse_double(time_field, center) || !parse_count(count_field, count)) {
      if (h.bin_centers.empty() && line_no == 1) continue;  // optional header
      throw ParseError(path, line_no, "malformed record: '" + std::string(body) + "'");
    }
    if (!std::isfinite(center) || center < 0.0)
      throw ParseError(path, line_no, "bin center must be finite and >= 0");
    if (count < 0) throw FormatError(path + ": negative count at line " +
                                     std::to_string(line_no));
    h.bin_centers.push_back(center);
    h.counts.push_back(count);
  }
  if (h.bin_centers.empty()) throw ParseError(path, 0, "empty input: no bins");
  if (h.bin_centers.size() < 2)
    throw FormatError(path + ": need at least two bins to define a bin width");

  std::vector<double> diffs(h.bin_centers.size() - 1);
  for (std::size_t i = 0; i + 1 < h.bin_centers.size(); ++i) {
    diffs[i] = h.bin_centers[i + 1] - h.bin_centers[i];
    if (diffs[i] <= 0.0)
      throw FormatError(path + ": bin centers must be strictly increasing");
  }
  std::vector<double> sorted_diffs = diffs;
  std::nth_element(sorted_diffs.begin(),
                   sorted_diffs.begin() + sorted_diffs.size() / 2,
                   sorted_diffs.end());
  h.bin_width = sorted_diffs[sorted_diffs.size() / 2];
  for (double d : diffs) {
    if (std::abs(d - h.bin_width) > 1e-6 * h.bin_width)
      throw FormatError(path + ": non-uniform bin spacing");
  }

  std::int64_t total = 0;
  for (std::int64_t c : h.counts) total += c;
  if (total < 1) throw DegenerateDataError(path + ": histogram has no counts");
  return h;
}

HistogramData subtract_baseline(const HistogramData& h, double tail_fraction) {
  if (!(tail_fraction > 0.0) || tail_fraction > 0.5)
    throw std::domain_error("tail_fraction must lie in (0, 0.5]");
  const std::size_t bins = h.counts.size();
  const std::size_t tail =
      static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(bins)));
  double sum = 0.0;
  for (std::size_t i = bins - tail; i < bins; ++i)
    sum += static_cast<double>(h.counts[i]);
  const double baseline = sum / static_cast<double>(tail);

  HistogramData out = h;
  out.baseline_removed = h.baseline_removed + baseline;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < bins; ++i) {
    const double adjusted = std::max(0.0, static_cast<double>(h.counts[i]) - baseline);
    out.counts[i] = std::llround(adjusted);
    total += out.counts[i];
  }
  if (total < 1)
    throw DegenerateDataError("baseline removal left no counts");
  return out;
}

WeightedSample histogram_to_weighted(const HistogramData& h) {
  WeightedSample ws;
  ws.times = h.bin_centers;
  ws.weights.reserve(h.counts.size());
  for (std::int64_t c : h.counts) ws.weights.push_back(static_cast<double>(c));
  return ws;
}

double weighted_mle_scale(const WeightedSample& ws) {
  if (ws.times.size() != ws.weights.size())
    throw std::domain_error("times and weights must have equal length");
  double weighted_sum = 0.0;
  double weight_total = 0.0;
  for (std::size_t i = 0; i < ws.times.size(); ++i) {
    if (ws.weights[i] < 0.0) throw std::domain_error("weights must be >= 0");
    weighted_sum += ws.weights[i] * ws.times[i];
    weight_total += ws.weights[i];
  }
  if (weight_total <= 0.0)
    throw DegenerateDataError("total weight is zero");
  return weighted_sum / weight_total;
}

ArrivalSample expand_to_sample(const WeightedSample& ws) {
  if (ws.times.size() != ws.weights.size())
    throw std::domain_error("times and weights must have equal length");
  std::vector<double> times;
  for (std::size_t i = 0; i < ws.times.size(); ++i) {
    const double w = ws.weights[i];
    if (w < 0.0) throw std::domain_error("weights must be >= 0");
    const std::int64_t reps = std::llround(w);
    if (std::abs(w - static_cast<double>(reps)) > 1e-9)
      throw std::domain_error("expansion requires integer weights");
    times.insert(times.end(), static_cast<std::size_t>(reps), ws.times[i]);
  }
  if (times.empty())
    throw DegenerateDataError("expansion produced an empty sample");
  return ArrivalSample(std::move(times));
}

}  // namespace photonstat
