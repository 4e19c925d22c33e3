#pragma once

// File ingestion for photon-arrival data: raw arrival-time files,
// binned histograms, dark-count baseline removal, and the adapters that
// turn binned counts into estimator-ready samples.
//
// Formats (UTF-8 text, LF or CRLF, times in ns):
//   arrival times: one decimal number per line, optional "time_ns" header;
//   histogram:     CSV "time_ns,count", optional header, integer counts.

#include <cstdint>
#include <string>
#include <vector>

#include "photonstat/sampling.hpp"

namespace photonstat {

/// Uniformly binned arrival-time histogram. Centers are strictly
/// increasing with spacing equal to bin_width (within 1e-6 relative,
/// the read tolerance); counts are non-negative integers summing to >= 1.
struct HistogramData {
  std::vector<double> bin_centers;   // ns
  std::vector<std::int64_t> counts;
  double bin_width = 0.0;            // ns
  double baseline_removed = 0.0;     // total per-bin count subtracted so far
};

/// Binned data as (time, weight) pairs; weights are counts.
struct WeightedSample {
  std::vector<double> times;    // ns
  std::vector<double> weights;
};

/// Reads an arrival-time file. Rejects negative or non-finite entries
/// with the offending line number; an empty file is a ParseError.
ArrivalSample read_times(const std::string& path);

/// Writes a sample in the arrival-time format with 17 significant
/// digits, enough for a bit-exact read-back.
void write_times(const std::string& path, const ArrivalSample& sample);

/// Reads a two-column histogram file. bin_width is the median of
/// consecutive center differences; spacing off by more than 1e-6
/// relative, negative counts, or fewer than two bins are FormatErrors.
HistogramData read_histogram(const std::string& path);

/// Estimates the dark-count baseline as the mean count of the last
/// ceil(tail_fraction * #bins) bins, subtracts it from every bin,
/// clamps at zero and re-rounds to integers. tail_fraction must lie in
/// (0, 0.5]. Throws DegenerateDataError if nothing is left.
HistogramData subtract_baseline(const HistogramData& h, double tail_fraction);

/// Bin centers as times, counts as weights.
WeightedSample histogram_to_weighted(const HistogramData& h);

/// Closed-form weighted scale MLE: sum(w*t) / sum(w), the binned
/// analogue of the sample mean.
double weighted_mle_scale(const WeightedSample& ws);

/// Expands integer-weighted times into a flat sample (each time
/// repeated `weight` times), the exact-data route for the estimators.
ArrivalSample expand_to_sample(const WeightedSample& ws);

}  // namespace photonstat
