#pragma once

// Seeded random-variate generation for exponential and two-stage decay
// times, and construction of Type II censored views.

#include <cstdint>
#include <cstddef>
#include <random>
#include <vector>

#include "photonstat/dist.hpp"

namespace photonstat {

/// A set of non-negative decay times in nanoseconds. Order-agnostic:
/// sortedness is never assumed. Non-empty, all entries finite and >= 0.
class ArrivalSample {
 public:
  explicit ArrivalSample(std::vector<double> times);

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }

 private:
  std::vector<double> times_;
};

/// The r smallest order statistics of an n-sample: a non-decreasing
/// sequence of length r plus the original sample size n, 1 <= r <= n.
class CensoredView {
 public:
  CensoredView(std::vector<double> ordered_times, std::size_t n);

  const std::vector<double>& ordered_times() const noexcept { return ordered_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return ordered_.size(); }

 private:
  std::vector<double> ordered_;
  std::size_t n_;
};

/// Deterministic generator: identical seed gives an identical draw
/// stream, bit-exact. The engine is pinned to std::mt19937_64 here and
/// nowhere else; uniforms take 53 bits per draw.
///
/// Single-owner mutable state: not safe for concurrent use. Parallel
/// workflows derive one generator per work item via `split`.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform draw on (0, 1]. U = 0 is excluded so -beta*ln(U) stays
  /// finite; U = 1 occurs and maps to a decay time of exactly 0.
  double next_uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53;
  }

  /// Independent generator for stream index `stream`, derived from this
  /// generator's seed. Deterministic; does not advance this generator.
  SeededRng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Inverse-CDF transform: maps a uniform draw u in (0, 1] to the decay
/// time -beta * ln(u).
double exp_variate_from_uniform(double u, double beta);

/// n i.i.d. exponential decay times with scale beta (ns).
ArrivalSample sample_exp(std::size_t n, double beta, SeededRng& rng);

/// n i.i.d. two-stage decay times; each draw is the sum of a
/// non-radiative and a radiative exponential stage (non-radiative
/// uniform drawn first).
ArrivalSample sample_hypoexp(std::size_t n, const HypoexpParams& p, SeededRng& rng);

/// Sorts the sample ascending (stable, so ingested duplicates keep
/// their relative order) and keeps the r smallest values. The input is
/// not modified.
CensoredView type2_censor(const ArrivalSample& sample, std::size_t r);

}  // namespace photonstat
