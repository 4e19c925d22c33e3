#include "photonstat/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace photonstat {

namespace {

// splitmix64 finalizer, used only to derive per-stream seeds.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

ArrivalSample::ArrivalSample(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw std::domain_error("arrival sample must be non-empty");
  for (double t : times_) {
    if (!std::isfinite(t) || t < 0.0)
      throw std::domain_error("arrival times must be finite and >= 0");
  }
}

CensoredView::CensoredView(std::vector<double> ordered_times, std::size_t n)
    : ordered_(std::move(ordered_times)), n_(n) {
  if (ordered_.empty() || ordered_.size() > n_)
    throw std::domain_error("censored view requires 1 <= r <= n");
  for (std::size_t i = 0; i < ordered_.size(); ++i) {
    if (!std::isfinite(ordered_[i]) || ordered_[i] < 0.0)
      throw std::domain_error("ordered times must be finite and >= 0");
    if (i > 0 && ordered_[i] < ordered_[i - 1])
      throw std::domain_error("ordered times must be non-decreasing");
  }
}

SeededRng SeededRng::split(std::uint64_t stream) const {
  return SeededRng(mix64(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
}

double exp_variate_from_uniform(double u, double beta) {
  if (!(u > 0.0) || u > 1.0)
    throw std::domain_error("uniform draw must lie in (0, 1]");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::domain_error("scale beta must be positive");
  return -beta * std::log(u);
}

ArrivalSample sample_exp(std::size_t n, double beta, SeededRng& rng) {
  if (n == 0) throw std::domain_error("sample size n must be >= 1");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::domain_error("scale beta must be positive");
  std::vector<double> times;
  times.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    times.push_back(exp_variate_from_uniform(rng.next_uniform(), beta));
  return ArrivalSample(std::move(times));
}

ArrivalSample sample_hypoexp(std::size_t n, const HypoexpParams& p, SeededRng& rng) {
  if (n == 0) throw std::domain_error("sample size n must be >= 1");
  const double beta_n = 1.0 / p.lambda_n();
  const double beta_r = 1.0 / p.lambda_r();
  std::vector<double> times;
  times.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double stage_n = exp_variate_from_uniform(rng.next_uniform(), beta_n);
    const double stage_r = exp_variate_from_uniform(rng.next_uniform(), beta_r);
    times.push_back(stage_n + stage_r);
  }
  return ArrivalSample(std::move(times));
}

CensoredView type2_censor(const ArrivalSample& sample, std::size_t r) {
  if (r == 0 || r > sample.size())
    throw std::domain_error("censoring rank r must satisfy 1 <= r <= n");
  std::vector<double> sorted = sample.times();
  std::stable_sort(sorted.begin(), sorted.end());
  sorted.resize(r);
  return CensoredView(std::move(sorted), sample.size());
}

}  // namespace photonstat
