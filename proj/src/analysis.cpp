#include "photonstat/analysis.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "photonstat/dist.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/version.hpp"

namespace photonstat {

namespace {

// Runs fn(0..count-1), possibly on several workers. Results must be
// written to per-index slots; assembly order is the index order, so the
// output is identical for any thread count.
template <typename Fn>
void run_indexed(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

double ks_distance_to_exp(const std::vector<double>& sorted, double beta) {
  const ExpParam p = ExpParam::from_scale(beta);
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = exp_cdf(sorted[i], p);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

std::size_t row_rank(double ratio, std::size_t n) {
  return static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(n)));
}

// shortest representation that round-trips to the same double
std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string convention_name(StderrConvention c) {
  return c == StderrConvention::PlugInAtR ? "plug-in-at-r" : "reference-beta";
}

StderrConvention parse_convention(const std::string& name) {
  if (name == "plug-in-at-r" || name == "plug-in")
    return StderrConvention::PlugInAtR;
  if (name == "reference-beta" || name == "reference")
    return StderrConvention::ReferenceBeta;
  throw std::domain_error("unknown stderr convention: " + name);
}

double relative_error(double beta_hat, double beta_ref) {
  if (!std::isfinite(beta_ref) || beta_ref <= 0.0)
    throw std::domain_error("reference beta must be positive");
  if (!std::isfinite(beta_hat))
    throw std::domain_error("beta estimate must be finite");
  return 100.0 * std::abs(beta_hat - beta_ref) / beta_ref;
}

SweepReport censor_sweep(const ArrivalSample& sample,
                         const std::vector<double>& ratios, Method method,
                         std::optional<double> beta_ref,
                         StderrConvention convention,
                         SweepProvenance provenance, unsigned threads) {
  for (double ratio : ratios) {
    if (!(ratio > 0.0) || ratio > 1.0)
      throw std::domain_error("censoring ratio must lie in (0, 1]");
  }
  if (beta_ref && (!std::isfinite(*beta_ref) || *beta_ref <= 0.0))
    throw std::domain_error("reference beta must be positive");

  const std::size_t n = sample.size();
  SweepReport report;
  report.n = n;
  report.method = method;
  report.convention = convention;
  report.beta_ref = beta_ref;
  report.provenance = std::move(provenance);
  if (report.provenance.tool_version.empty())
    report.provenance.tool_version = std::string(kVersion);

  // One sort for the whole sweep; every row is a prefix of it.
  const CensoredView full = type2_censor(sample, n);

  double beta_full = 0.0;
  if (convention == StderrConvention::ReferenceBeta)
    beta_full = estimate_complete(sample, method).scale.beta_hat;

  report.rows.resize(ratios.size());
  run_indexed(ratios.size(), threads, [&](std::size_t i) {
    SweepRow& row = report.rows[i];
    row.ratio = ratios[i];
    row.r = row_rank(ratios[i], n);
    try {
      if (row.r < 1) throw std::domain_error("censoring rank rounds to zero");
      std::vector<double> prefix(full.ordered_times().begin(),
                                 full.ordered_times().begin() +
                                     static_cast<std::ptrdiff_t>(row.r));
      const CensoredView view(std::move(prefix), n);
      // MVUE rows report a standard error, so r >= 3 is required here.
      if (method == Method::MVUE && row.r < 3)
        throw std::domain_error("MVUE standard error requires r >= 3");
      const Estimates est = estimate_censored(view, method);
      row.beta_hat = est.scale.beta_hat;
      row.std_error =
          convention == StderrConvention::PlugInAtR
              ? est.scale.std_error
              : std::sqrt(scale_variance(method, beta_full, row.r));
      if (beta_ref) row.rel_error_pct = relative_error(row.beta_hat, *beta_ref);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return report;
}

ValidationSummary monte_carlo_validate(const McConfig& config, unsigned threads) {
  if (config.replicates < 100)
    throw std::domain_error("need at least 100 replicates");
  if (!std::isfinite(config.beta) || config.beta <= 0.0)
    throw std::domain_error("true beta must be positive");
  if (config.n < 1 || config.r < 1 || config.r > config.n)
    throw std::domain_error("need 1 <= r <= n");
  if (config.method == Method::ME && config.r < config.n)
    throw std::domain_error("method of moments is not defined for censored data");
  if (config.method == Method::MVUE && config.r < 3)
    throw std::domain_error("MVUE validation requires r >= 3");

  const bool track_rate = config.method == Method::MVUE;
  std::vector<double> values(config.replicates);
  const SeededRng base(config.seed);
  run_indexed(config.replicates, threads, [&](std::size_t i) {
    SeededRng rng = base.split(i);
    const ArrivalSample s = sample_exp(config.n, config.beta, rng);
    const Estimates est = config.r < config.n
                              ? estimate_censored(type2_censor(s, config.r),
                                                  config.method)
                              : estimate_complete(s, config.method);
    values[i] = track_rate ? est.rate.lambda_hat : est.scale.beta_hat;
  });

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double variance = ss / static_cast<double>(values.size() - 1);

  ValidationSummary out;
  out.parameter = track_rate ? "lambda" : "beta";
  out.empirical_mean = mean;
  out.empirical_variance = variance;
  if (track_rate) {
    const double lambda_true = 1.0 / config.beta;
    out.theoretical_mean = lambda_true;
    out.theoretical_variance = rate_variance(config.method, lambda_true, config.r);
  } else {
    out.theoretical_mean = config.beta;
    out.theoretical_variance = scale_variance(config.method, config.beta, config.r);
  }
  out.mean_tolerance =
      3.0 * std::sqrt(out.theoretical_variance /
                      static_cast<double>(config.replicates));
  out.variance_ratio = out.empirical_variance / out.theoretical_variance;
  out.mean_ok = std::abs(out.empirical_mean - out.theoretical_mean) <=
                out.mean_tolerance;
  out.variance_checked = config.replicates >= 5000;
  out.variance_ok =
      !out.variance_checked ||
      (out.variance_ratio >= 0.9 && out.variance_ratio <= 1.1);
  return out;
}

namespace {

void append_mc_checks(std::vector<SuiteCheck>& checks, const std::string& label,
                      const McConfig& config, unsigned threads) {
  const ValidationSummary s = monte_carlo_validate(config, threads);
  checks.push_back({label + ": mean bias of " + s.parameter + "-hat",
                    std::abs(s.empirical_mean - s.theoretical_mean),
                    s.mean_tolerance, "<=", s.mean_ok});
  if (s.variance_checked) {
    checks.push_back({label + ": variance ratio vs theory",
                      s.variance_ratio, 0.1, "|x - 1| <=",
                      std::abs(s.variance_ratio - 1.0) <= 0.1});
  }
}

void variance_suite(std::vector<SuiteCheck>& checks, std::uint64_t seed,
                    unsigned threads) {
  append_mc_checks(checks, "complete MLE, n=100, 5000 reps",
                   McConfig{7.17, 100, 100, 5000, seed, Method::MLE}, threads);
  append_mc_checks(checks, "censored MLE, n=1000 r=300, 5000 reps",
                   McConfig{7.17, 1000, 300, 5000, seed + 1, Method::MLE},
                   threads);
}

void unbiasedness_suite(std::vector<SuiteCheck>& checks, std::uint64_t seed,
                        unsigned threads) {
  append_mc_checks(checks, "complete MVUE, n=50, 10000 reps",
                   McConfig{1.0, 50, 50, 10000, seed, Method::MVUE}, threads);
  append_mc_checks(checks, "censored MLE, n=1000 r=300, 2000 reps",
                   McConfig{7.17, 1000, 300, 2000, seed + 1, Method::MLE},
                   threads);
}

void limit_suite(std::vector<SuiteCheck>& checks, std::uint64_t seed) {
  const double gap10 = hypoexp_limit_gap(HypoexpParams(10.0, 1.0));
  const double gap100 = hypoexp_limit_gap(HypoexpParams(100.0, 1.0));
  const double gap1000 = hypoexp_limit_gap(HypoexpParams(1000.0, 1.0));
  checks.push_back({"CDF gap at rate ratio 1000", gap1000, 1e-3, "<",
                    gap1000 < 1e-3});
  checks.push_back({"gap decreases from ratio 10 to 100", gap100, gap10, "<",
                    gap100 < gap10});
  checks.push_back({"gap decreases from ratio 100 to 1000", gap1000, gap100,
                    "<", gap1000 < gap100});

  const std::size_t n = 100000;
  SeededRng rng(seed);
  const ArrivalSample s = sample_hypoexp(n, HypoexpParams(1000.0, 1.0), rng);
  std::vector<double> sorted = s.times();
  std::sort(sorted.begin(), sorted.end());
  const double ks = ks_distance_to_exp(sorted, 1.0);
  const double bound = gap1000 + 1.36 / std::sqrt(static_cast<double>(n)) * 1.5;
  checks.push_back({"sampled KS distance to the radiative limit", ks, bound,
                    "<=", ks <= bound});
}

void memoryless_suite(std::vector<SuiteCheck>& checks, std::uint64_t seed) {
  SeededRng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double lambda = 0.1 + 2.9 * rng.next_uniform();
    const double x1 = 5.0 * rng.next_uniform();
    const double x2 = 5.0 * rng.next_uniform();
    worst = std::max(worst, std::abs(memoryless_residual(
                                x1, x2, ExpParam::from_rate(lambda))));
  }
  checks.push_back({"max |residual| over 1000 random triples", worst, 1e-12,
                    "<=", worst <= 1e-12});

  // Empirical conditional survival for (x1, x2) = (1, 1) on Exp(1) draws.
  SeededRng draw_rng(seed + 1);
  const std::size_t n = 1000000;
  std::size_t past_x1 = 0, past_both = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = exp_variate_from_uniform(draw_rng.next_uniform(), 1.0);
    if (t > 1.0) {
      ++past_x1;
      if (t > 2.0) ++past_both;
    }
  }
  const double expected = std::exp(-1.0);
  const double fraction =
      static_cast<double>(past_both) / static_cast<double>(past_x1);
  const double sigma = std::sqrt(expected * (1.0 - expected) /
                                 static_cast<double>(past_x1));
  checks.push_back({"conditional survival fraction vs exp(-1)",
                    std::abs(fraction - expected), 3.0 * sigma, "<=",
                    std::abs(fraction - expected) <= 3.0 * sigma});
}

}  // namespace

std::vector<SuiteCheck> run_validation_suite(const std::string& suite,
                                             std::uint64_t seed,
                                             unsigned threads) {
  std::vector<SuiteCheck> checks;
  if (suite == "variance") {
    variance_suite(checks, seed, threads);
  } else if (suite == "unbiasedness") {
    unbiasedness_suite(checks, seed, threads);
  } else if (suite == "limit") {
    limit_suite(checks, seed);
  } else if (suite == "memoryless") {
    memoryless_suite(checks, seed);
  } else if (suite == "all") {
    variance_suite(checks, seed, threads);
    unbiasedness_suite(checks, seed, threads);
    limit_suite(checks, seed);
    memoryless_suite(checks, seed);
  } else {
    throw std::domain_error("unknown suite: " + suite);
  }
  return checks;
}

std::string report_to_json(const SweepReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["n"] = report.n;
  j["method"] = method_name(report.method);
  j["stderr_convention"] = convention_name(report.convention);
  if (report.beta_ref)
    j["beta_ref"] = *report.beta_ref;
  else
    j["beta_ref"] = nullptr;
  j["rows"] = nlohmann::ordered_json::array();
  for (const SweepRow& row : report.rows) {
    nlohmann::ordered_json rj;
    rj["ratio"] = row.ratio;
    rj["r"] = row.r;
    if (row.ok()) {
      rj["beta_hat_ns"] = row.beta_hat;
      rj["stderr_ns"] = row.std_error;
      if (row.rel_error_pct)
        rj["rel_error_pct"] = *row.rel_error_pct;
      else
        rj["rel_error_pct"] = nullptr;
    } else {
      rj["error"] = row.error;
    }
    j["rows"].push_back(std::move(rj));
  }
  j["provenance"] = {{"input", report.provenance.input},
                     {"seed", report.provenance.seed
                                  ? nlohmann::ordered_json(*report.provenance.seed)
                                  : nlohmann::ordered_json(nullptr)},
                     {"tool_version", report.provenance.tool_version}};
  return j.dump(2) + "\n";
}

std::string format_value_with_stderr(double value, double std_error) {
  char buf[40];
  if (!std::isfinite(value)) {
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
  }
  if (!std::isfinite(std_error) || std_error <= 0.0) {
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
  }
  int exp10 = static_cast<int>(std::floor(std::log10(std_error)));
  const double leading = std_error / std::pow(10.0, exp10);
  int sig = leading < 2.0 ? 2 : 1;  // two digits when the leading digit is 1
  int place = exp10 - (sig - 1);
  long long digits = std::llround(std_error / std::pow(10.0, place));
  if (sig == 2 && digits >= 20) {  // rounded out of the leading-1 band
    sig = 1;
    place = exp10;
    digits = std::llround(std_error / std::pow(10.0, place));
  }
  if (digits >= (sig == 1 ? 10 : 100)) {  // carry: 9.7 -> 10
    ++place;
    digits = std::llround(std_error / std::pow(10.0, place));
  }
  const int decimals = place < 0 ? -place : 0;
  const double shown_digits =
      place > 0 ? static_cast<double>(digits) * std::pow(10.0, place)
                : static_cast<double>(digits);
  std::snprintf(buf, sizeof buf, "%.*f(%.0f)", decimals, value, shown_digits);
  return buf;
}

std::string report_to_table(const SweepReport& report) {
  std::vector<std::array<std::string, 3>> cells;
  const bool with_ref = report.beta_ref.has_value();
  cells.push_back({"ratio r/n", "result (ns)",
                   with_ref ? "rel. error (%)" : ""});
  char buf[40];
  for (const SweepRow& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%g", row.ratio);
    std::string ratio = buf;
    if (!row.ok()) {
      cells.push_back({std::move(ratio), "error: " + row.error, ""});
      continue;
    }
    std::string rel;
    if (row.rel_error_pct) {
      std::snprintf(buf, sizeof buf, "%.2f", *row.rel_error_pct);
      rel = buf;
    }
    cells.push_back({std::move(ratio),
                     format_value_with_stderr(row.beta_hat, row.std_error),
                     std::move(rel)});
  }
  std::size_t w0 = 0, w1 = 0;
  for (const auto& c : cells) {
    w0 = std::max(w0, c[0].size());
    w1 = std::max(w1, c[1].size());
  }
  std::string out;
  for (const auto& c : cells) {
    out += c[0];
    out.append(w0 - c[0].size() + 2, ' ');
    out += c[1];
    if (!c[2].empty()) {
      out.append(w1 - c[1].size() + 2, ' ');
      out += c[2];
    }
    out += '\n';
  }
  return out;
}

std::string report_to_csv(const SweepReport& report) {
  std::string out = "ratio,r,beta_hat_ns,stderr_ns,rel_error_pct,error\n";
  for (const SweepRow& row : report.rows) {
    out += format_double(row.ratio);
    out += ',';
    out += std::to_string(row.r);
    out += ',';
    if (row.ok()) {
      out += format_double(row.beta_hat);
      out += ',';
      out += format_double(row.std_error);
      out += ',';
      if (row.rel_error_pct) out += format_double(*row.rel_error_pct);
      out += ',';
    } else {
      out += ",,,";
      out += row.error;
    }
    out += '\n';
  }
  return out;
}

}  // namespace photonstat
