#pragma once

// Censoring-sweep workflow and Monte Carlo self-validation: estimate
// the decay time at a list of r/n ratios, report standard errors under
// an explicit convention along with relative error against a reference
// value, and check the estimator laws empirically on seeded synthetic
// data.

#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "photonstat/estimators.hpp"

namespace photonstat {

/// How the per-row standard error is computed.
///   PlugInAtR:     from the row's own estimate, sqrt(beta_hat(r)^2 / r);
///   ReferenceBeta: from the full-sample estimate of the same method,
///                  sqrt(beta_hat(n)^2 / r), so only r varies down the
///                  column.
enum class StderrConvention { PlugInAtR, ReferenceBeta };

std::string convention_name(StderrConvention c);
StderrConvention parse_convention(const std::string& name);

struct SweepRow {
  double ratio = 0.0;       // requested r/n
  std::size_t r = 0;        // round-half-away-from-zero(ratio * n)
  double beta_hat = 0.0;    // ns
  double std_error = 0.0;   // ns
  std::optional<double> rel_error_pct;  // present when a reference was given
  std::string error;        // non-empty when this row failed

  bool ok() const noexcept { return error.empty(); }
};

struct SweepProvenance {
  std::string input;                  // path, or "synthetic"
  std::optional<std::uint64_t> seed;
  std::string tool_version;
};

struct SweepReport {
  std::vector<SweepRow> rows;         // in input ratio order
  std::size_t n = 0;
  Method method = Method::MLE;
  StderrConvention convention = StderrConvention::PlugInAtR;
  std::optional<double> beta_ref;     // ns
  SweepProvenance provenance;
};

/// Runs the censoring sweep: for each ratio, censor at r = round(ratio*n),
/// estimate, and fill one row. A ratio whose r falls below the method
/// minimum produces a failed row, not a global abort; ratios outside
/// (0, 1] are a domain error. Rows are independent and run on `threads`
/// workers with deterministic input-order assembly.
SweepReport censor_sweep(const ArrivalSample& sample,
                         const std::vector<double>& ratios, Method method,
                         std::optional<double> beta_ref,
                         StderrConvention convention,
                         SweepProvenance provenance = {}, unsigned threads = 1);

/// 100 * |beta_hat - beta_ref| / beta_ref.
double relative_error(double beta_hat, double beta_ref);

/// One Monte Carlo experiment: `replicates` synthetic exponential
/// samples of size n, censored at r (r == n means complete data),
/// estimated with `method`.
struct McConfig {
  double beta = 1.0;          // true scale, ns
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t replicates = 0; // >= 100
  std::uint64_t seed = 0;
  Method method = Method::MLE;
};

/// Empirical estimator law vs. theory. The tracked estimator is the
/// unbiased one for the method: the scale for MLE/BLUE/ME, the rate for
/// MVUE. The mean check uses a 3-sigma CLT band; the variance ratio is
/// gated to [0.9, 1.1] only when replicates >= 5000.
struct ValidationSummary {
  std::string parameter;        // "beta" or "lambda"
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double theoretical_mean = 0.0;
  double theoretical_variance = 0.0;
  double mean_tolerance = 0.0;  // 3-sigma band half-width
  double variance_ratio = 0.0;  // empirical / theoretical
  bool mean_ok = false;
  bool variance_checked = false;
  bool variance_ok = true;

  bool passed() const noexcept { return mean_ok && variance_ok; }
};

ValidationSummary monte_carlo_validate(const McConfig& config, unsigned threads = 1);

/// One line of a named validation suite.
struct SuiteCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;       // limit the measurement is held against
  std::string relation;     // e.g. "|measured - expected| <=", printed as-is
  bool passed = false;
};

/// Runs one of the seeded self-validation suites: "variance",
/// "unbiasedness", "limit", "memoryless", or "all". Throws
/// std::domain_error on unknown suite names.
std::vector<SuiteCheck> run_validation_suite(const std::string& suite,
                                             std::uint64_t seed,
                                             unsigned threads = 1);

/// Full-precision machine-readable report. Deterministic: equal inputs
/// give byte-identical output (no timestamps).
std::string report_to_json(const SweepReport& report);

/// Aligned text table: ratio, result with the standard error folded
/// into final-digit parentheses, and relative error when present.
std::string report_to_table(const SweepReport& report);

/// Plot-ready CSV, full precision.
std::string report_to_csv(const SweepReport& report);

/// "7.21(6)"-style rendering: the standard error is rounded to one
/// significant digit (two when its leading digit is 1) and shown in
/// parentheses at the value's final decimal place.
std::string format_value_with_stderr(double value, double std_error);

}  // namespace photonstat
