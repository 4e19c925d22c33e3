#pragma once

// Analytic functions of the exponential and two-stage hypoexponential
// decay-time models: densities, CDFs, survival, moments, the Fock-state
// occupation probabilities, and the memorylessness identity.
//
// Times are in nanoseconds, rates in 1/ns. All functions are pure and
// thread-safe.

namespace photonstat {

/// Exponential-law parameter. Stores the rate lambda (1/ns) and its
/// derived scale beta = 1/lambda (ns, the radiative decay time).
class ExpParam {
 public:
  static ExpParam from_rate(double lambda);
  static ExpParam from_scale(double beta);

  double lambda() const noexcept { return lambda_; }
  double beta() const noexcept { return beta_; }

 private:
  ExpParam(double lambda, double beta) noexcept : lambda_(lambda), beta_(beta) {}

  double lambda_;
  double beta_;
};

/// Rates of the sequential two-stage decay: a non-radiative stage with
/// rate lambda_n followed by a radiative stage with rate lambda_r.
/// Rates closer than kEqualRateEps (relative) are flagged degenerate;
/// density evaluation then switches to the equal-rate gamma form with
/// the mean of the two rates.
class HypoexpParams {
 public:
  static constexpr double kEqualRateEps = 1e-9;

  HypoexpParams(double lambda_n, double lambda_r);

  double lambda_n() const noexcept { return lambda_n_; }
  double lambda_r() const noexcept { return lambda_r_; }
  bool degenerate() const noexcept { return degenerate_; }

  /// Arithmetic mean of the two rates, the single rate used on the
  /// degenerate branch.
  double mean_rate() const noexcept { return 0.5 * (lambda_n_ + lambda_r_); }

 private:
  double lambda_n_;
  double lambda_r_;
  bool degenerate_;
};

/// Occupation probabilities of the two-level photon-number state at a
/// given time: no emission yet vs. one photon emitted.
struct FockProbs {
  double p_no_emission;
  double p_emission;
};

/// Density lambda * exp(-lambda*x) for x >= 0, 0 for x < 0.
double exp_pdf(double x, const ExpParam& p);

/// 1 - exp(-lambda*x) for x >= 0, 0 for x < 0.
double exp_cdf(double x, const ExpParam& p);

/// exp(-lambda*x), the probability of no decay before x. Requires x >= 0.
double exp_survival(double x, const ExpParam& p);

/// Moment-generating function lambda / (lambda - t), defined for t < lambda
/// only; throws std::domain_error at or beyond the divergence point.
double exp_mgf(double t, const ExpParam& p);

/// k-th raw moment k! / lambda^k. k must be in [0, 170]; beyond that the
/// factorial leaves double range and a std::range_error is thrown.
double raw_moment(int k, const ExpParam& p);

/// survival(x1+x2)/survival(x1) - survival(x2). Identically zero up to
/// rounding (|result| <= 1e-12 for lambda*(x1+x2) <= 30). Throws
/// std::range_error when survival(x1) underflows to zero and the
/// conditional is undefined.
double memoryless_residual(double x1, double x2, const ExpParam& p);

/// Density of the two-stage decay time. Uses the distinct-rate closed
/// form away from equality and the equal-rate gamma form on the
/// degenerate branch; symmetric in the two rates, bit-for-bit.
double hypoexp_pdf(double t, const HypoexpParams& p);

/// Closed-form CDF of the two-stage decay time.
double hypoexp_cdf(double t, const HypoexpParams& p);

/// Sup over the fixed grid t in {0, 0.01/lambda_r, ..., 30/lambda_r} of
/// |hypoexp_cdf(t) - exp_cdf(t; lambda_r)|: how far the two-stage model
/// is from its fast-non-radiative single-exponential limit. Requires
/// lambda_n > lambda_r and non-degenerate parameters.
double hypoexp_limit_gap(const HypoexpParams& p);

/// (exp(-lambda*t), 1 - exp(-lambda*t)) for t >= 0; components sum to 1.
FockProbs fock_probs(double t, const ExpParam& p);

}  // namespace photonstat
