#pragma once

// Point estimators and uncertainty for the rate lambda and the scale
// beta (the radiative decay time) from complete or Type II censored
// data: method of moments, maximum likelihood, minimum-variance
// unbiased and best linear unbiased estimators, Fisher information,
// the Cramer-Rao lower bound, and efficiency.
//
// Identities this module guarantees bit-exactly:
//   - ME and MLE coincide on complete data;
//   - BLUE and MLE coincide on censored data;
//   - the censored estimate at r == n equals the complete-data estimate.
//
// Reported variances are the delta-method laws with the point estimate
// plugged in for the unknown parameter: beta^2/r for MLE/BLUE/ME and
// beta^2/(r-2) for MVUE (same shape on the rate side). The MVUE scale
// estimate is exposed for comparison studies, but its variance exceeds
// the MLE's; report layers attach a warning when it is requested.

#include <cstddef>
#include <string>

#include "photonstat/sampling.hpp"

namespace photonstat {

enum class Method { ME, MLE, MVUE, BLUE };

/// Lower-case name used in CLI flags and report files.
std::string method_name(Method m);
/// Inverse of method_name; throws std::domain_error on unknown names.
Method parse_method(const std::string& name);

struct RateEstimate {
  double lambda_hat;   // 1/ns
  double variance;     // 1/ns^2
  double std_error;    // 1/ns, sqrt(variance)
  Method method;
  std::size_t n;
  std::size_t r;       // r == n for complete data
};

struct ScaleEstimate {
  double beta_hat;     // ns
  double variance;     // ns^2
  double std_error;    // ns
  Method method;
  std::size_t n;
  std::size_t r;
};

/// Rate and scale estimates from one call; beta_hat * lambda_hat == 1
/// within 1 ulp.
struct Estimates {
  RateEstimate rate;
  ScaleEstimate scale;
};

/// Sum of the r observed order statistics plus (n - r) copies of the
/// largest observed one: the sufficient statistic for censored
/// exponential inference (the total time on test).
double total_time_on_test(const CensoredView& view);

/// Complete-data estimation. ME/MLE/BLUE all reduce to the sample mean
/// for beta; MVUE uses (n-1)/sum for lambda. MVUE needs n >= 2 (its
/// variance is finite only for n >= 3 and is reported as +inf at n == 2).
/// Throws DegenerateDataError when every observation is zero.
Estimates estimate_complete(const ArrivalSample& sample, Method method);

/// Type II censored estimation via the total time on test T:
/// MLE/BLUE give beta = T/r, MVUE gives lambda = (r-1)/T. ME is not
/// defined for censored data and throws std::domain_error.
Estimates estimate_censored(const CensoredView& view, Method method);

/// Plug-in variance of the scale estimator: beta^2/r (MLE/BLUE/ME) or
/// beta^2/(r-2) (MVUE).
double scale_variance(Method method, double beta, std::size_t r);

/// Plug-in variance of the rate estimator: lambda^2/r or lambda^2/(r-2).
double rate_variance(Method method, double lambda, std::size_t r);

/// Total Fisher information n / beta^2 of an n-sample for the scale.
double fisher_info(double beta, std::size_t n);

/// Cramer-Rao lower bound beta^2 / n, the reciprocal of fisher_info.
double crlb(double beta, std::size_t n);

/// crlb(beta, n) / est_variance: 1 for an estimator attaining the bound.
double efficiency(double est_variance, double beta, std::size_t n);

}  // namespace photonstat
