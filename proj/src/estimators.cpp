#include "photonstat/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "photonstat/errors.hpp"

namespace photonstat {

std::string method_name(Method m) {
  switch (m) {
    case Method::ME: return "me";
    case Method::MLE: return "mle";
    case Method::MVUE: return "mvue";
    case Method::BLUE: return "blue";
  }
  throw std::domain_error("unknown method");
}

Method parse_method(const std::string& name) {
  if (name == "me") return Method::ME;
  if (name == "mle") return Method::MLE;
  if (name == "mvue") return Method::MVUE;
  if (name == "blue") return Method::BLUE;
  throw std::domain_error("unknown method name: " + name);
}

double total_time_on_test(const CensoredView& view) {
  double sum = 0.0;
  for (double t : view.ordered_times()) sum += t;
  const double largest = view.ordered_times().back();
  return sum + static_cast<double>(view.n() - view.r()) * largest;
}

namespace {

std::size_t variance_divisor(Method m, std::size_t r) {
  // MVUE callers have already enforced r >= 2; r == 2 maps the divisor to
  // zero and the variance to +inf (defined only for r >= 3).
  return m == Method::MVUE ? r - 2 : r;
}

Estimates estimates_from_total(double total, std::size_t n, std::size_t r,
                               Method method) {
  if (total <= 0.0)
    throw DegenerateDataError("all observed times are zero; no scale information");

  double beta_hat, lambda_hat;
  if (method == Method::MVUE) {
    lambda_hat = static_cast<double>(r - 1) / total;
    beta_hat = 1.0 / lambda_hat;
  } else {
    beta_hat = total / static_cast<double>(r);
    lambda_hat = 1.0 / beta_hat;
  }

  const double var_scale = scale_variance(method, beta_hat, r);
  const double var_rate = rate_variance(method, lambda_hat, r);
  return Estimates{
      RateEstimate{lambda_hat, var_rate, std::sqrt(var_rate), method, n, r},
      ScaleEstimate{beta_hat, var_scale, std::sqrt(var_scale), method, n, r}};
}

}  // namespace

Estimates estimate_complete(const ArrivalSample& sample, Method method) {
  const std::size_t n = sample.size();
  if (method == Method::MVUE && n < 2)
    throw std::domain_error("MVUE requires n >= 2");
  // Summing the sorted sample makes the complete-data path coincide,
  // bit for bit, with the censored path at r == n.
  const CensoredView full = type2_censor(sample, n);
  return estimates_from_total(total_time_on_test(full), n, n, method);
}

Estimates estimate_censored(const CensoredView& view, Method method) {
  if (method == Method::ME)
    throw std::domain_error("method of moments is not defined for censored data");
  if (method == Method::MVUE && view.r() < 2)
    throw std::domain_error("censored MVUE requires r >= 2");
  return estimates_from_total(total_time_on_test(view), view.n(), view.r(), method);
}

double scale_variance(Method method, double beta, std::size_t r) {
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::domain_error("beta must be positive");
  if (r == 0 || (method == Method::MVUE && r < 2))
    throw std::domain_error("too few observations for this method");
  return beta * beta / static_cast<double>(variance_divisor(method, r));
}

double rate_variance(Method method, double lambda, std::size_t r) {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw std::domain_error("lambda must be positive");
  if (r == 0 || (method == Method::MVUE && r < 2))
    throw std::domain_error("too few observations for this method");
  return lambda * lambda / static_cast<double>(variance_divisor(method, r));
}

double fisher_info(double beta, std::size_t n) {
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::domain_error("beta must be positive");
  if (n == 0) throw std::domain_error("n must be >= 1");
  return static_cast<double>(n) / (beta * beta);
}

double crlb(double beta, std::size_t n) {
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::domain_error("beta must be positive");
  if (n == 0) throw std::domain_error("n must be >= 1");
  // Same expression shape as scale_variance, so an estimator whose
  // variance attains the bound has efficiency exactly 1.
  return beta * beta / static_cast<double>(n);
}

double efficiency(double est_variance, double beta, std::size_t n) {
  if (!std::isfinite(est_variance) || est_variance <= 0.0)
    throw std::domain_error("estimator variance must be positive");
  return crlb(beta, n) / est_variance;
}

}  // namespace photonstat
