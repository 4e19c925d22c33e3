#include "photonstat/dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace photonstat {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + " must be finite");
}

double validated_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0)
    throw std::domain_error(std::string(what) + " must be positive and finite");
  return v;
}

}  // namespace

ExpParam ExpParam::from_rate(double lambda) {
  validated_positive(lambda, "rate lambda");
  return ExpParam(lambda, 1.0 / lambda);
}

ExpParam ExpParam::from_scale(double beta) {
  validated_positive(beta, "scale beta");
  return ExpParam(1.0 / beta, beta);
}

HypoexpParams::HypoexpParams(double lambda_n, double lambda_r)
    : lambda_n_(validated_positive(lambda_n, "lambda_n")),
      lambda_r_(validated_positive(lambda_r, "lambda_r")) {
  degenerate_ = std::abs(lambda_n_ - lambda_r_) <=
                kEqualRateEps * std::max(lambda_n_, lambda_r_);
}

double exp_pdf(double x, const ExpParam& p) {
  require_finite(x, "x");
  if (x < 0.0) return 0.0;
  return p.lambda() * std::exp(-p.lambda() * x);
}

double exp_cdf(double x, const ExpParam& p) {
  require_finite(x, "x");
  if (x < 0.0) return 0.0;
  return -std::expm1(-p.lambda() * x);
}

double exp_survival(double x, const ExpParam& p) {
  require_finite(x, "x");
  if (x < 0.0) throw std::domain_error("survival requires x >= 0");
  return std::exp(-p.lambda() * x);
}

double exp_mgf(double t, const ExpParam& p) {
  require_finite(t, "t");
  if (t >= p.lambda())
    throw std::domain_error("mgf diverges: requires t < lambda");
  return p.lambda() / (p.lambda() - t);
}

double raw_moment(int k, const ExpParam& p) {
  if (k < 0) throw std::domain_error("moment order k must be >= 0");
  // 170! is the largest factorial in double range.
  if (k > 170) throw std::range_error("moment order k > 170 overflows double");
  double m = 1.0;
  for (int i = 1; i <= k; ++i) m *= static_cast<double>(i) * p.beta();
  return m;
}

double memoryless_residual(double x1, double x2, const ExpParam& p) {
  require_finite(x1, "x1");
  require_finite(x2, "x2");
  if (x1 < 0.0 || x2 < 0.0)
    throw std::domain_error("memoryless residual requires x1, x2 >= 0");
  const double s1 = exp_survival(x1, p);
  if (s1 == 0.0)
    throw std::range_error("survival(x1) underflowed to 0; conditional undefined");
  return exp_survival(x1 + x2, p) / s1 - exp_survival(x2, p);
}

double hypoexp_pdf(double t, const HypoexpParams& p) {
  require_finite(t, "t");
  if (t < 0.0) return 0.0;
  if (p.degenerate()) {
    const double l = p.mean_rate();
    return l * l * t * std::exp(-l * t);
  }
  // Evaluate with the rates ordered so swapped parameters give the same
  // floating-point result.
  const double lo = std::min(p.lambda_n(), p.lambda_r());
  const double hi = std::max(p.lambda_n(), p.lambda_r());
  return lo * hi / (hi - lo) * (std::exp(-lo * t) - std::exp(-hi * t));
}

double hypoexp_cdf(double t, const HypoexpParams& p) {
  require_finite(t, "t");
  if (t <= 0.0) return 0.0;
  if (p.degenerate()) {
    const double l = p.mean_rate();
    return -std::expm1(-l * t) - l * t * std::exp(-l * t);
  }
  const double lo = std::min(p.lambda_n(), p.lambda_r());
  const double hi = std::max(p.lambda_n(), p.lambda_r());
  return 1.0 - (hi * std::exp(-lo * t) - lo * std::exp(-hi * t)) / (hi - lo);
}

double hypoexp_limit_gap(const HypoexpParams& p) {
  if (p.degenerate() || p.lambda_n() <= p.lambda_r())
    throw std::domain_error("limit gap requires lambda_n > lambda_r");
  const ExpParam radiative = ExpParam::from_rate(p.lambda_r());
  const double step = 0.01 / p.lambda_r();
  double gap = 0.0;
  for (int i = 0; i <= 3000; ++i) {
    const double t = static_cast<double>(i) * step;
    gap = std::max(gap, std::abs(hypoexp_cdf(t, p) - exp_cdf(t, radiative)));
  }
  return gap;
}

FockProbs fock_probs(double t, const ExpParam& p) {
  require_finite(t, "t");
  if (t < 0.0) throw std::domain_error("fock_probs requires t >= 0");
  const double p0 = std::exp(-p.lambda() * t);
  return FockProbs{p0, 1.0 - p0};
}

}  // namespace photonstat
