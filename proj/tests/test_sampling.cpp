#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "photonstat/dist.hpp"
#include "photonstat/sampling.hpp"

using namespace photonstat;

namespace {

double ks_distance(std::vector<double> sorted, const ExpParam& p) {
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = exp_cdf(sorted[i], p);
    d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
  }
  return d;
}

}  // namespace

TEST_CASE("ArrivalSample validation") {
  CHECK_THROWS_AS(ArrivalSample({}), std::domain_error);
  CHECK_THROWS_AS(ArrivalSample({1.0, -0.5}), std::domain_error);
  CHECK_THROWS_AS(ArrivalSample({std::nan("")}), std::domain_error);
  CHECK(ArrivalSample({0.0, 2.0}).size() == 2);
}

TEST_CASE("CensoredView validation") {
  CHECK_THROWS_AS(CensoredView({}, 3), std::domain_error);
  CHECK_THROWS_AS(CensoredView({1.0, 2.0}, 1), std::domain_error);
  CHECK_THROWS_AS(CensoredView({2.0, 1.0}, 3), std::domain_error);
  const CensoredView v({1.0, 2.0}, 5);
  CHECK(v.r() == 2);
  CHECK(v.n() == 5);
}

TEST_CASE("inverse-CDF transform at forced uniforms") {
  CHECK(exp_variate_from_uniform(1.0, 123.0) == 0.0);
  CHECK(exp_variate_from_uniform(std::exp(-1.0), 7.17) ==
        doctest::Approx(7.17).epsilon(1e-15));
  CHECK_THROWS_AS(exp_variate_from_uniform(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(exp_variate_from_uniform(1.5, 1.0), std::domain_error);

  // two forced unit draws make a zero two-stage time
  CHECK(exp_variate_from_uniform(1.0, 2.0) + exp_variate_from_uniform(1.0, 3.0) ==
        0.0);
}

TEST_CASE("uniform draws lie in (0, 1]") {
  SeededRng rng(11);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
  }
}

TEST_CASE("seed determinism") {
  SeededRng a(42), b(42), c(43);
  const ArrivalSample sa = sample_exp(1000, 7.17, a);
  const ArrivalSample sb = sample_exp(1000, 7.17, b);
  const ArrivalSample sc = sample_exp(1000, 7.17, c);
  CHECK(sa.times() == sb.times());
  CHECK(sa.times() != sc.times());

  SeededRng h1(42), h2(42);
  const HypoexpParams p(2.0, 1.0);
  CHECK(sample_hypoexp(500, p, h1).times() == sample_hypoexp(500, p, h2).times());
}

TEST_CASE("split streams are independent and deterministic") {
  const SeededRng base(7);
  SeededRng s0 = base.split(0);
  SeededRng s0_again = base.split(0);
  SeededRng s1 = base.split(1);
  CHECK(sample_exp(100, 1.0, s0).times() == sample_exp(100, 1.0, s0_again).times());
  CHECK(sample_exp(100, 1.0, s0).times() != sample_exp(100, 1.0, s1).times());
}

TEST_CASE("sample_exp argument validation") {
  SeededRng rng(1);
  CHECK_THROWS_AS(sample_exp(0, 1.0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_exp(10, 0.0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_exp(10, -7.17, rng), std::domain_error);
}

TEST_CASE("sample mean obeys the CLT band") {
  SeededRng rng(42);
  const ArrivalSample s = sample_exp(10000, 7.17, rng);
  double mean = 0.0;
  for (double t : s.times()) mean += t;
  mean /= 10000.0;
  CHECK(std::abs(mean - 7.17) <= 0.2151);  // 3 * beta / sqrt(n)
}

TEST_CASE("empirical CDF stays near the model CDF") {
  SeededRng rng(9);
  const ArrivalSample s = sample_exp(100000, 1.0, rng);
  const double d = ks_distance(s.times(), ExpParam::from_scale(1.0));
  CHECK(d < 1.36 / std::sqrt(100000.0) * 1.5);
}

TEST_CASE("two-stage sample matches the sum-of-stages moments") {
  SeededRng rng(7);
  const std::size_t n = 100000;
  const ArrivalSample s = sample_hypoexp(n, HypoexpParams(2.0, 1.0), rng);
  double mean = 0.0;
  for (double t : s.times()) mean += t;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double t : s.times()) ss += (t - mean) * (t - mean);
  const double var = ss / static_cast<double>(n - 1);

  // mean 1/2 + 1 = 1.5, variance 1/4 + 1 = 1.25
  CHECK(std::abs(mean - 1.5) <= 3.0 * std::sqrt(1.25 / n));
  // Var(s^2) ~ (mu4 - sigma^4)/n with mu4 = 11.0625 for this pair
  CHECK(std::abs(var - 1.25) <= 3.0 * std::sqrt((11.0625 - 1.25 * 1.25) / n));
}

TEST_CASE("fast first stage collapses to the radiative exponential") {
  SeededRng rng(3);
  const std::size_t n = 100000;
  const ArrivalSample s = sample_hypoexp(n, HypoexpParams(1000.0, 1.0), rng);
  const double d = ks_distance(s.times(), ExpParam::from_rate(1.0));
  const double analytic_gap = hypoexp_limit_gap(HypoexpParams(1000.0, 1.0));
  CHECK(d < analytic_gap + 1.36 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("type2_censor") {
  const ArrivalSample s({3.0, 1.0, 2.0});
  const CensoredView full = type2_censor(s, 3);
  CHECK(full.ordered_times() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(full.n() == 3);

  const CensoredView two = type2_censor(s, 2);
  CHECK(two.ordered_times() == std::vector<double>{1.0, 2.0});
  CHECK(two.n() == 3);
  CHECK(two.r() == 2);

  // input untouched
  CHECK(s.times() == std::vector<double>{3.0, 1.0, 2.0});

  CHECK_THROWS_AS(type2_censor(s, 0), std::domain_error);
  CHECK_THROWS_AS(type2_censor(s, 4), std::domain_error);
}

TEST_CASE("censoring at the table scale") {
  SeededRng rng(42);
  const ArrivalSample s = sample_exp(17900, 7.17, rng);
  const CensoredView v = type2_censor(s, 5370);
  CHECK(v.r() == 5370);
  CHECK(static_cast<double>(v.r()) / static_cast<double>(v.n()) ==
        doctest::Approx(0.3));
}

TEST_CASE("censored prefixes truncate consistently") {
  SeededRng rng(21);
  const ArrivalSample s = sample_exp(500, 2.0, rng);

  const CensoredView whole = type2_censor(s, 500);
  std::vector<double> check = s.times();
  std::sort(check.begin(), check.end());
  CHECK(whole.ordered_times() == check);  // a sorted permutation of the input

  const CensoredView longer = type2_censor(s, 400);
  const CensoredView shorter = type2_censor(s, 150);
  for (std::size_t i = 0; i < shorter.r(); ++i)
    CHECK(shorter.ordered_times()[i] == longer.ordered_times()[i]);
}
