#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "photonstat/errors.hpp"
#include "photonstat/estimators.hpp"
#include "photonstat/ingest.hpp"

using namespace photonstat;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("photonstat_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const std::string p = (path / name).string();
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

}  // namespace

TEST_CASE("read_times basics") {
  TempDir tmp;
  const ArrivalSample s = read_times(tmp.file("a.csv", "1.0\n2.5\n0.0\n"));
  CHECK(s.times() == std::vector<double>{1.0, 2.5, 0.0});

  // optional header, CRLF endings, blank lines
  const ArrivalSample h =
      read_times(tmp.file("b.csv", "time_ns\r\n3.5\r\n\r\n4.5\r\n"));
  CHECK(h.times() == std::vector<double>{3.5, 4.5});
}

TEST_CASE("read_times rejections carry the line number") {
  TempDir tmp;
  try {
    read_times(tmp.file("neg.csv", "1.0\n-1.0\n2.0\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  try {
    read_times(tmp.file("junk.csv", "1.0\nxyz\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(read_times(tmp.file("inf.csv", "inf\n")), ParseError);
  CHECK_THROWS_AS(read_times(tmp.file("empty.csv", "")), ParseError);
  CHECK_THROWS_AS(read_times(tmp.file("hdr_only.csv", "time_ns\n")), ParseError);
  CHECK_THROWS_AS(read_times((tmp.path / "missing.csv").string()), IoError);
}

TEST_CASE("write then read is bit-exact") {
  TempDir tmp;
  const ArrivalSample original(
      {0.0, 1.0 / 3.0, 7.17, 1e-12, 123456.789012345678, 0.1 + 0.2});
  const std::string path = (tmp.path / "round.csv").string();
  write_times(path, original);
  const ArrivalSample back = read_times(path);
  REQUIRE(back.size() == original.size());
  for (std::size_t i = 0; i < back.size(); ++i)
    CHECK(back.times()[i] == original.times()[i]);
}

TEST_CASE("read_histogram basics") {
  TempDir tmp;
  const HistogramData h =
      read_histogram(tmp.file("h.csv", "0.5,100\n1.5,50\n2.5,25\n"));
  CHECK(h.bin_centers == std::vector<double>{0.5, 1.5, 2.5});
  CHECK(h.counts == std::vector<std::int64_t>{100, 50, 25});
  CHECK(h.bin_width == doctest::Approx(1.0));

  const HistogramData with_header =
      read_histogram(tmp.file("h2.csv", "time_ns,count\n0.5,10\n1.5,20\n"));
  CHECK(with_header.counts == std::vector<std::int64_t>{10, 20});
}

TEST_CASE("read_histogram rejections") {
  TempDir tmp;
  CHECK_THROWS_AS(read_histogram(tmp.file("irr.csv", "0,10\n1,5\n5,2\n")),
                  FormatError);  // irregular spacing
  CHECK_THROWS_AS(read_histogram(tmp.file("one.csv", "0.5,10\n")), FormatError);
  CHECK_THROWS_AS(read_histogram(tmp.file("negc.csv", "0.5,10\n1.5,-3\n")),
                  FormatError);
  CHECK_THROWS_AS(read_histogram(tmp.file("dec.csv", "0.5,10\n0.25,3\n")),
                  FormatError);  // not increasing
  CHECK_THROWS_AS(read_histogram(tmp.file("frac.csv", "0.5,10\n1.5,2.5\n")),
                  ParseError);  // non-integer count
  CHECK_THROWS_AS(read_histogram(tmp.file("zero.csv", "0.5,0\n1.5,0\n")),
                  DegenerateDataError);
}

TEST_CASE("subtract_baseline") {
  HistogramData h;
  h.bin_centers = {0.5, 1.5, 2.5, 3.5};
  h.counts = {100, 50, 10, 10};
  h.bin_width = 1.0;

  const HistogramData out = subtract_baseline(h, 0.5);
  CHECK(out.counts == std::vector<std::int64_t>{90, 40, 0, 0});
  CHECK(out.baseline_removed == doctest::Approx(10.0));

  // already converging to zero: nothing changes
  HistogramData clean = h;
  clean.counts = {100, 50, 0, 0};
  const HistogramData same = subtract_baseline(clean, 0.5);
  CHECK(same.counts == clean.counts);
  CHECK(same.baseline_removed == 0.0);
  // idempotent on its own output
  const HistogramData again = subtract_baseline(same, 0.5);
  CHECK(again.counts == same.counts);

  CHECK_THROWS_AS(subtract_baseline(h, 0.6), std::domain_error);
  CHECK_THROWS_AS(subtract_baseline(h, 0.0), std::domain_error);

  HistogramData flat;
  flat.bin_centers = {0.5, 1.5};
  flat.counts = {5, 5};
  flat.bin_width = 1.0;
  CHECK_THROWS_AS(subtract_baseline(flat, 0.5), DegenerateDataError);
}

TEST_CASE("weighted estimation agrees with expansion") {
  HistogramData h;
  h.bin_centers = {1.0, 3.0};
  h.counts = {2, 2};
  h.bin_width = 2.0;

  const WeightedSample ws = histogram_to_weighted(h);
  CHECK(weighted_mle_scale(ws) == doctest::Approx(2.0).epsilon(1e-15));

  const ArrivalSample expanded = expand_to_sample(ws);
  CHECK(expanded.size() == 4);
  const double direct = estimate_complete(expanded, Method::MLE).scale.beta_hat;
  CHECK(std::abs(direct - weighted_mle_scale(ws)) <=
        1e-12 * weighted_mle_scale(ws));
}

TEST_CASE("weighted MLE special cases") {
  WeightedSample spike;
  spike.times = {4.0, 9.0, 11.0};
  spike.weights = {7.0, 0.0, 0.0};
  CHECK(weighted_mle_scale(spike) == 4.0);  // all mass on the first center

  WeightedSample uniform;
  uniform.times = {1.0, 2.0, 3.0, 4.0};
  uniform.weights = {5.0, 5.0, 5.0, 5.0};
  CHECK(weighted_mle_scale(uniform) == doctest::Approx(2.5).epsilon(1e-15));

  WeightedSample zero;
  zero.times = {1.0};
  zero.weights = {0.0};
  CHECK_THROWS_AS(weighted_mle_scale(zero), DegenerateDataError);
  CHECK_THROWS_AS(expand_to_sample(zero), DegenerateDataError);

  WeightedSample fractional;
  fractional.times = {1.0};
  fractional.weights = {1.5};
  CHECK_THROWS_AS(expand_to_sample(fractional), std::domain_error);
}

TEST_CASE("weighted round-trip on a larger histogram") {
  // geometric-ish decay plus a flat dark-count floor
  HistogramData h;
  for (int i = 0; i < 60; ++i) {
    h.bin_centers.push_back(0.5 + i);
    h.counts.push_back(static_cast<std::int64_t>(
                           std::llround(4000.0 * std::exp(-0.14 * i))) +
                       25);
  }
  h.bin_width = 1.0;

  const HistogramData cleaned = subtract_baseline(h, 0.1);
  CHECK(cleaned.baseline_removed > 0.0);

  const WeightedSample ws = histogram_to_weighted(cleaned);
  const double weighted = weighted_mle_scale(ws);
  const double expanded =
      estimate_complete(expand_to_sample(ws), Method::MLE).scale.beta_hat;
  CHECK(std::abs(weighted - expanded) <= 1e-12 * weighted);
}
