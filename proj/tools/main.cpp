// Command-line front end: simulate / estimate / sweep / validate.
// All numeric work happens in the library; this file only parses flags,
// wires files to operations, and maps errors to exit codes:
//   0 ok, 1 validation-suite failure, 2 usage, 3 I/O or malformed input,
//   4 degenerate data.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "photonstat/analysis.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/ingest.hpp"
#include "photonstat/version.hpp"

namespace {

using namespace photonstat;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

struct SimulateArgs {
  double beta = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool hypoexp = false;
  double tau_n = 0.0;
};

struct EstimateArgs {
  std::string input;
  std::string method = "mle";
  std::optional<double> censor_ratio;
  bool histogram = false;
  double tail_fraction = 0.1;
};

struct SweepArgs {
  std::string input;
  std::vector<double> ratios;
  std::optional<double> reference;
  std::string convention = "plug-in";
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
};

struct ValidateArgs {
  std::string suite;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

std::size_t censor_rank(double ratio, std::size_t n) {
  return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
}

int run_simulate(const SimulateArgs& args) {
  SeededRng rng(args.seed);
  ArrivalSample sample =
      args.hypoexp
          ? sample_hypoexp(args.n, HypoexpParams(1.0 / args.tau_n, 1.0 / args.beta),
                           rng)
          : sample_exp(args.n, args.beta, rng);
  write_times(args.out, sample);
  std::cout << "wrote " << args.out << ": n=" << sample.size();
  if (args.hypoexp)
    std::cout << " model=hypoexp tau_n_ns=" << args.tau_n
              << " tau_r_ns=" << args.beta;
  else
    std::cout << " model=exp beta_ns=" << args.beta;
  std::cout << " seed=" << args.seed << "\n";
  return kExitOk;
}

std::size_t method_min_r(Method m) { return m == Method::MVUE ? 3 : 1; }

int run_estimate(const EstimateArgs& args) {
  const Method method = parse_method(args.method);

  std::optional<ArrivalSample> sample;
  if (args.histogram) {
    const HistogramData h =
        subtract_baseline(read_histogram(args.input), args.tail_fraction);
    sample = expand_to_sample(histogram_to_weighted(h));
  } else {
    sample = read_times(args.input);
  }

  const std::size_t n = sample->size();
  const std::size_t r =
      args.censor_ratio ? censor_rank(*args.censor_ratio, n) : n;
  if (r < method_min_r(method) || r > n)
    throw std::domain_error("method " + args.method + " needs r >= " +
                            std::to_string(method_min_r(method)) +
                            " observations (have r=" + std::to_string(r) +
                            " of n=" + std::to_string(n) + ")");

  const Estimates est = r < n ? estimate_censored(type2_censor(*sample, r), method)
                              : estimate_complete(*sample, method);

  std::printf("method: %s\n", method_name(method).c_str());
  std::printf("n: %zu  r: %zu  (r/n = %.4g)\n", est.scale.n, est.scale.r,
              static_cast<double>(est.scale.r) / static_cast<double>(est.scale.n));
  std::printf("beta_hat_ns: %.10g  stderr_ns: %.6g\n", est.scale.beta_hat,
              est.scale.std_error);
  std::printf("lambda_hat_per_ns: %.10g  stderr_per_ns: %.6g\n",
              est.rate.lambda_hat, est.rate.std_error);
  if (method == Method::MVUE)
    std::printf("note: MVUE targets the rate; its scale variance exceeds the "
                "MLE's, so prefer mle for beta.\n");
  return kExitOk;
}

int run_sweep(const SweepArgs& args) {
  const ArrivalSample sample = read_times(args.input);
  SweepProvenance provenance;
  provenance.input = args.input;
  provenance.tool_version = std::string(kVersion);
  const SweepReport report =
      censor_sweep(sample, args.ratios, Method::MLE, args.reference,
                   parse_convention(args.convention), provenance, args.threads);

  std::string body;
  if (args.format == "json")
    body = report_to_json(report);
  else if (args.format == "table")
    body = report_to_table(report);
  else
    body = report_to_csv(report);

  std::ofstream out(args.out);
  if (!out) throw IoError("cannot open " + args.out + " for writing");
  out << body;
  if (!out) throw IoError("write failed for " + args.out);

  std::size_t failed = 0;
  for (const SweepRow& row : report.rows)
    if (!row.ok()) ++failed;
  std::cout << "wrote " << args.out << ": " << report.rows.size() << " rows";
  if (failed > 0) std::cout << " (" << failed << " failed)";
  std::cout << "\n";
  if (failed == report.rows.size())
    throw DegenerateDataError("every sweep row failed");
  return kExitOk;
}

int run_validate(const ValidateArgs& args) {
  const std::vector<SuiteCheck> checks =
      run_validation_suite(args.suite, args.seed, args.threads);
  bool all_ok = true;
  for (const SuiteCheck& c : checks) {
    std::printf("[%s] %s: measured %.6g %s %.6g\n", c.passed ? "PASS" : "FAIL",
                c.name.c_str(), c.measured, c.relation.c_str(), c.bound);
    all_ok = all_ok && c.passed;
  }
  std::printf("%zu checks, %s\n", checks.size(), all_ok ? "all passed" : "FAILURES");
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decay-time modeling and estimation for single-photon "
               "arrival data (times in ns)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(photonstat::kVersion));

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Draw synthetic decay times and write an arrival-time file");
  simulate->add_option("--beta", sim.beta, "Radiative decay time beta (ns)")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--n", sim.n, "Number of draws")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Generator seed (required; no clock default)")
      ->required();
  simulate->add_option("--out", sim.out, "Output arrival-time file")->required();
  CLI::Option* hypo_flag = simulate->add_flag(
      "--hypoexp", sim.hypoexp,
      "Two-stage model: non-radiative stage of --tau-n followed by a "
      "radiative stage of --beta");
  CLI::Option* tau_opt =
      simulate->add_option("--tau-n", sim.tau_n, "Non-radiative decay time (ns)")
          ->check(CLI::PositiveNumber);
  hypo_flag->needs(tau_opt);
  tau_opt->needs(hypo_flag);

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Estimate beta and lambda from an arrival-time or histogram file");
  estimate->add_option("--input", est.input, "Input file (ns)")->required();
  estimate->add_option("--method", est.method, "Estimator: me|mle|mvue|blue")
      ->required()
      ->check(CLI::IsMember({"me", "mle", "mvue", "blue"}));
  estimate->add_option("--censor-ratio", est.censor_ratio,
                       "Keep only the r = round(ratio*n) smallest times, ratio in (0,1]")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
  estimate->add_flag("--histogram", est.histogram,
                     "Input is a 'time_ns,count' histogram CSV");
  estimate->add_option("--tail-fraction", est.tail_fraction,
                       "Tail fraction for dark-count baseline removal, in (0,0.5]")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 0.5));

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Censoring sweep over a list of r/n ratios (MLE)");
  sweep_cmd->add_option("--input", sweep.input, "Arrival-time file (ns)")->required();
  sweep_cmd->add_option("--ratios", sweep.ratios, "Comma-separated r/n ratios in (0,1]")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
  sweep_cmd->add_option("--reference", sweep.reference,
                        "Reference beta (ns) for the relative-error column")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--stderr-convention", sweep.convention,
                        "plug-in: beta_hat(r)/sqrt(r); reference: beta_hat(n)/sqrt(r)")
      ->check(CLI::IsMember({"plug-in", "reference"}));
  sweep_cmd->add_option("--out", sweep.out, "Output report path")->required();
  sweep_cmd->add_option("--format", sweep.format, "json|table|csv")
      ->check(CLI::IsMember({"json", "table", "csv"}));
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (same output)")
      ->check(CLI::PositiveNumber);

  ValidateArgs val;
  CLI::App* validate = app.add_subcommand(
      "validate", "Seeded self-validation suites for the estimator laws");
  validate->add_option("--suite", val.suite,
                       "variance|unbiasedness|limit|memoryless|all")
      ->required()
      ->check(CLI::IsMember({"variance", "unbiasedness", "limit", "memoryless", "all"}));
  validate->add_option("--seed", val.seed, "Suite seed (required; no clock default)")
      ->required();
  validate->add_option("--threads", val.threads, "Worker threads (same output)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (estimate->parsed()) return run_estimate(est);
    if (sweep_cmd->parsed()) return run_sweep(sweep);
    return run_validate(val);
  } catch (const photonstat::DegenerateDataError& e) {
    std::cerr << "error (degenerate data): " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const photonstat::IoError& e) {
    std::cerr << "error (I/O): " << e.what() << "\n";
    return kExitIo;
  } catch (const photonstat::ParseError& e) {
    std::cerr << "error (input): " << e.what() << "\n";
    return kExitIo;
  } catch (const photonstat::FormatError& e) {
    std::cerr << "error (input format): " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
