// takde: streaming density estimation front end.
//
// Subcommands:
//   run    stream a CSV of batches through the estimator, one JSON record per batch
//   bench  synthetic benchmark grid over schemes x cutoffs x replicates
//   synth  generate a synthetic train/test stream pair
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "takde/takde.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

takde::SmoothnessMode parse_smoothness_mode(const std::string& name) {
  if (name == "normal") return takde::SmoothnessMode::normal_rule;
  if (name == "oversmooth") return takde::SmoothnessMode::oversmooth_rule;
  if (name == "paper-normal") return takde::SmoothnessMode::paper_literal_normal;
  if (name == "paper-oversmooth") return takde::SmoothnessMode::paper_literal_oversmooth;
  throw UsageError("unknown smoothness mode '" + name + "'");
}

struct CommonFlags {
  double cutoff = 1.0;
  int hard_cap = 16;
  std::optional<double> smoothness;  // explicit c overrides the mode
  std::string smoothness_mode = "normal";
  std::string weights = "takde";
  double decay = 0.9;
  std::string kernel = "gaussian";
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--cutoff", flags.cutoff, "cumulative TA-distance cutoff s")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--hard-cap", flags.hard_cap, "hard cap w on retained batches")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--smoothness", flags.smoothness, "explicit smoothness parameter c");
  cmd->add_option("--smoothness-mode", flags.smoothness_mode,
                  "normal|oversmooth|paper-normal|paper-oversmooth");
  cmd->add_option("--weights", flags.weights, "takde|uniform|exponential");
  cmd->add_option("--decay", flags.decay, "decay ratio for exponential weights");
  cmd->add_option("--kernel", flags.kernel, "kernel function (gaussian)");
}

takde::EstimatorConfig make_config(const CommonFlags& flags) {
  takde::EstimatorConfig cfg;
  if (flags.kernel != "gaussian") throw UsageError("unknown kernel '" + flags.kernel + "'");
  cfg.kernel = takde::KernelSpec::gaussian();
  cfg.window = {flags.cutoff, flags.hard_cap};
  if (flags.smoothness) {
    if (!(*flags.smoothness > 0.0)) throw UsageError("--smoothness must be positive");
    cfg.smoothness.mode = takde::SmoothnessMode::explicit_c;
    cfg.smoothness.c = *flags.smoothness;
  } else {
    cfg.smoothness.mode = parse_smoothness_mode(flags.smoothness_mode);
  }
  try {
    cfg.scheme = takde::parse_scheme(flags.weights);
  } catch (const takde::InvalidArgumentError& err) {
    throw UsageError(err.what());
  }
  if (!(flags.decay > 0.0 && flags.decay < 1.0))
    throw UsageError("--decay must lie in (0, 1)");
  cfg.decay = flags.decay;
  return cfg;
}

std::string format_fixed(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

int run_command(const std::string& input, const std::string& test,
                const std::string& output, const CommonFlags& flags,
                const std::string& grid_text) {
  const takde::EstimatorConfig cfg = make_config(flags);

  std::optional<takde::GridSpec> grid;
  std::vector<double> grid_points;
  if (!grid_text.empty()) {
    try {
      grid = takde::GridSpec::parse(grid_text);
    } catch (const takde::InvalidArgumentError& err) {
      throw UsageError(err.what());
    }
    grid_points = grid->points();
  }

  const std::vector<takde::Batch> batches = takde::read_stream_csv_file(input);
  if (batches.empty()) throw takde::EmptyStreamError("input contains no batches");

  std::vector<takde::Batch> test_batches;
  if (!test.empty()) {
    test_batches = takde::read_stream_csv_file(test);
    if (test_batches.size() < batches.size())
      throw takde::Error("test file covers fewer batches than the input stream");
  }

  takde::StreamEstimator estimator(cfg);
  std::vector<std::string> lines;
  lines.reserve(batches.size());
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const takde::EstimatorSnapshot snap = estimator.step(takde::Batch(batches[i]));
    takde::RunRecord rec;
    rec.t = snap.t;
    rec.window_size = snap.window_size();
    rec.sigmas = snap.sigmas;
    rec.alphas = snap.weights.alphas;
    if (!test_batches.empty())
      rec.mean_log_lik = takde::mean_log_likelihood(snap, test_batches[i].points);
    if (grid) rec.density = takde::evaluate(snap, grid_points);
    lines.push_back(takde::run_record_json(rec).dump());
  }

  if (output.empty()) {
    for (const std::string& line : lines) std::cout << line << '\n';
  } else {
    takde::atomic_write_file(output, [&](std::ostream& out) {
      for (const std::string& line : lines) out << line << '\n';
    });
  }
  return kExitOk;
}

void write_bench_table(std::ostream& out, const std::vector<takde::BenchResult>& results) {
  out << "scheme,cutoff,replicate,seed,mean_log_lik,per_batch_seconds\n";
  for (const takde::BenchResult& r : results) {
    out << takde::scheme_name(r.scheme) << ',' << takde::format_double(r.cutoff) << ','
        << r.replicate << ',' << r.replicate_seed << ',' << takde::format_double(r.mean_log_lik)
        << ',' << takde::format_double(r.per_batch_seconds) << '\n';
  }
}

int bench_command(const takde::BenchOptions& opt, const std::string& output,
                  bool print_summary) {
  const std::vector<takde::BenchResult> results = takde::run_bench(opt);
  if (output.empty()) {
    write_bench_table(std::cout, results);
  } else {
    takde::atomic_write_file(output,
                             [&](std::ostream& out) { write_bench_table(out, results); });
  }
  if (print_summary) {
    std::cerr << "# mean over replicates\n";
    for (takde::WeightScheme scheme : opt.schemes)
      for (double cutoff : opt.cutoffs)
        std::cerr << "# " << takde::scheme_name(scheme) << " cutoff=" << cutoff << " mean="
                  << format_fixed(takde::bench_mean(results, scheme, cutoff), 6) << '\n';
  }
  return kExitOk;
}

int synth_command(int batches, std::uint64_t seed, const std::string& out_path) {
  const takde::StreamPlan plan = takde::make_plan(batches, takde::derive_seed(seed, 0));
  const std::vector<takde::BatchSample> stream =
      takde::sample_stream(plan, 5, 20, 500, takde::derive_seed(seed, 1000003ull));

  std::vector<takde::Batch> train;
  std::vector<takde::Batch> test;
  train.reserve(stream.size());
  test.reserve(stream.size());
  for (const takde::BatchSample& s : stream) {
    train.push_back(s.train);
    test.push_back(takde::Batch{s.train.t, s.test});
  }

  std::filesystem::path train_path(out_path);
  std::filesystem::path test_path = train_path;
  test_path.replace_extension();
  test_path += "_test.csv";

  takde::write_stream_csv_file(train_path, train);
  takde::write_stream_csv_file(test_path, test);
  std::cerr << "wrote " << train.size() << " batches to " << train_path.string() << " and "
            << test_path.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal adaptive kernel density estimation"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "stream a CSV through the estimator");
  std::string run_input, run_test, run_output, run_grid;
  CommonFlags run_flags;
  run->add_option("--input", run_input, "input stream CSV (batch,value)")->required();
  run->add_option("--test", run_test, "held-out CSV for per-batch mean log-likelihood");
  run->add_option("--output", run_output, "output JSONL path (stdout if omitted)");
  add_common_flags(run, run_flags);
  run->add_option("--grid", run_grid, "density evaluation grid lo:hi:count");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "synthetic benchmark grid");
  takde::BenchOptions bench_opt;
  std::string bench_output;
  std::string bench_mode = "normal";
  std::optional<double> bench_smoothness;
  std::vector<std::string> bench_schemes = {"takde", "uniform", "exponential"};
  bool bench_summary = false;
  bench->add_option("--batches", bench_opt.batches, "batches per stream (>= 14)");
  bench->add_option("--replicates", bench_opt.replicates, "Monte-Carlo replicates");
  bench->add_option("--cutoffs", bench_opt.cutoffs, "cutoff values")->delimiter(',');
  bench->add_option("--schemes", bench_schemes, "weight schemes")->delimiter(',');
  bench->add_option("--seed", bench_opt.seed, "base seed");
  bench->add_option("--hard-cap", bench_opt.hard_cap, "hard cap w")->check(CLI::PositiveNumber);
  bench->add_option("--smoothness", bench_smoothness, "explicit smoothness parameter c");
  bench->add_option("--smoothness-mode", bench_mode,
                    "normal|oversmooth|paper-normal|paper-oversmooth");
  bench->add_option("--decay", bench_opt.decay, "decay ratio for exponential weights");
  bench->add_option("--output", bench_output, "write the result table to a file");
  bench->add_flag("--summary", bench_summary, "print per-(scheme,cutoff) means to stderr");

  // synth
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic stream");
  int synth_batches = 100;
  std::uint64_t synth_seed = 1;
  std::string synth_out;
  synth->add_option("--batches", synth_batches, "total batches (>= 14)");
  synth->add_option("--seed", synth_seed, "stream seed");
  synth->add_option("--out", synth_out, "train CSV path (test sidecar derived)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    app.exit(help);
    return kExitOk;
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsageError;
  }

  try {
    if (run->parsed())
      return run_command(run_input, run_test, run_output, run_flags, run_grid);
    if (bench->parsed()) {
      if (bench_opt.batches < 14) throw UsageError("--batches must be >= 14");
      if (bench_opt.replicates < 1) throw UsageError("--replicates must be >= 1");
      if (!(bench_opt.decay > 0.0 && bench_opt.decay < 1.0))
        throw UsageError("--decay must lie in (0, 1)");
      for (double s : bench_opt.cutoffs)
        if (!(s >= 0.0)) throw UsageError("--cutoffs must be non-negative");
      if (bench_smoothness) {
        if (!(*bench_smoothness > 0.0)) throw UsageError("--smoothness must be positive");
        bench_opt.smoothness.mode = takde::SmoothnessMode::explicit_c;
        bench_opt.smoothness.c = *bench_smoothness;
      } else {
        bench_opt.smoothness.mode = parse_smoothness_mode(bench_mode);
      }
      bench_opt.schemes.clear();
      for (const std::string& name : bench_schemes) {
        try {
          bench_opt.schemes.push_back(takde::parse_scheme(name));
        } catch (const takde::InvalidArgumentError& err) {
          throw UsageError(err.what());
        }
      }
      return bench_command(bench_opt, bench_output, bench_summary);
    }
    if (synth->parsed()) {
      if (synth_batches < 14) throw UsageError("--batches must be >= 14");
      return synth_command(synth_batches, synth_seed, synth_out);
    }
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsageError;
  } catch (const takde::FormatError& err) {
    std::cerr << "data error: " << err.what() << '\n';
    return kExitDataError;
  } catch (const takde::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitDataError;
  }
  return kExitUsageError;
}
