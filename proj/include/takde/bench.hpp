#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "takde/estimator.hpp"
#include "takde/rng.hpp"
#include "takde/synthetic.hpp"

namespace takde {

inline const char* scheme_name(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::takde:
      return "takde";
    case WeightScheme::uniform:
      return "uniform";
    case WeightScheme::exponential:
      return "exponential";
  }
  throw InvalidArgumentError("unknown weight scheme");
}

inline WeightScheme parse_scheme(const std::string& name) {
  if (name == "takde") return WeightScheme::takde;
  if (name == "uniform") return WeightScheme::uniform;
  if (name == "exponential") return WeightScheme::exponential;
  throw InvalidArgumentError("unknown weight scheme '" + name + "'");
}

struct BenchOptions {
  int batches = 100;
  int replicates = 30;
  std::vector<double> cutoffs = {1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<WeightScheme> schemes = {WeightScheme::takde, WeightScheme::uniform,
                                       WeightScheme::exponential};
  std::uint64_t seed = 1;
  int hard_cap = 16;
  SmoothnessConfig smoothness{};
  double decay = 0.9;
  int test_size = 500;
  int size_lo = 5;
  int size_hi = 20;
  int threads = 0;  // 0 = TAKDE_THREADS env var, else hardware concurrency
  KernelSpec kernel = KernelSpec::gaussian();
};

struct BenchResult {
  WeightScheme scheme = WeightScheme::takde;
  double cutoff = 0.0;
  int replicate = 0;
  std::uint64_t replicate_seed = 0;
  double mean_log_lik = 0.0;
  double per_batch_seconds = 0.0;
};

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TAKDE_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

// One (scheme, cutoff, replicate) cell. The stream depends only on (seed,
// replicate), so every scheme and cutoff sees identical data. Only fit_step
// and the test evaluation are inside the timed section.
inline BenchResult run_bench_cell(const BenchOptions& opt, WeightScheme scheme, double cutoff,
                                  int replicate) {
  const StreamPlan plan = make_plan(opt.batches, derive_seed(opt.seed, 0));
  const std::uint64_t replicate_seed = derive_seed(opt.seed, 1000003ull + std::uint64_t(replicate));
  const std::vector<BatchSample> stream =
      sample_stream(plan, opt.size_lo, opt.size_hi, opt.test_size, replicate_seed);

  EstimatorConfig cfg;
  cfg.kernel = opt.kernel;
  cfg.window = {cutoff, opt.hard_cap};
  cfg.smoothness = opt.smoothness;
  cfg.scheme = scheme;
  cfg.decay = opt.decay;

  StreamEstimator estimator(cfg);
  double log_lik_sum = 0.0;
  double seconds = 0.0;
  for (const BatchSample& bs : stream) {
    const auto start = std::chrono::steady_clock::now();
    const EstimatorSnapshot snap = estimator.step(Batch(bs.train));
    const double log_lik = mean_log_likelihood(snap, bs.test);
    const auto stop = std::chrono::steady_clock::now();
    seconds += std::chrono::duration<double>(stop - start).count();
    log_lik_sum += log_lik;
  }
  return {scheme,         cutoff,
          replicate,      replicate_seed,
          log_lik_sum / double(opt.batches), seconds / double(opt.batches)};
}

// Full benchmark grid. Cells run in parallel (capped by TAKDE_THREADS); the
// result table is sorted by (scheme, cutoff, replicate) regardless of
// execution order.
inline std::vector<BenchResult> run_bench(const BenchOptions& opt) {
  if (opt.batches < 14) throw InvalidArgumentError("bench needs at least 14 batches");
  if (opt.replicates < 1) throw InvalidArgumentError("bench needs replicates >= 1");
  if (opt.cutoffs.empty()) throw InvalidArgumentError("bench needs at least one cutoff");
  if (opt.schemes.empty()) throw InvalidArgumentError("bench needs at least one scheme");
  for (double s : opt.cutoffs)
    if (!(s >= 0.0)) throw InvalidArgumentError("cutoffs must be non-negative");

  struct Cell {
    WeightScheme scheme;
    double cutoff;
    int replicate;
  };
  std::vector<Cell> cells;
  cells.reserve(opt.schemes.size() * opt.cutoffs.size() * std::size_t(opt.replicates));
  for (WeightScheme scheme : opt.schemes)
    for (double cutoff : opt.cutoffs)
      for (int rep = 0; rep < opt.replicates; ++rep) cells.push_back({scheme, cutoff, rep});

  std::vector<BenchResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        results[i] = run_bench_cell(opt, cells[i].scheme, cells[i].cutoff, cells[i].replicate);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cells.size());
        return;
      }
    }
  };

  const int n_threads = std::min<std::size_t>(
      std::size_t(resolve_thread_count(opt.threads)), cells.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(results.begin(), results.end(), [](const BenchResult& a, const BenchResult& b) {
    return std::make_tuple(std::string_view(scheme_name(a.scheme)), a.cutoff, a.replicate) <
           std::make_tuple(std::string_view(scheme_name(b.scheme)), b.cutoff, b.replicate);
  });
  return results;
}

// Mean test log-likelihood per (scheme, cutoff) over replicates.
inline double bench_mean(const std::vector<BenchResult>& results, WeightScheme scheme,
                         double cutoff) {
  double sum = 0.0;
  int count = 0;
  for (const BenchResult& r : results) {
    if (r.scheme == scheme && r.cutoff == cutoff) {
      sum += r.mean_log_lik;
      ++count;
    }
  }
  if (count == 0) throw InvalidArgumentError("no bench results for the requested cell");
  return sum / double(count);
}

}  // namespace takde
