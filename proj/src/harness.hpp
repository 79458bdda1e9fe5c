#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "record.hpp"

namespace ssa {

/// Pointwise mean and quartiles of fbar across unaborted trials.
struct AggregateSeries {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> q1;
  std::vector<double> q3;
  std::size_t n_trials = 0;
  std::size_t n_aborted = 0;
};

struct SweepCell {
  std::size_t n_agents = 0;
  double beta = 0.0;
  AggregateSeries series;
  double final_mean = 0.0;
  double final_q1 = 0.0;
  double final_q3 = 0.0;
  std::size_t n_trials = 0;
  std::size_t n_aborted = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // N-major, beta-minor
};

/// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile_type7(std::vector<double> values, double p);

/// Runs `fn(i)` for i in [0, n) on up to `workers` threads (0 = all cores).
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

std::size_t resolve_workers(std::size_t workers) noexcept;

/// Trial k uses RngStream(base_seed, k); output is in trial order and does
/// not depend on the worker count.
std::vector<TrialRecord> run_trials(const RunConfig& cfg, std::size_t n_trials,
                                    std::uint64_t base_seed,
                                    std::size_t workers = 0);

/// Throws kEmptyInput if no trial is usable, kMismatchedGrids if the
/// unaborted trials disagree on their time grids.
AggregateSeries aggregate(const std::vector<TrialRecord>& records);

/// Cartesian (N, beta) grid; each cell's schedule.beta and N are replaced.
SweepResult sweep(const RunConfig& base, const std::vector<std::size_t>& ns,
                  const std::vector<double>& betas, std::size_t n_trials,
                  std::uint64_t base_seed, std::size_t workers = 0);

struct RowBest {
  std::size_t n_agents = 0;
  double best_beta = 0.0;
  bool has_ideal_cell = false;  // grid contains beta = 2 / N
  bool ideal_is_best = false;
};

/// For each N, the beta with the lowest final mean and whether it is 2 / N.
std::vector<RowBest> sweep_best_in_row(const SweepResult& result);

/// Fraction of unaborted trials with final fbar < F* + epsilon, and the
/// binomial standard error sqrt(p (1 - p) / n).
std::pair<double, double> estimate_success_rate(
    const std::vector<TrialRecord>& records, double epsilon_succ);

/// Shortest round-trip decimal, "nan"/"inf" for non-finite values.
std::string format_double(double v);

void write_aggregate_csv(const AggregateSeries& series, const std::string& path);
void write_trial_csv(const TrialRecord& record, const std::string& path);
void write_sweep_summary_csv(const SweepResult& result, const std::string& path);

std::string manifest_json(const RunConfig& cfg,
                          const std::vector<TrialRecord>& records,
                          double wall_seconds);
void write_text_file(const std::string& path, const std::string& content);

const char* build_describe() noexcept;

}  // namespace ssa
