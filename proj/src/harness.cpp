#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "error.hpp"
#include "swarm.hpp"

#ifndef SSA_GIT_DESCRIBE
#define SSA_GIT_DESCRIBE "unknown"
#endif

namespace ssa {

const char* build_describe() noexcept { return SSA_GIT_DESCRIBE; }

double quantile_type7(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "quantile of nothing");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::size_t resolve_workers(std::size_t workers) noexcept {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t pool = std::min(resolve_workers(workers), std::max<std::size_t>(n, 1));
  if (pool <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t t = 0; t < pool; ++t) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<TrialRecord> run_trials(const RunConfig& cfg, std::size_t n_trials,
                                    std::uint64_t base_seed,
                                    std::size_t workers) {
  if (n_trials == 0) throw Error(ErrorCode::kInvalidArgument, "n_trials must be >= 1");
  const Objective f = make_objective(cfg);
  std::vector<TrialRecord> out(n_trials);
  parallel_for(n_trials, workers, [&](std::size_t k) {
    out[k] = run(cfg, f, RngStream(base_seed, k));
  });
  return out;
}

AggregateSeries aggregate(const std::vector<TrialRecord>& records) {
  std::vector<const TrialRecord*> usable;
  for (const auto& r : records) {
    if (!r.aborted()) usable.push_back(&r);
  }
  if (usable.empty()) throw Error(ErrorCode::kEmptyInput, "empty-input: no usable trials");
  const auto& grid = usable.front()->times;
  for (const auto* r : usable) {
    if (r->times != grid || r->fbar.size() != grid.size()) {
      throw Error(ErrorCode::kMismatchedGrids, "mismatched-grids across trials");
    }
  }
  AggregateSeries out;
  out.times = grid;
  out.n_trials = usable.size();
  out.n_aborted = records.size() - usable.size();
  std::vector<double> column(usable.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < usable.size(); ++k) column[k] = usable[k]->fbar[i];
    // Sorting first makes the mean independent of trial order.
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double v : column) sum += v;
    out.mean.push_back(sum / static_cast<double>(column.size()));
    out.q1.push_back(quantile_type7(column, 0.25));
    out.q3.push_back(quantile_type7(column, 0.75));
  }
  return out;
}

SweepResult sweep(const RunConfig& base, const std::vector<std::size_t>& ns,
                  const std::vector<double>& betas, std::size_t n_trials,
                  std::uint64_t base_seed, std::size_t workers) {
  if (ns.empty() || betas.empty()) {
    throw Error(ErrorCode::kEmptyInput, "empty-input: sweep grid is empty");
  }
  if (n_trials == 0) throw Error(ErrorCode::kInvalidArgument, "n_trials must be >= 1");
  std::set<std::pair<std::size_t, double>> seen;
  std::vector<RunConfig> cells;
  for (auto n : ns) {
    for (double b : betas) {
      if (!seen.emplace(n, b).second) {
        throw Error(ErrorCode::kDuplicateCell,
                    "duplicate-cell: (N=" + std::to_string(n) +
                        ", beta=" + format_double(b) + ")");
      }
      RunConfig c = base;
      c.n_agents = n;
      c.schedule.beta = b;
      c.initial_masses.clear();
      c.sweep_n.clear();
      c.sweep_beta.clear();
      validate(c);
      cells.push_back(std::move(c));
    }
  }
  const Objective f = make_objective(base);
  std::vector<std::vector<TrialRecord>> records(cells.size(),
                                                std::vector<TrialRecord>(n_trials));
  parallel_for(cells.size() * n_trials, workers, [&](std::size_t job) {
    const std::size_t c = job / n_trials;
    const std::size_t k = job % n_trials;
    records[c][k] = run(cells[c], f, RngStream(base_seed, k));
  });

  SweepResult out;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    SweepCell cell;
    cell.n_agents = cells[c].n_agents;
    cell.beta = cells[c].schedule.beta;
    cell.n_trials = n_trials;
    for (const auto& r : records[c]) cell.n_aborted += r.aborted() ? 1 : 0;
    if (cell.n_aborted < n_trials) {
      cell.series = aggregate(records[c]);
      cell.final_mean = cell.series.mean.back();
      cell.final_q1 = cell.series.q1.back();
      cell.final_q3 = cell.series.q3.back();
    } else {
      cell.final_mean = cell.final_q1 = cell.final_q3 = std::nan("");
    }
    out.cells.push_back(std::move(cell));
  }
  return out;
}

std::vector<RowBest> sweep_best_in_row(const SweepResult& result) {
  std::vector<RowBest> rows;
  for (const auto& cell : result.cells) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const RowBest& r) {
      return r.n_agents == cell.n_agents;
    });
    if (it == rows.end()) {
      rows.push_back({cell.n_agents, std::nan(""), false, false});
      it = rows.end() - 1;
    }
    if (std::abs(cell.beta * static_cast<double>(cell.n_agents) - 2.0) < 1e-9) {
      it->has_ideal_cell = true;
    }
  }
  for (auto& row : rows) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cell : result.cells) {
      if (cell.n_agents == row.n_agents && cell.final_mean < best) {
        best = cell.final_mean;
        row.best_beta = cell.beta;
      }
    }
    row.ideal_is_best = row.has_ideal_cell &&
        std::abs(row.best_beta * static_cast<double>(row.n_agents) - 2.0) < 1e-9;
  }
  return rows;
}

std::pair<double, double> estimate_success_rate(
    const std::vector<TrialRecord>& records, double epsilon_succ) {
  if (!(epsilon_succ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon_succ must be > 0");
  }
  std::size_t usable = 0, hits = 0;
  for (const auto& r : records) {
    if (r.aborted()) continue;
    ++usable;
    if (r.final_fbar < r.global_min_value + epsilon_succ) ++hits;
  }
  if (usable == 0) throw Error(ErrorCode::kEmptyInput, "empty-input: no usable trials");
  const double n = static_cast<double>(usable);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
}

void write_aggregate_csv(const AggregateSeries& s, const std::string& path) {
  std::string text = "t,mean,q1,q3\n";
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    text += format_double(s.times[i]) + ',' + format_double(s.mean[i]) + ',' +
            format_double(s.q1[i]) + ',' + format_double(s.q3[i]) + '\n';
  }
  write_text_file(path, text);
}

void write_trial_csv(const TrialRecord& r, const std::string& path) {
  std::string text = "t,fbar\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    text += format_double(r.times[i]) + ',' + format_double(r.fbar[i]) + '\n';
  }
  write_text_file(path, text);
}

void write_sweep_summary_csv(const SweepResult& result, const std::string& path) {
  std::string text = "N,beta,final_mean,final_q1,final_q3,n_aborted\n";
  for (const auto& c : result.cells) {
    text += std::to_string(c.n_agents) + ',' + format_double(c.beta) + ',' +
            format_double(c.final_mean) + ',' + format_double(c.final_q1) + ',' +
            format_double(c.final_q3) + ',' + std::to_string(c.n_aborted) + '\n';
  }
  write_text_file(path, text);
}

std::string manifest_json(const RunConfig& cfg,
                          const std::vector<TrialRecord>& records,
                          double wall_seconds) {
  using nlohmann::json;
  json trials = json::array();
  std::size_t aborted = 0;
  for (const auto& r : records) {
    json t{{"trial", r.trial}, {"aborted", r.aborted()},
           {"steps_completed", r.steps_completed}};
    if (r.abort) {
      ++aborted;
      t["abort_step"] = r.abort->step;
      t["abort_cause"] = std::string(to_string(r.abort->cause));
    }
    trials.push_back(std::move(t));
  }
  json m{{"config", json::parse(serialize_config(cfg))},
         {"config_hash", config_hash(cfg)},
         {"seed", cfg.seed},
         {"build", build_describe()},
         {"quantile_convention", "linear interpolation between order statistics (type 7)"},
         {"n_trials", records.size()},
         {"n_aborted", aborted},
         {"trials", trials},
         {"wall_clock_seconds", wall_seconds}};
  return m.dump(2) + "\n";
}

}  // namespace ssa
