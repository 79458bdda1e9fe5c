// ssa_cli: command-line driver over the C interface.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ssa/ssa.h>

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::size_t> trials;
  std::size_t workers = 0;
  std::optional<std::uint64_t> seed;
  bool per_trial = false;
  std::size_t points = 100;
};

class CliError {
 public:
  explicit CliError(std::string msg) : msg_(std::move(msg)) {}
  const std::string& what() const { return msg_; }

 private:
  std::string msg_;
};

void check(ssa_status s, const std::string& context) {
  if (s != SSA_OK) {
    throw CliError(context + ": " + ssa_status_name(s) + ": " + ssa_last_error());
  }
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

using Config = Handle<ssa_config, ssa_config_free>;
using Trials = Handle<ssa_trials, ssa_trials_free>;
using Sweep = Handle<ssa_sweep, ssa_sweep_free>;

void load(const Options& o, Config& cfg) {
  if (o.config.empty()) throw CliError("--config is required");
  check(ssa_config_load(o.config.c_str(), &cfg.p), o.config);
  if (o.seed) check(ssa_config_set_seed(cfg.p, *o.seed), "--seed");
}

fs::path out_dir(const Options& o) {
  fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError(dir.string() + ": " + ec.message());
  return dir;
}

std::string str(const fs::path& p) { return p.string(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report_aborts(const ssa_trials* t) {
  for (std::size_t k = 0; k < ssa_trials_count(t); ++k) {
    ssa_trial_summary s{};
    check(ssa_trials_summary(t, k, &s), "summary");
    if (s.aborted) {
      std::fprintf(stderr, "warning: trial %zu aborted at step %llu (%s)\n", k,
                   static_cast<unsigned long long>(s.abort_step),
                   ssa_status_name(s.abort_cause));
    }
  }
}

int cmd_run(const Options& o) {
  Config cfg;
  load(o, cfg);
  const auto dir = out_dir(o);
  const auto t0 = std::chrono::steady_clock::now();
  Trials t;
  check(ssa_trials_run(cfg.p, 1, 1, &t.p), "run");
  check(ssa_trials_write_trial_csv(t.p, 0, str(dir / "trial_0.csv").c_str()), "write");
  check(ssa_trials_write_manifest(t.p, str(dir / "manifest.json").c_str(), seconds_since(t0)),
        "write");
  report_aborts(t.p);
  ssa_trial_summary s{};
  check(ssa_trials_summary(t.p, 0, &s), "summary");
  std::printf("final_fbar %.17g\nfinal_best_value %.17g\nsteps %llu\n", s.final_fbar,
              s.final_best_value, static_cast<unsigned long long>(s.steps_completed));
  return s.aborted ? 2 : 0;
}

int cmd_trials(const Options& o) {
  Config cfg;
  load(o, cfg);
  const auto dir = out_dir(o);
  const std::size_t n = o.trials.value_or(ssa_config_trials(cfg.p));
  const auto t0 = std::chrono::steady_clock::now();
  Trials t;
  check(ssa_trials_run(cfg.p, n, o.workers, &t.p), "trials");
  report_aborts(t.p);
  check(ssa_trials_write_aggregate_csv(t.p, str(dir / "aggregate.csv").c_str()), "write");
  if (o.per_trial) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto path = dir / ("trial_" + std::to_string(k) + ".csv");
      check(ssa_trials_write_trial_csv(t.p, k, str(path).c_str()), "write");
    }
  }
  check(ssa_trials_write_manifest(t.p, str(dir / "manifest.json").c_str(), seconds_since(t0)),
        "write");
  std::printf("wrote %s (%zu trials)\n", str(dir / "aggregate.csv").c_str(), n);
  return 0;
}

int cmd_sweep(const Options& o) {
  Config cfg;
  load(o, cfg);
  const auto dir = out_dir(o);
  std::size_t nc = 0, bc = 0;
  check(ssa_config_sweep_grid(cfg.p, nullptr, nullptr, 0, &nc, &bc), "sweep");
  if (nc == 0) throw CliError(o.config + ": config has no 'sweep' grid");
  const std::size_t cap = std::max(nc, bc);
  std::vector<std::size_t> ns(cap);
  std::vector<double> betas(cap);
  check(ssa_config_sweep_grid(cfg.p, ns.data(), betas.data(), cap, &nc, &bc), "sweep");
  const std::size_t n = o.trials.value_or(ssa_config_trials(cfg.p));

  Sweep s;
  check(ssa_sweep_run(cfg.p, ns.data(), nc, betas.data(), bc, n, o.workers, &s.p), "sweep");
  check(ssa_sweep_write_summary_csv(s.p, str(dir / "sweep_summary.csv").c_str()), "write");
  check(ssa_sweep_write_cell_csvs(s.p, str(dir).c_str()), "write");
  std::printf("%6s %10s %14s %6s\n", "N", "beta", "final_mean", "abort");
  for (std::size_t i = 0; i < ssa_sweep_cell_count(s.p); ++i) {
    ssa_sweep_cell c{};
    check(ssa_sweep_cell_get(s.p, i, &c), "sweep");
    std::printf("%6zu %10g %14.6g %6zu\n", c.n_agents, c.beta, c.final_mean, c.n_aborted);
  }
  return 0;
}

int cmd_check_gradients(const Options& o) {
  std::size_t count = ssa_catalog_size();
  std::vector<ssa_gradient_check_row> rows(count);
  check(ssa_check_gradients(o.seed.value_or(0), o.points, rows.data(), count, &count),
        "check-gradients");
  std::printf("%-20s %4s %7s %8s %14s %s\n", "objective", "dim", "points", "skipped",
              "max_rel_error", "result");
  bool ok = true;
  for (const auto& r : rows) {
    std::printf("%-20s %4zu %7zu %8zu %14.3e %s\n", r.name, r.dim, r.points, r.skipped,
                r.max_rel_error, r.passed ? "pass" : "FAIL");
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

int cmd_baseline_gap(const Options& o) {
  Config cfg;
  load(o, cfg);
  const std::size_t n = o.trials.value_or(ssa_config_trials(cfg.p));
  ssa_gap_report r{};
  check(ssa_baseline_gap(cfg.p, n, o.workers, &r), "baseline-gap");
  std::printf("time_average %.10g\noracle %.10g\nrelative_error %.6g\n", r.time_average,
              r.oracle, r.relative_error);
  std::printf("gap_above_min %.10g\ntrials %zu\naborted %zu\n",
              r.time_average - r.global_min_value, r.n_trials, r.n_aborted);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swarm-based simulated annealing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ssa_build_describe()));

  Options o;
  auto add_common = [&o](CLI::App* sub, bool batch) {
    sub->add_option("--config", o.config, "Run configuration file")->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--seed", o.seed, "Override the configured seed");
    if (batch) {
      sub->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
      sub->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
    }
  };

  auto* run = app.add_subcommand("run", "Single trial: trajectory CSV and manifest");
  add_common(run, false);
  auto* trials = app.add_subcommand("trials", "Trial batch: aggregate CSV and manifest");
  add_common(trials, true);
  trials->add_flag("--per-trial", o.per_trial, "Also write one CSV per trial");
  auto* sweep = app.add_subcommand("sweep", "(N, beta) grid from the config's sweep block");
  add_common(sweep, true);
  auto* grad = app.add_subcommand("check-gradients", "Finite-difference check of the catalog");
  grad->add_option("--seed", o.seed, "Sampling seed");
  grad->add_option("--points", o.points, "Points per objective");
  auto* gap = app.add_subcommand("baseline-gap", "Langevin time average against the oracle");
  add_common(gap, true);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(o);
    if (*trials) return cmd_trials(o);
    if (*sweep) return cmd_sweep(o);
    if (*grad) return cmd_check_gradients(o);
    if (*gap) return cmd_baseline_gap(o);
  } catch (const CliError& e) {
    std::fprintf(stderr, "ssa_cli: %s\n", e.what().c_str());
    return 1;
  }
  return 1;
}
