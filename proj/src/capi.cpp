#include "ssa/ssa.h"

#include <chrono>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "baselines.hpp"
#include "config.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "objective.hpp"
#include "rng.hpp"
#include "swarm.hpp"

struct ssa_config {
  ssa::RunConfig cfg;
};

struct ssa_objective {
  ssa::Objective f;
};

struct ssa_trials {
  ssa::RunConfig cfg;
  std::vector<ssa::TrialRecord> records;
};

struct ssa_sweep {
  ssa::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

ssa_status fail(ssa_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, mapping exceptions onto status codes.
template <typename Body>
ssa_status guarded(Body&& body) noexcept {
  try {
    body();
    return SSA_OK;
  } catch (const ssa::Error& e) {
    return fail(static_cast<ssa_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SSA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SSA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SSA_ERR_INTERNAL, "unknown error");
  }
}

ssa_status null_arg(const char* what) {
  return fail(SSA_ERR_INVALID_ARGUMENT, std::string(what) + " is null");
}

const ssa::TrialRecord& record_at(const ssa_trials* t, size_t k) {
  if (k >= t->records.size()) {
    throw ssa::Error(ssa::ErrorCode::kInvalidArgument, "trial index out of range");
  }
  return t->records[k];
}

}  // namespace

extern "C" {

const char* ssa_status_name(ssa_status status) {
  return ssa::to_string(static_cast<ssa::ErrorCode>(status)).data();
}

const char* ssa_last_error(void) { return g_last_error.c_str(); }

const char* ssa_build_describe(void) { return ssa::build_describe(); }

ssa_status ssa_config_parse(const char* text, ssa_config** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new ssa_config{ssa::parse_config(text)}; });
}

ssa_status ssa_config_load(const char* path, ssa_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new ssa_config{ssa::load_config(path)}; });
}

void ssa_config_free(ssa_config* cfg) { delete cfg; }

ssa_status ssa_config_set_seed(ssa_config* cfg, uint64_t seed) {
  if (!cfg) return null_arg("cfg");
  cfg->cfg.seed = seed;
  return SSA_OK;
}

uint64_t ssa_config_seed(const ssa_config* cfg) { return cfg ? cfg->cfg.seed : 0; }

size_t ssa_config_trials(const ssa_config* cfg) { return cfg ? cfg->cfg.trials : 0; }

ssa_status ssa_config_serialize(const ssa_config* cfg, char* buf, size_t cap,
                                size_t* len) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    const std::string text = ssa::serialize_config(cfg->cfg);
    if (len) *len = text.size();
    if (buf && cap > 0) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

ssa_status ssa_config_sweep_grid(const ssa_config* cfg, size_t* ns,
                                 double* betas, size_t cap, size_t* n_count,
                                 size_t* beta_count) {
  if (!cfg) return null_arg("cfg");
  const auto& c = cfg->cfg;
  if (n_count) *n_count = c.sweep_n.size();
  if (beta_count) *beta_count = c.sweep_beta.size();
  for (size_t i = 0; ns && i < std::min(cap, c.sweep_n.size()); ++i) ns[i] = c.sweep_n[i];
  for (size_t i = 0; betas && i < std::min(cap, c.sweep_beta.size()); ++i) {
    betas[i] = c.sweep_beta[i];
  }
  return SSA_OK;
}

size_t ssa_catalog_size(void) { return ssa::objective_names().size(); }

ssa_status ssa_catalog_get(size_t index, ssa_objective** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    auto all = ssa::catalog();
    if (index >= all.size()) {
      throw ssa::Error(ssa::ErrorCode::kInvalidArgument, "catalog index out of range");
    }
    *out = new ssa_objective{std::move(all[index])};
  });
}

ssa_status ssa_objective_create(const char* name, size_t dim, ssa_objective** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new ssa_objective{ssa::make_objective(name, dim)}; });
}

void ssa_objective_free(ssa_objective* f) { delete f; }

const char* ssa_objective_name(const ssa_objective* f) {
  return f ? f->f.name().c_str() : "";
}

size_t ssa_objective_dim(const ssa_objective* f) { return f ? f->f.dim() : 0; }

double ssa_objective_global_min_value(const ssa_objective* f) {
  return f ? f->f.global_min_value() : 0.0;
}

ssa_status ssa_objective_eval(const ssa_objective* f, const double* x, size_t dim,
                              double* value) {
  if (!f) return null_arg("f");
  if (!x || !value) return null_arg("x/value");
  if (dim != f->f.dim()) return fail(SSA_ERR_INVALID_DIMENSION, "dimension mismatch");
  return guarded([&] { *value = f->f.value({x, dim}); });
}

ssa_status ssa_objective_gradient(const ssa_objective* f, const double* x,
                                  size_t dim, double* grad) {
  if (!f) return null_arg("f");
  if (!x || !grad) return null_arg("x/grad");
  if (dim != f->f.dim()) return fail(SSA_ERR_INVALID_DIMENSION, "dimension mismatch");
  return guarded([&] { f->f.value_and_gradient({x, dim}, {grad, dim}); });
}

ssa_status ssa_check_gradients(uint64_t seed, size_t points,
                               ssa_gradient_check_row* rows, size_t cap,
                               size_t* count) {
  return guarded([&] {
    const auto all = ssa::catalog();
    if (count) *count = all.size();
    for (size_t i = 0; i < all.size(); ++i) {
      const auto check = ssa::check_gradient(all[i], ssa::RngStream(seed, i), points);
      if (!rows || i >= cap) continue;
      ssa_gradient_check_row& row = rows[i];
      std::memset(&row, 0, sizeof row);
      std::strncpy(row.name, check.name.c_str(), sizeof row.name - 1);
      row.dim = check.dim;
      row.points = check.points;
      row.skipped = check.skipped;
      row.max_rel_error = check.max_rel_error;
      row.passed = check.passed ? 1 : 0;
    }
  });
}

ssa_status ssa_trials_run(const ssa_config* cfg, size_t n_trials, size_t workers,
                          ssa_trials** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto t = std::make_unique<ssa_trials>();
    t->cfg = cfg->cfg;
    t->records = ssa::run_trials(cfg->cfg, n_trials, cfg->cfg.seed, workers);
    *out = t.release();
  });
}

void ssa_trials_free(ssa_trials* t) { delete t; }

size_t ssa_trials_count(const ssa_trials* t) { return t ? t->records.size() : 0; }

ssa_status ssa_trials_summary(const ssa_trials* t, size_t k, ssa_trial_summary* out) {
  if (!t) return null_arg("t");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& r = record_at(t, k);
    *out = ssa_trial_summary{};
    out->trial = r.trial;
    out->aborted = r.aborted() ? 1 : 0;
    out->abort_step = r.abort ? r.abort->step : 0;
    out->abort_cause = r.abort ? static_cast<ssa_status>(r.abort->cause) : SSA_OK;
    out->steps_completed = r.steps_completed;
    out->final_fbar = r.final_fbar;
    out->final_best_value = r.final_best_value;
    out->tail_mean_value = r.tail_mean_value;
    out->n_points = r.times.size();
  });
}

ssa_status ssa_trials_series(const ssa_trials* t, size_t k, double* times,
                             double* fbar, size_t cap) {
  if (!t) return null_arg("t");
  return guarded([&] {
    const auto& r = record_at(t, k);
    const size_t n = std::min(cap, r.times.size());
    for (size_t i = 0; i < n; ++i) {
      if (times) times[i] = r.times[i];
      if (fbar) fbar[i] = r.fbar[i];
    }
  });
}

ssa_status ssa_trials_best_point(const ssa_trials* t, size_t k, double* x, size_t dim) {
  if (!t) return null_arg("t");
  if (!x) return null_arg("x");
  return guarded([&] {
    const auto& r = record_at(t, k);
    if (dim != r.final_best_point.size()) {
      throw ssa::Error(ssa::ErrorCode::kInvalidDimension, "dimension mismatch");
    }
    std::copy(r.final_best_point.begin(), r.final_best_point.end(), x);
  });
}

ssa_status ssa_trials_success_rate(const ssa_trials* t, double epsilon_succ,
                                   double* rate, double* stderr_out) {
  if (!t) return null_arg("t");
  return guarded([&] {
    const auto [p, se] = ssa::estimate_success_rate(t->records, epsilon_succ);
    if (rate) *rate = p;
    if (stderr_out) *stderr_out = se;
  });
}

ssa_status ssa_trials_write_aggregate_csv(const ssa_trials* t, const char* path) {
  if (!t) return null_arg("t");
  if (!path) return null_arg("path");
  return guarded([&] { ssa::write_aggregate_csv(ssa::aggregate(t->records), path); });
}

ssa_status ssa_trials_write_trial_csv(const ssa_trials* t, size_t k, const char* path) {
  if (!t) return null_arg("t");
  if (!path) return null_arg("path");
  return guarded([&] { ssa::write_trial_csv(record_at(t, k), path); });
}

ssa_status ssa_trials_write_manifest(const ssa_trials* t, const char* path,
                                     double wall_seconds) {
  if (!t) return null_arg("t");
  if (!path) return null_arg("path");
  return guarded([&] {
    ssa::write_text_file(path, ssa::manifest_json(t->cfg, t->records, wall_seconds));
  });
}

ssa_status ssa_sweep_run(const ssa_config* cfg, const size_t* ns, size_t n_count,
                         const double* betas, size_t beta_count, size_t n_trials,
                         size_t workers, ssa_sweep** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  if ((n_count && !ns) || (beta_count && !betas)) return null_arg("grid");
  return guarded([&] {
    auto s = std::make_unique<ssa_sweep>();
    s->result = ssa::sweep(cfg->cfg, std::vector<std::size_t>(ns, ns + n_count),
                           std::vector<double>(betas, betas + beta_count), n_trials,
                           cfg->cfg.seed, workers);
    *out = s.release();
  });
}

void ssa_sweep_free(ssa_sweep* s) { delete s; }

size_t ssa_sweep_cell_count(const ssa_sweep* s) { return s ? s->result.cells.size() : 0; }

ssa_status ssa_sweep_cell_get(const ssa_sweep* s, size_t index, ssa_sweep_cell* out) {
  if (!s) return null_arg("s");
  if (!out) return null_arg("out");
  if (index >= s->result.cells.size()) {
    return fail(SSA_ERR_INVALID_ARGUMENT, "cell index out of range");
  }
  const auto& c = s->result.cells[index];
  *out = ssa_sweep_cell{c.n_agents, c.beta,     c.final_mean, c.final_q1,
                        c.final_q3, c.n_trials, c.n_aborted};
  return SSA_OK;
}

ssa_status ssa_sweep_write_summary_csv(const ssa_sweep* s, const char* path) {
  if (!s) return null_arg("s");
  if (!path) return null_arg("path");
  return guarded([&] { ssa::write_sweep_summary_csv(s->result, path); });
}

ssa_status ssa_sweep_write_cell_csvs(const ssa_sweep* s, const char* dir) {
  if (!s) return null_arg("s");
  if (!dir) return null_arg("dir");
  return guarded([&] {
    for (const auto& c : s->result.cells) {
      if (c.series.times.empty()) continue;
      const auto path = std::filesystem::path(dir) /
                        ("cell_N" + std::to_string(c.n_agents) + "_beta" +
                         ssa::format_double(c.beta) + ".csv");
      ssa::write_aggregate_csv(c.series, path.string());
    }
  });
}

ssa_status ssa_baseline_gap(const ssa_config* cfg, size_t n_trials, size_t workers,
                            ssa_gap_report* out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto langevin = ssa::baseline_config(
        ssa::BaselineKind::langevin(cfg->cfg.sigma), cfg->cfg);
    const auto f = ssa::make_objective(langevin);
    *out = ssa_gap_report{};
    out->oracle = ssa::langevin_stationary_oracle(f, f.default_box(),
                                                  langevin.quadrature_points);
    const auto records = ssa::run_trials(langevin, n_trials, langevin.seed, workers);
    double sum = 0.0;
    for (const auto& r : records) {
      if (r.aborted()) {
        ++out->n_aborted;
        continue;
      }
      sum += r.tail_mean_value;
      ++out->n_trials;
    }
    if (out->n_trials == 0) {
      throw ssa::Error(ssa::ErrorCode::kEmptyInput, "empty-input: every trial aborted");
    }
    out->time_average = sum / static_cast<double>(out->n_trials);
    out->relative_error = std::abs(out->time_average - out->oracle) / std::abs(out->oracle);
    out->global_min_value = f.global_min_value();
  });
}

ssa_status ssa_success_rate_bound(double p_basin, size_t n_agents, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = ssa::success_rate_bound(p_basin, n_agents); });
}

}  // extern "C"
