#pragma once

#include <cstddef>

#include "config.hpp"
#include "objective.hpp"
#include "record.hpp"
#include "rng.hpp"

namespace ssa {

/// deterministic: gamma == 0 (non-communicating gradient flow).
/// langevin: gamma == sigma (constant-temperature Langevin swarm).
/// Masses still evolve in both, but never feed back into positions.
struct BaselineKind {
  enum class Tag { kDeterministic, kLangevin };
  Tag tag = Tag::kDeterministic;
  double sigma = 0.0;

  static BaselineKind deterministic() { return {Tag::kDeterministic, 0.0}; }
  static BaselineKind langevin(double sigma) { return {Tag::kLangevin, sigma}; }
};

/// Returns `cfg` with mode and schedule replaced by the baseline's.
RunConfig baseline_config(const BaselineKind& kind, RunConfig cfg);

TrialRecord baseline_run(const BaselineKind& kind, const RunConfig& cfg,
                         const RngStream& rng);

/// 1 - (1 - p_basin)^N: ceiling on the deterministic success probability.
double success_rate_bound(double p_basin, std::size_t n_agents);

/// True iff fbar_{k+1} <= fbar_k + tol_per_step at every recorded pair.
bool deterministic_fbar_monotone(const TrialRecord& record, double tol_per_step);

/// E_rho[F] for rho proportional to exp(-F) on `box`, by tensor trapezoid
/// quadrature with `points` nodes per axis.  Supports d = 1, 2.
double langevin_stationary_oracle(const Objective& f, const Box& box,
                                  std::size_t points);

/// Whether x lies in the cataloged global basin (ball of basin_radius
/// around the global minimizer).
bool in_global_basin(const Objective& f, std::span<const double> x);

}  // namespace ssa
