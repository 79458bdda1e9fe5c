#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "annealing.hpp"
#include "config.hpp"
#include "objective.hpp"
#include "record.hpp"
#include "rng.hpp"

namespace ssa {

struct Agent {
  std::vector<double> position;
  double mass = 0.0;
};

/// All agents at one step, with F and grad F cached at the current
/// positions and the provisional minimum consistent with them.
struct SwarmState {
  std::vector<Agent> agents;
  std::uint64_t step_index = 0;
  double provisional_min = 0.0;
  double total_mass0 = 0.0;

  std::vector<double> values;     // F(x^j)
  std::vector<double> gradients;  // grad F(x^j), row-major N x d

  std::size_t size() const noexcept { return agents.size(); }
  std::size_t dim() const noexcept {
    return agents.empty() ? 0 : agents.front().position.size();
  }
  double total_mass() const;
};

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> terms);

/// sum_j m^j F(x^j) / sum_j m^j from precomputed values.
double weighted_mean(std::span<const double> masses,
                     std::span<const double> values);

/// sum_j m^j F(x^j) / sum_j m^j.  Throws kEmptySwarm for no agents.
double provisional_minimum(std::span<const Agent> agents, const Objective& f);

/// Evaluates F, grad F and the provisional minimum for fresh agents.
SwarmState make_state(std::vector<Agent> agents, const Objective& f);

/// m^j_{n+1} = m^j_n (1 - h (F(x^j_n) - fbar_n)), all j at once.
/// Throws kStepSizeTooLarge if a factor is non-positive and kMassUnderflow
/// if a product rounds to zero.
std::vector<double> mass_update(const SwarmState& state, double h);

/// x^j_{n+1} = x^j_n - h grad F(x^j_n) + sqrt(2 h gamma(m^j_n)) xi^j with
/// caller-supplied noise (row-major N x d).
std::vector<std::vector<double>> position_update(
    const SwarmState& state, const AnnealingSchedule& schedule, double h,
    std::span<const double> noise);

/// Same, drawing xi^j from the Brownian family at (step_index, j).
std::vector<std::vector<double>> position_update(
    const SwarmState& state, const AnnealingSchedule& schedule, double h,
    const RngStream& rng);

/// One full iteration: masses from (m_n, x_n, fbar_n), positions with
/// gamma(m_n), then fbar_{n+1} recomputed from scratch.
SwarmState ssa_step(SwarmState state, const Objective& f,
                    const AnnealingSchedule& schedule, double h,
                    const RngStream& rng);

/// Initial positions drawn uniformly on the init box outside the
/// exclusion region; reproducible per (seed, trial).
std::vector<std::vector<double>> initial_positions(const RunConfig& cfg,
                                                   const RngStream& rng);

std::vector<double> initial_masses(const RunConfig& cfg);

/// Full trial: initialization, n_T steps, trajectory recording.  Step
/// errors are caught and stored in TrialRecord::abort.
TrialRecord run(const RunConfig& cfg, const Objective& f, const RngStream& rng);
TrialRecord run(const RunConfig& cfg, const RngStream& rng);

}  // namespace ssa
