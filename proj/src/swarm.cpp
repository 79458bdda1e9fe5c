#include "swarm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace ssa {

namespace {

struct NeumaierSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) noexcept {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};

void check_step_size(double h) {
  if (!(h >= 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::kInvalidArgument, "step size h must be >= 0");
  }
}

void compute_masses(const SwarmState& state, double h, std::span<double> out) {
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double factor = 1.0 - h * (state.values[j] - state.provisional_min);
    if (!(factor > 0.0)) {
      throw Error(ErrorCode::kStepSizeTooLarge,
                  "step-size-too-large: mass of agent " + std::to_string(j) +
                      " would become non-positive at step " +
                      std::to_string(state.step_index));
    }
    out[j] = state.agents[j].mass * factor;
    if (!(out[j] > 0.0)) {
      throw Error(ErrorCode::kMassUnderflow,
                  "mass-underflow: mass of agent " + std::to_string(j) +
                      " rounded to zero at step " +
                      std::to_string(state.step_index));
    }
  }
}

// Moves agent j from x_n to x_{n+1}; gamma is taken at the pre-update mass.
void advance_position(const SwarmState& state, std::size_t j,
                      const AnnealingSchedule& schedule, double h,
                      std::span<const double> xi, std::span<double> out) {
  const auto& x = state.agents[j].position;
  const std::size_t d = x.size();
  const double* g = state.gradients.data() + j * d;
  const double amplitude = std::sqrt(2.0 * h * gamma(schedule, state.agents[j].mass));
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = x[i] - h * g[i] + amplitude * xi[i];
    if (!std::isfinite(out[i])) {
      throw Error(ErrorCode::kNonFinitePosition,
                  "non-finite-position: agent " + std::to_string(j) +
                      " diverged at step " + std::to_string(state.step_index));
    }
  }
}

void refresh(SwarmState& state, const Objective& f) {
  const std::size_t n = state.size();
  const std::size_t d = state.dim();
  state.values.resize(n);
  state.gradients.resize(n * d);
  for (std::size_t j = 0; j < n; ++j) {
    state.values[j] = f.value_and_gradient(
        state.agents[j].position,
        std::span<double>(state.gradients.data() + j * d, d));
  }
  NeumaierSum num, den;
  for (std::size_t j = 0; j < n; ++j) {
    num.add(state.agents[j].mass * state.values[j]);
    den.add(state.agents[j].mass);
  }
  state.provisional_min = num.value() / den.value();
}

}  // namespace

double SwarmState::total_mass() const {
  NeumaierSum s;
  for (const auto& a : agents) s.add(a.mass);
  return s.value();
}

double compensated_sum(std::span<const double> terms) {
  NeumaierSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

double weighted_mean(std::span<const double> masses,
                     std::span<const double> values) {
  if (masses.empty()) throw Error(ErrorCode::kEmptySwarm, "empty swarm");
  NeumaierSum num, den;
  for (std::size_t j = 0; j < masses.size(); ++j) {
    num.add(masses[j] * values[j]);
    den.add(masses[j]);
  }
  return num.value() / den.value();
}

double provisional_minimum(std::span<const Agent> agents, const Objective& f) {
  if (agents.empty()) throw Error(ErrorCode::kEmptySwarm, "empty swarm");
  std::vector<double> masses, values;
  masses.reserve(agents.size());
  values.reserve(agents.size());
  for (const auto& a : agents) {
    masses.push_back(a.mass);
    values.push_back(f(a.position));
  }
  return weighted_mean(masses, values);
}

SwarmState make_state(std::vector<Agent> agents, const Objective& f) {
  if (agents.empty()) throw Error(ErrorCode::kEmptySwarm, "empty swarm");
  for (const auto& a : agents) {
    if (a.position.size() != f.dim()) {
      throw Error(ErrorCode::kInvalidDimension,
                  "agent dimension does not match objective");
    }
    if (!(a.mass > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "agent masses must be positive");
    }
  }
  SwarmState state;
  state.agents = std::move(agents);
  state.total_mass0 = state.total_mass();
  refresh(state, f);
  return state;
}

std::vector<double> mass_update(const SwarmState& state, double h) {
  check_step_size(h);
  std::vector<double> out(state.size());
  compute_masses(state, h, out);
  return out;
}

std::vector<std::vector<double>> position_update(
    const SwarmState& state, const AnnealingSchedule& schedule, double h,
    std::span<const double> noise) {
  check_step_size(h);
  const std::size_t d = state.dim();
  if (noise.size() != state.size() * d) {
    throw Error(ErrorCode::kInvalidArgument, "noise must hold N x d values");
  }
  std::vector<std::vector<double>> out(state.size(), std::vector<double>(d));
  for (std::size_t j = 0; j < state.size(); ++j) {
    advance_position(state, j, schedule, h, noise.subspan(j * d, d), out[j]);
  }
  return out;
}

std::vector<std::vector<double>> position_update(
    const SwarmState& state, const AnnealingSchedule& schedule, double h,
    const RngStream& rng) {
  const std::size_t d = state.dim();
  std::vector<double> noise(state.size() * d);
  for (std::size_t j = 0; j < state.size(); ++j) {
    rng.gaussians(DrawPurpose::kBrownian, state.step_index,
                  static_cast<std::uint32_t>(j),
                  std::span<double>(noise.data() + j * d, d));
  }
  return position_update(state, schedule, h, noise);
}

namespace {

// Strong guarantee: on error the state is left at step n untouched.
void step_in_place(SwarmState& state, const Objective& f,
                   const AnnealingSchedule& schedule, double h,
                   const RngStream& rng) {
  check_step_size(h);
  const std::size_t n = state.size();
  const std::size_t d = state.dim();
  std::vector<double> next_mass(n);
  compute_masses(state, h, next_mass);

  std::vector<double> next_x(n * d);
  std::vector<double> xi(d);
  for (std::size_t j = 0; j < n; ++j) {
    rng.gaussians(DrawPurpose::kBrownian, state.step_index,
                  static_cast<std::uint32_t>(j), xi);
    advance_position(state, j, schedule, h, xi,
                     std::span<double>(next_x.data() + j * d, d));
  }
  for (std::size_t j = 0; j < n; ++j) {
    auto& agent = state.agents[j];
    std::copy_n(next_x.begin() + static_cast<std::ptrdiff_t>(j * d), d,
                agent.position.begin());
    agent.mass = next_mass[j];
  }
  ++state.step_index;
  refresh(state, f);
}

}  // namespace

SwarmState ssa_step(SwarmState state, const Objective& f,
                    const AnnealingSchedule& schedule, double h,
                    const RngStream& rng) {
  step_in_place(state, f, schedule, h, rng);
  return state;
}

std::vector<std::vector<double>> initial_positions(const RunConfig& cfg,
                                                   const RngStream& rng) {
  constexpr std::uint64_t kMaxAttempts = 1'000'000;
  const Box& box = cfg.init_box;
  std::vector<std::vector<double>> out(cfg.n_agents,
                                       std::vector<double>(cfg.dim));
  std::vector<double> u(cfg.dim);
  for (std::size_t j = 0; j < cfg.n_agents; ++j) {
    auto& x = out[j];
    std::uint64_t attempt = 0;
    do {
      if (attempt == kMaxAttempts) {
        throw Error(ErrorCode::kSemanticError,
                    "exclusion region leaves no reachable part of init_box");
      }
      rng.uniforms(DrawPurpose::kInitPosition, attempt++,
                   static_cast<std::uint32_t>(j), u);
      for (std::size_t i = 0; i < cfg.dim; ++i) {
        x[i] = box.lower[i] + u[i] * (box.upper[i] - box.lower[i]);
      }
    } while (excluded(cfg.exclusion, x));
  }
  return out;
}

std::vector<double> initial_masses(const RunConfig& cfg) {
  if (!cfg.initial_masses.empty()) return cfg.initial_masses;
  return std::vector<double>(cfg.n_agents,
                             1.0 / static_cast<double>(cfg.n_agents));
}

TrialRecord run(const RunConfig& cfg, const Objective& f, const RngStream& rng) {
  TrialRecord rec;
  rec.config_hash = config_hash(cfg);
  rec.seed = rng.seed();
  rec.trial = rng.trial();
  rec.global_min_value = f.global_min_value();

  auto positions = initial_positions(cfg, rng);
  const auto masses = initial_masses(cfg);
  std::vector<Agent> agents(cfg.n_agents);
  for (std::size_t j = 0; j < cfg.n_agents; ++j) {
    agents[j] = Agent{std::move(positions[j]), masses[j]};
  }
  SwarmState state = make_state(std::move(agents), f);

  const std::uint64_t stride = std::max<std::uint64_t>(1, cfg.record_stride);
  const std::uint64_t tail_start = cfg.n_steps / 2;
  NeumaierSum tail;
  std::uint64_t tail_count = 0;

  auto observe = [&](std::uint64_t n) {
    double mean = 0.0;
    for (double v : state.values) mean += v;
    mean /= static_cast<double>(state.size());
    if (n >= tail_start) {
      tail.add(mean);
      ++tail_count;
    }
    if (n % stride == 0 || n == cfg.n_steps) {
      rec.times.push_back(static_cast<double>(n) * cfg.h);
      rec.fbar.push_back(state.provisional_min);
      rec.mass_sum.push_back(state.total_mass());
      rec.mean_value.push_back(mean);
    }
  };

  observe(0);
  try {
    for (std::uint64_t n = 1; n <= cfg.n_steps; ++n) {
      step_in_place(state, f, cfg.schedule, cfg.h, rng);
      observe(n);
    }
  } catch (const Error& e) {
    rec.abort = AbortInfo{state.step_index, e.code(), e.what()};
  }

  rec.steps_completed = state.step_index;
  rec.final_fbar = state.provisional_min;
  const auto best = std::min_element(state.values.begin(), state.values.end());
  const auto j_opt = static_cast<std::size_t>(best - state.values.begin());
  rec.final_best_value = *best;
  rec.final_best_point = state.agents[j_opt].position;
  rec.tail_mean_value =
      tail_count > 0 ? tail.value() / static_cast<double>(tail_count) : 0.0;
  return rec;
}

TrialRecord run(const RunConfig& cfg, const RngStream& rng) {
  return run(cfg, make_objective(cfg), rng);
}

}  // namespace ssa
