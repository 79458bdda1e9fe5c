#include <doctest.h>

#include <cmath>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "swarm.hpp"

using namespace ssa;

namespace {

Objective identity_1d() {
  return Objective("identity", 1,
                   [](std::span<const double> x, std::span<double> g) {
                     if (!g.empty()) g[0] = 1.0;
                     return x[0];
                   },
                   {});
}

Objective half_square() {
  return Objective("half_square", 1,
                   [](std::span<const double> x, std::span<double> g) {
                     if (!g.empty()) g[0] = x[0];
                     return 0.5 * x[0] * x[0];
                   },
                   {0.0, std::vector<double>{0.0}, true, {}, Box::cube(1, -2, 2)});
}

Objective square() {
  return Objective("square", 1,
                   [](std::span<const double> x, std::span<double> g) {
                     if (!g.empty()) g[0] = 2.0 * x[0];
                     return x[0] * x[0];
                   },
                   {0.0, std::vector<double>{0.0}, true, {}, Box::cube(1, -3, 3)});
}

Objective flat(double c) {
  return Objective("flat", 1,
                   [c](std::span<const double>, std::span<double> g) {
                     for (auto& v : g) v = 0.0;
                     return c;
                   },
                   {});
}

std::vector<Agent> agents_at(std::vector<double> xs, std::vector<double> ms) {
  std::vector<Agent> out;
  for (std::size_t j = 0; j < xs.size(); ++j) out.push_back({{xs[j]}, ms[j]});
  return out;
}

RunConfig ackley_config(std::size_t n, std::uint64_t steps) {
  RunConfig cfg;
  cfg.objective = "ackley";
  cfg.dim = 1;
  cfg.n_agents = n;
  cfg.h = 1e-4;
  cfg.n_steps = steps;
  cfg.schedule = AnnealingSchedule::smooth_bump(1.0, 0.125);
  cfg.init_box = Box::cube(1, -5.0, 5.0);
  cfg.exclusion = BallRegion{{0.0}, *ackley(1).traits().basin_radius};
  cfg.record_stride = default_record_stride(steps);
  validate(cfg);
  return cfg;
}

}  // namespace

TEST_CASE("provisional minimum is the mass-weighted mean") {
  const auto f = identity_1d();
  CHECK(provisional_minimum(agents_at({2, 4}, {1, 1}), f) == 3.0);
  CHECK(provisional_minimum(agents_at({7.5}, {0.3}), f) == 7.5);
  CHECK(provisional_minimum(agents_at({2, 4}, {1, 3}), f) == 3.5);
  CHECK_THROWS_AS(provisional_minimum(std::vector<Agent>{}, f), Error);
  try {
    make_state({}, f);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptySwarm);
  }
}

TEST_CASE("mass update transfers mass downhill and conserves it") {
  const auto f = identity_1d();
  const auto state = make_state(agents_at({0, 2}, {0.5, 0.5}), f);
  CHECK(state.provisional_min == 1.0);
  const auto m = mass_update(state, 0.1);
  CHECK(std::abs(m[0] - 0.55) <= 1e-14);
  CHECK(std::abs(m[1] - 0.45) <= 1e-14);
  CHECK(std::abs(m[0] + m[1] - 1.0) <= 1e-15);

  const auto single = make_state(agents_at({3}, {0.25}), f);
  CHECK(mass_update(single, 0.9)[0] == 0.25);
}

TEST_CASE("mass update rejects a step that would make a mass non-positive") {
  const auto f = identity_1d();
  const auto state = make_state(agents_at({0, 4}, {0.5, 0.5}), f);
  try {
    mass_update(state, 0.6);
    FAIL("expected step-size-too-large");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kStepSizeTooLarge);
  }
}

TEST_CASE("position update examples") {
  const auto zero = AnnealingSchedule::zero();
  {
    const auto state = make_state(agents_at({1.0}, {1.0}), half_square());
    const std::vector<double> xi{0.4};
    CHECK(std::abs(position_update(state, zero, 0.1, xi)[0][0] - 0.9) <= 1e-15);
  }
  {
    const auto state = make_state(agents_at({0.0}, {1.0}), half_square());
    const std::vector<double> xi{2.0};
    CHECK(position_update(state, zero, 0.1, xi)[0][0] == 0.0);
  }
  {
    const auto state = make_state(agents_at({0.0}, {1.0}), flat(3.0));
    const std::vector<double> xi{1.0};
    const auto x = position_update(state, AnnealingSchedule::constant(1.0), 0.01, xi);
    CHECK(std::abs(x[0][0] - 0.1414213562373095) <= 1e-15);
  }
}

TEST_CASE("position update evaluates gamma at the pre-update mass") {
  // smooth bump, beta = 0.5: the agent below fbar gains mass past beta in the
  // mass update, yet its noise this step must use the old mass 0.45.
  const auto schedule = AnnealingSchedule::smooth_bump(1.0, 0.5);
  const auto f = identity_1d();
  auto state = make_state(agents_at({0.0, 10.0}, {0.45, 0.55}), f);
  const double h = 0.1;
  const RngStream rng(3, 0);
  std::vector<double> xi(2);
  rng.gaussians(DrawPurpose::kBrownian, 0, 0, std::span<double>(xi.data(), 1));
  rng.gaussians(DrawPurpose::kBrownian, 0, 1, std::span<double>(xi.data() + 1, 1));
  const auto next = ssa_step(state, f, schedule, h, rng);
  CHECK(next.agents[0].mass > 0.5);
  const double expected = 0.0 - h * 1.0 + std::sqrt(2.0 * h * gamma(schedule, 0.45)) * xi[0];
  CHECK(next.agents[0].position[0] == expected);
}

TEST_CASE("two-agent ssa_step matches hand arithmetic") {
  const auto f = square();
  const auto state = make_state(agents_at({-1.0, 2.0}, {0.5, 0.5}), f);
  CHECK(state.provisional_min == 2.5);
  const auto next = ssa_step(state, f, AnnealingSchedule::zero(), 0.1, RngStream(0, 0));
  CHECK(std::abs(next.agents[0].position[0] - (-0.8)) <= 1e-14);
  CHECK(std::abs(next.agents[1].position[0] - 1.6) <= 1e-14);
  CHECK(std::abs(next.agents[0].mass - 0.575) <= 1e-14);
  CHECK(std::abs(next.agents[1].mass - 0.425) <= 1e-14);
  CHECK(next.step_index == 1);
  const double fbar = (0.575 * 0.64 + 0.425 * 2.56) / 1.0;
  CHECK(std::abs(next.provisional_min - fbar) <= 1e-14);
}

TEST_CASE("zero step size leaves the state unchanged") {
  const auto f = ackley(2);
  auto state = make_state({{{0.3, -1.2}, 0.4}, {{2.0, 1.0}, 0.6}}, f);
  const auto next = ssa_step(state, f, AnnealingSchedule::constant(1.0), 0.0, RngStream(9, 9));
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(next.agents[j].position == state.agents[j].position);
    CHECK(next.agents[j].mass == state.agents[j].mass);
  }
}

TEST_CASE("single heavy agent reduces to gradient descent") {
  const auto f = ackley(1);
  const auto schedule = AnnealingSchedule::smooth_bump(1.0, 0.125);
  auto state = make_state(agents_at({2.3}, {1.0}), f);
  double x = 2.3;
  const RngStream rng(11, 0);
  for (int n = 0; n < 5000; ++n) {
    state = ssa_step(std::move(state), f, schedule, 1e-3, rng);
    x -= 1e-3 * f.gradient(std::vector<double>{x})[0];
  }
  CHECK(state.agents[0].position[0] == x);
  CHECK(std::abs(state.agents[0].mass - 1.0) <= 1e-12);
}

TEST_CASE("non-finite positions abort the step") {
  const Objective steep("steep", 1,
                        [](std::span<const double> x, std::span<double> g) {
                          if (!g.empty()) g[0] = 1e308;
                          return x[0];
                        },
                        {});
  const auto state = make_state(agents_at({-1e308}, {1.0}), steep);
  try {
    ssa_step(state, steep, AnnealingSchedule::zero(), 10.0, RngStream(0, 0));
    FAIL("expected non-finite-position");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonFinitePosition);
  }
}

TEST_CASE("swarm invariants hold along random trajectories") {
  const auto f = ackley(2);
  const auto schedule = AnnealingSchedule::smooth_bump(1.0, 0.1);
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const RngStream rng(77, trial);
    std::vector<Agent> agents;
    std::vector<double> u(2);
    for (std::uint32_t j = 0; j < 10; ++j) {
      rng.uniforms(DrawPurpose::kInitPosition, 0, j, u);
      agents.push_back({{-5 + 10 * u[0], -5 + 10 * u[1]}, 0.1});
    }
    auto state = make_state(std::move(agents), f);
    for (int n = 0; n < 2000; ++n) {
      if (n % 97 == 0) {
        const auto masses = mass_update(state, 1e-3);
        for (std::size_t j = 0; j < state.size(); ++j) {
          if (state.values[j] < state.provisional_min) CHECK(masses[j] > state.agents[j].mass);
          if (state.values[j] > state.provisional_min) CHECK(masses[j] < state.agents[j].mass);
        }
      }
      state = ssa_step(std::move(state), f, schedule, 1e-3, rng);
      const auto [lo, hi] = std::minmax_element(state.values.begin(), state.values.end());
      REQUIRE(state.provisional_min >= *lo - 1e-12);
      REQUIRE(state.provisional_min <= *hi + 1e-12);
      REQUIRE(std::abs(state.total_mass() - state.total_mass0) <= 1e-12 * state.total_mass0);
      const double fresh = provisional_minimum(state.agents, f);
      REQUIRE(std::abs(state.provisional_min - fresh) <= 1e-12 * std::abs(fresh));
    }
  }
}

TEST_CASE("run records trajectory and outputs") {
  const auto cfg = ackley_config(8, 0);
  const auto rec = run(cfg, RngStream(1, 0));
  REQUIRE(rec.times.size() == 1);
  CHECK(rec.times[0] == 0.0);
  const auto init = initial_positions(cfg, RngStream(1, 0));
  const auto f = ackley(1);
  double best = 1e300;
  for (const auto& x : init) best = std::min(best, f(x));
  CHECK(rec.final_best_value == best);
  CHECK(rec.final_fbar == rec.fbar[0]);
}

TEST_CASE("initial positions respect the box and the exclusion ball") {
  const auto cfg = ackley_config(64, 10);
  const auto f = ackley(1);
  for (const auto& x : initial_positions(cfg, RngStream(5, 2))) {
    CHECK(std::abs(x[0]) <= 5.0);
    CHECK(std::abs(x[0]) >= *f.traits().basin_radius);
  }
}

TEST_CASE("run is deterministic and tracks mass") {
  const auto cfg = ackley_config(8, 3000);
  const auto a = run(cfg, RngStream(9, 4));
  const auto b = run(cfg, RngStream(9, 4));
  CHECK(a.fbar == b.fbar);
  CHECK(a.times == b.times);
  CHECK(a.final_best_point == b.final_best_point);
  CHECK_FALSE(a.aborted());
  CHECK(a.times.size() == 3000 / cfg.record_stride + 1);
  for (std::size_t i = 1; i < a.times.size(); ++i) CHECK(a.times[i] > a.times[i - 1]);
  for (double m : a.mass_sum) CHECK(std::abs(m - 1.0) <= 1e-12);
  CHECK(a.final_best_value <= a.final_fbar);
}

TEST_CASE("oversized steps abort the run without losing the trajectory") {
  auto cfg = ackley_config(8, 100);
  cfg.h = 0.5;
  const auto rec = run(cfg, RngStream(1, 0));
  REQUIRE(rec.aborted());
  CHECK(rec.abort->cause == ErrorCode::kStepSizeTooLarge);
  CHECK(rec.abort->step == rec.steps_completed);
  CHECK(!rec.fbar.empty());
}
