#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "annealing.hpp"
#include "objective.hpp"

namespace ssa {

enum class Mode { kSsa, kDeterministic, kLangevin };

std::string_view to_string(Mode m) noexcept;

struct BallRegion {
  std::vector<double> center;
  double radius = 0.0;
  bool operator==(const BallRegion&) const = default;
};

struct BoxRegion {
  Box box;
  bool operator==(const BoxRegion& o) const {
    return box.lower == o.box.lower && box.upper == o.box.upper;
  }
};

/// Region removed from the initialization box (rejection sampling).
using ExclusionRegion = std::variant<std::monostate, BallRegion, BoxRegion>;

bool excluded(const ExclusionRegion& region, std::span<const double> x);

/// Fully resolved run configuration.  Produced by parse_config; every field
/// holds its effective value so serialize_config(cfg) round-trips.
struct RunConfig {
  std::string objective = "ackley";
  std::map<std::string, double> objective_params;
  std::size_t dim = 1;
  Mode mode = Mode::kSsa;
  AnnealingSchedule schedule;
  double sigma = 1.0;  // Langevin amplitude
  std::size_t n_agents = 8;
  double h = 1e-4;
  std::uint64_t n_steps = 20000;
  Box init_box;
  ExclusionRegion exclusion;
  std::vector<double> initial_masses;  // empty means uniform 1/N
  std::uint64_t record_stride = 10;
  std::uint64_t seed = 0;

  // Experiment-level settings consumed by the harness and CLI.
  std::size_t trials = 20;
  std::vector<std::size_t> sweep_n;
  std::vector<double> sweep_beta;
  std::size_t quadrature_points = 4001;

  bool operator==(const RunConfig& o) const;
};

std::uint64_t default_record_stride(std::uint64_t n_steps) noexcept;

/// Parses the JSON configuration text, fills defaults and validates.
/// Throws Error(kSchemaError) for structural problems (unknown keys, wrong
/// types) and Error(kSemanticError) for invalid values.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Checks invariants and resolves mode-implied schedules in place.
void validate(RunConfig& cfg);

/// Canonical JSON serialization (sorted keys, shortest round-trip doubles).
std::string serialize_config(const RunConfig& cfg);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

Objective make_objective(const RunConfig& cfg);

}  // namespace ssa
