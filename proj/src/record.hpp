#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace ssa {

struct AbortInfo {
  std::uint64_t step = 0;
  ErrorCode cause = ErrorCode::kOk;
  std::string message;
};

/// Output of one trial: the recorded provisional-minimum trajectory plus
/// the final outputs (best agent and final provisional minimum).
struct TrialRecord {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  double global_min_value = 0.0;

  std::vector<double> times;
  std::vector<double> fbar;
  std::vector<double> mass_sum;
  std::vector<double> mean_value;  // unweighted (1/N) sum_j F(x^j)

  double final_fbar = 0.0;
  double final_best_value = 0.0;
  std::vector<double> final_best_point;
  /// Time average of (1/N) sum_j F(x^j) over steps n >= n_T / 2.
  double tail_mean_value = 0.0;
  std::uint64_t steps_completed = 0;
  std::optional<AbortInfo> abort;

  bool aborted() const noexcept { return abort.has_value(); }
};

}  // namespace ssa
