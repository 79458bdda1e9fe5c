#pragma once

#include <string>
#include <string_view>

namespace ssa {

enum class ScheduleVariant { kSmoothBump, kTanhStep, kConstant, kZero };

std::string_view to_string(ScheduleVariant v) noexcept;
ScheduleVariant parse_schedule_variant(std::string_view name);

/// Mass-to-noise map m -> gamma(m).  Non-increasing in m, bounded by alpha.
struct AnnealingSchedule {
  ScheduleVariant variant = ScheduleVariant::kSmoothBump;
  double alpha = 1.0;
  double beta = 0.125;
  double sharpness = 1000.0;

  static AnnealingSchedule smooth_bump(double alpha, double beta);
  static AnnealingSchedule tanh_step(double alpha, double beta,
                                     double sharpness = 1000.0);
  static AnnealingSchedule constant(double alpha);
  static AnnealingSchedule zero();

  void validate() const;

  bool operator==(const AnnealingSchedule&) const = default;
};

/// smooth_bump: alpha exp(m / (m - beta)) for m < beta, 0 otherwise.
/// tanh_step:   alpha (1 - tanh(sharpness (m - beta))) / 2.
/// constant:    alpha.   zero: 0.
double gamma(const AnnealingSchedule& schedule, double mass) noexcept;

}  // namespace ssa
