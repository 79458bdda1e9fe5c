#include "annealing.hpp"

#include <cmath>

#include "error.hpp"

namespace ssa {

std::string_view to_string(ScheduleVariant v) noexcept {
  switch (v) {
    case ScheduleVariant::kSmoothBump: return "smooth_bump";
    case ScheduleVariant::kTanhStep: return "tanh_step";
    case ScheduleVariant::kConstant: return "constant";
    case ScheduleVariant::kZero: return "zero";
  }
  return "zero";
}

ScheduleVariant parse_schedule_variant(std::string_view name) {
  if (name == "smooth_bump") return ScheduleVariant::kSmoothBump;
  if (name == "tanh_step") return ScheduleVariant::kTanhStep;
  if (name == "constant") return ScheduleVariant::kConstant;
  if (name == "zero") return ScheduleVariant::kZero;
  throw Error(ErrorCode::kSchemaError,
              "schedule.variant: unknown variant '" + std::string(name) + "'");
}

AnnealingSchedule AnnealingSchedule::smooth_bump(double alpha, double beta) {
  return {ScheduleVariant::kSmoothBump, alpha, beta, 1000.0};
}

AnnealingSchedule AnnealingSchedule::tanh_step(double alpha, double beta,
                                               double sharpness) {
  return {ScheduleVariant::kTanhStep, alpha, beta, sharpness};
}

AnnealingSchedule AnnealingSchedule::constant(double alpha) {
  return {ScheduleVariant::kConstant, alpha, 1.0, 1000.0};
}

AnnealingSchedule AnnealingSchedule::zero() {
  return {ScheduleVariant::kZero, 0.0, 1.0, 1000.0};
}

void AnnealingSchedule::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kSemanticError, "schedule.alpha must be >= 0");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kSemanticError, "schedule.beta must be > 0");
  }
  if (!(sharpness > 0.0) || !std::isfinite(sharpness)) {
    throw Error(ErrorCode::kSemanticError, "schedule.sharpness must be > 0");
  }
}

double gamma(const AnnealingSchedule& s, double mass) noexcept {
  switch (s.variant) {
    case ScheduleVariant::kSmoothBump: {
      if (mass >= s.beta) return 0.0;
      // The exponent m / (m - beta) runs to -inf as m -> beta; exp of
      // anything below about -745 is exactly 0, which keeps this finite.
      const double exponent = mass / (mass - s.beta);
      return exponent < -800.0 ? 0.0 : s.alpha * std::exp(exponent);
    }
    case ScheduleVariant::kTanhStep:
      return s.alpha * (0.5 - 0.5 * std::tanh(s.sharpness * (mass - s.beta)));
    case ScheduleVariant::kConstant:
      return s.alpha;
    case ScheduleVariant::kZero:
      return 0.0;
  }
  return 0.0;
}

}  // namespace ssa
