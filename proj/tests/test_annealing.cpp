#include <doctest.h>

#include <cmath>

#include "annealing.hpp"
#include "error.hpp"

using namespace ssa;

TEST_CASE("smooth bump values") {
  const auto s = AnnealingSchedule::smooth_bump(1.0, 0.125);
  CHECK(gamma(s, 0.2) == 0.0);
  CHECK(gamma(s, 0.125) == 0.0);
  CHECK(gamma(s, 0.0) == 1.0);
  CHECK(gamma(s, 0.0625) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
}

TEST_CASE("smooth bump vanishes continuously at the cutoff") {
  for (double beta : {1.0, 0.125, 1.0 / 64}) {
    const auto s = AnnealingSchedule::smooth_bump(3.0, beta);
    const double near = gamma(s, beta * (1.0 - 1e-6));
    CHECK(std::isfinite(near));
    CHECK(near < 1e-200 * 3.0);
    // Values straddling the cutoff in the last few ulps.
    CHECK(gamma(s, std::nextafter(beta, 0.0)) == 0.0);
  }
}

TEST_CASE("tanh step is half-amplitude at the cutoff") {
  const auto s = AnnealingSchedule::tanh_step(2.0, 0.0625);
  CHECK(gamma(s, 0.0625) == 1.0);
  CHECK(gamma(s, 0.0) == doctest::Approx(2.0));
  CHECK(gamma(s, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("degenerate variants") {
  CHECK(gamma(AnnealingSchedule::constant(0.7), 0.0) == 0.7);
  CHECK(gamma(AnnealingSchedule::constant(0.7), 5.0) == 0.7);
  CHECK(gamma(AnnealingSchedule::zero(), 0.0) == 0.0);
}

TEST_CASE("every variant is bounded and non-increasing on a dense grid") {
  const AnnealingSchedule schedules[] = {
      AnnealingSchedule::smooth_bump(1.5, 0.1), AnnealingSchedule::tanh_step(1.5, 0.1),
      AnnealingSchedule::tanh_step(1.5, 0.1, 7.0), AnnealingSchedule::constant(1.5),
      AnnealingSchedule::zero()};
  for (const auto& s : schedules) {
    double prev = gamma(s, 0.0);
    for (int i = 0; i <= 100000; ++i) {
      const double m = 1e-5 * i;
      const double g = gamma(s, m);
      REQUIRE(g >= 0.0);
      REQUIRE(g <= s.alpha);
      REQUIRE(g <= prev);
      prev = g;
    }
  }
}

TEST_CASE("schedule validation and names") {
  CHECK_THROWS_AS(AnnealingSchedule::smooth_bump(-1.0, 0.1).validate(), Error);
  CHECK_THROWS_AS(AnnealingSchedule::smooth_bump(1.0, 0.0).validate(), Error);
  CHECK_NOTHROW(AnnealingSchedule::tanh_step(1.0, 0.1).validate());
  for (auto v : {ScheduleVariant::kSmoothBump, ScheduleVariant::kTanhStep,
                 ScheduleVariant::kConstant, ScheduleVariant::kZero}) {
    CHECK(parse_schedule_variant(to_string(v)) == v);
  }
  CHECK_THROWS_AS(parse_schedule_variant("cosine"), Error);
}
