#include "baselines.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"
#include "swarm.hpp"

namespace ssa {

RunConfig baseline_config(const BaselineKind& kind, RunConfig cfg) {
  if (kind.tag == BaselineKind::Tag::kDeterministic) {
    cfg.mode = Mode::kDeterministic;
  } else {
    cfg.mode = Mode::kLangevin;
    cfg.sigma = kind.sigma;
  }
  validate(cfg);
  return cfg;
}

TrialRecord baseline_run(const BaselineKind& kind, const RunConfig& cfg,
                         const RngStream& rng) {
  return run(baseline_config(kind, cfg), rng);
}

double success_rate_bound(double p_basin, std::size_t n_agents) {
  if (!(p_basin >= 0.0 && p_basin <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "p_basin must lie in [0, 1]");
  }
  return 1.0 - std::pow(1.0 - p_basin, static_cast<double>(n_agents));
}

bool deterministic_fbar_monotone(const TrialRecord& record, double tol_per_step) {
  for (std::size_t k = 1; k < record.fbar.size(); ++k) {
    if (record.fbar[k] > record.fbar[k - 1] + tol_per_step) return false;
  }
  return true;
}

double langevin_stationary_oracle(const Objective& f, const Box& box,
                                  std::size_t points) {
  const std::size_t d = f.dim();
  if (d > 2) {
    throw Error(ErrorCode::kDimensionUnsupported,
                "dimension-unsupported: quadrature oracle needs d <= 2");
  }
  if (box.dim() != d) throw Error(ErrorCode::kInvalidDimension, "box dim mismatch");
  if (points < 2) throw Error(ErrorCode::kInvalidArgument, "need >= 2 nodes per axis");

  const std::size_t ny = d == 2 ? points : 1;
  const double hx = (box.upper[0] - box.lower[0]) / static_cast<double>(points - 1);
  const double hy = d == 2 ? (box.upper[1] - box.lower[1]) / static_cast<double>(points - 1) : 1.0;
  auto weight = [points](std::size_t i) { return (i == 0 || i + 1 == points) ? 0.5 : 1.0; };

  std::vector<double> values(points * ny);
  double f_min = std::numeric_limits<double>::infinity();
  std::vector<double> x(d);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < points; ++ix) {
      x[0] = box.lower[0] + hx * static_cast<double>(ix);
      if (d == 2) x[1] = box.lower[1] + hy * static_cast<double>(iy);
      const double v = f(x);
      values[iy * points + ix] = v;
      f_min = std::min(f_min, v);
    }
  }
  // Shift by min F so exp(-F) cannot underflow everywhere.
  double z = 0.0, num = 0.0;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double wy = d == 2 ? weight(iy) : 1.0;
    for (std::size_t ix = 0; ix < points; ++ix) {
      const double v = values[iy * points + ix];
      const double w = wy * weight(ix) * std::exp(-(v - f_min));
      z += w;
      num += w * v;
    }
  }
  return num / z;
}

bool in_global_basin(const Objective& f, std::span<const double> x) {
  const auto& center = f.global_min_point();
  const auto& radius = f.traits().basin_radius;
  if (!center || !radius) {
    throw Error(ErrorCode::kInvalidArgument,
                "objective '" + f.name() + "' has no cataloged basin");
  }
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r2 += (x[i] - (*center)[i]) * (x[i] - (*center)[i]);
  }
  return r2 < *radius * *radius;
}

}  // namespace ssa
