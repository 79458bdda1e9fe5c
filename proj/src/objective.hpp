#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ssa {

class RngStream;

/// Axis-aligned box [lower, upper] in R^d.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const noexcept { return lower.size(); }
  bool contains(std::span<const double> x) const noexcept;
  double volume() const noexcept;

  static Box cube(std::size_t dim, double lo, double hi);
};

/// Evaluates F(x).  When `grad` is non-empty it also receives grad F(x).
using ValueGradFn =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Distance-like measure to the set where grad F is undefined.
using DistanceFn = std::function<double(std::span<const double> x)>;

struct ObjectiveTraits {
  double global_min_value = 0.0;
  std::optional<std::vector<double>> global_min_point;
  bool smooth_everywhere = true;
  std::map<std::string, double> params;
  Box default_box;
  DistanceFn nonsmooth_distance;
  /// Radius of the global basin measured along the first axis.
  std::optional<double> basin_radius;
  /// Value of the lowest non-global local minimum.
  std::optional<double> best_local_min_value;
};

/// Immutable objective with analytic gradient and catalog metadata.
class Objective {
 public:
  Objective(std::string name, std::size_t dim, ValueGradFn fn,
            ObjectiveTraits traits);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const ObjectiveTraits& traits() const noexcept { return traits_; }

  double global_min_value() const noexcept { return traits_.global_min_value; }
  const std::optional<std::vector<double>>& global_min_point() const noexcept {
    return traits_.global_min_point;
  }
  bool smooth_everywhere() const noexcept { return traits_.smooth_everywhere; }
  const Box& default_box() const noexcept { return traits_.default_box; }

  double value(std::span<const double> x) const { return fn_(x, {}); }
  double operator()(std::span<const double> x) const { return fn_(x, {}); }
  std::vector<double> gradient(std::span<const double> x) const;
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const {
    return fn_(x, grad);
  }

  /// Half the gap between the global minimum and the best local minimum.
  /// Empty when the catalog does not record the local minimum.
  std::optional<double> success_epsilon() const;

 private:
  std::string name_;
  std::size_t dim_;
  ValueGradFn fn_;
  ObjectiveTraits traits_;
};

Objective ackley(std::size_t dim, double a = 20.0, double c = 0.2,
                 double d = 0.0);
Objective rastrigin(std::size_t dim, double d = 0.0, double quad_coef = 1.0);
Objective levy();
Objective levy13();
Objective drop_wave();
Objective schaffer2();
Objective bukin6();

/// The five two-dimensional objectives of the supplementary experiments.
std::vector<Objective> appendix_c_suite();

/// All eight catalog entries, with d = 2 for the Ackley/Rastrigin family.
std::vector<Objective> catalog();

/// Builds a catalog objective by name.  Recognised parameters: A, C, D for
/// ackley; D, quad_coef for rastrigin and rastrigin_modified.
Objective make_objective(const std::string& name, std::size_t dim,
                         const std::map<std::string, double>& params = {});

std::vector<std::string> objective_names();

/// Central differences (f(x + s e_i) - f(x - s e_i)) / (2 s).
std::vector<double> fd_gradient(const Objective& f, std::span<const double> x,
                                double step);

struct GradientCheck {
  std::string name;
  std::size_t dim = 0;
  std::size_t points = 0;
  std::size_t skipped = 0;
  double max_rel_error = 0.0;
  bool passed = false;
};

/// Compares grad against fd_gradient at `n_points` uniform points of the
/// default box, skipping points within `exclusion` of a non-smooth locus.
/// A point passes when |g - g_fd|_inf <= max(rel_tol |g|_inf, abs_floor).
GradientCheck check_gradient(const Objective& f, const RngStream& rng,
                             std::size_t n_points, double step = 1e-6,
                             double rel_tol = 1e-5, double abs_floor = 1e-7,
                             double exclusion = 1e-3);

}  // namespace ssa
