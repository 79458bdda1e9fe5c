#include "objective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "rng.hpp"

namespace ssa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

inline double sgn(double v) noexcept {
  return static_cast<double>((v > 0.0) - (v < 0.0));
}

inline double sq(double v) noexcept { return v * v; }

void require_dim(std::size_t dim, const char* what) {
  if (dim == 0) {
    throw Error(ErrorCode::kInvalidDimension,
                std::string(what) + ": dimension must be at least 1");
  }
}

// Walks outward along the first axis from the global minimizer at the origin
// and brackets the first local maximum (basin edge) and the next local
// minimum of the axis restriction t -> F(t e_1).
struct AxisScan {
  double basin_radius;
  double next_min_value;
};

AxisScan scan_first_axis(const ValueGradFn& fn, std::size_t dim) {
  std::vector<double> x(dim, 0.0);
  std::vector<double> g(dim, 0.0);
  auto slope = [&](double t) {
    x[0] = t;
    fn(x, g);
    return g[0];
  };
  auto bisect = [&](double lo, double hi, bool rising_at_lo) {
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
      const double mid = 0.5 * (lo + hi);
      if ((slope(mid) > 0.0) == rising_at_lo) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  constexpr double kStep = 1e-3;
  double t = kStep;
  while (slope(t) > 0.0) t += kStep;
  const double edge = bisect(t - kStep, t, true);
  while (slope(t) <= 0.0) t += kStep;
  const double next_min = bisect(t - kStep, t, false);
  x[0] = next_min;
  return {edge, fn(x, {})};
}

}  // namespace

bool Box::contains(std::span<const double> x) const noexcept {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

double Box::volume() const noexcept {
  double v = 1.0;
  for (std::size_t i = 0; i < lower.size(); ++i) v *= upper[i] - lower[i];
  return v;
}

Box Box::cube(std::size_t dim, double lo, double hi) {
  return Box{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

Objective::Objective(std::string name, std::size_t dim, ValueGradFn fn,
                     ObjectiveTraits traits)
    : name_(std::move(name)), dim_(dim), fn_(std::move(fn)),
      traits_(std::move(traits)) {
  require_dim(dim_, name_.c_str());
}

std::vector<double> Objective::gradient(std::span<const double> x) const {
  std::vector<double> g(dim_, 0.0);
  fn_(x, g);
  return g;
}

std::optional<double> Objective::success_epsilon() const {
  if (!traits_.best_local_min_value) return std::nullopt;
  return 0.5 * (*traits_.best_local_min_value - traits_.global_min_value);
}

Objective ackley(std::size_t dim, double a, double c, double d) {
  require_dim(dim, "ackley");
  if (!(a > 0.0) || !(c > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ackley: A and C must be positive");
  }
  const double inv_d = 1.0 / static_cast<double>(dim);
  ValueGradFn fn = [a, c, d, inv_d](std::span<const double> x,
                                    std::span<double> g) {
    double sum_sq = 0.0;
    double sum_cos = 0.0;
    for (double xi : x) {
      sum_sq += xi * xi;
      sum_cos += std::cos(2.0 * kPi * xi);
    }
    const double radius = std::sqrt(sum_sq * inv_d);
    const double radial = std::exp(-c * radius);
    const double wave = std::exp(sum_cos * inv_d);
    if (!g.empty()) {
      // Zero subgradient for the radial cone at the origin.
      const double radial_coef =
          radius > 0.0 ? a * c * radial * inv_d / radius : 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        g[i] = radial_coef * x[i] +
               wave * 2.0 * kPi * inv_d * std::sin(2.0 * kPi * x[i]);
      }
    }
    return -a * std::expm1(-c * radius) + (kE - wave) + d;
  };
  ObjectiveTraits traits;
  traits.global_min_value = d;
  traits.global_min_point = std::vector<double>(dim, 0.0);
  traits.smooth_everywhere = false;
  traits.params = {{"A", a}, {"C", c}, {"D", d}};
  traits.default_box = Box::cube(dim, -5.0, 5.0);
  traits.nonsmooth_distance = [](std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
  };
  const AxisScan scan = scan_first_axis(fn, dim);
  traits.basin_radius = scan.basin_radius;
  traits.best_local_min_value = scan.next_min_value;
  return Objective("ackley", dim, std::move(fn), std::move(traits));
}

Objective rastrigin(std::size_t dim, double d, double quad_coef) {
  require_dim(dim, "rastrigin");
  if (!(quad_coef > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "rastrigin: quad_coef must be positive");
  }
  ValueGradFn fn = [d, quad_coef](std::span<const double> x,
                                  std::span<double> g) {
    double v = 10.0 * static_cast<double>(x.size()) + d;
    for (std::size_t i = 0; i < x.size(); ++i) {
      v += quad_coef * x[i] * x[i] - 10.0 * std::cos(2.0 * kPi * x[i]);
      if (!g.empty()) {
        g[i] = 2.0 * quad_coef * x[i] + 20.0 * kPi * std::sin(2.0 * kPi * x[i]);
      }
    }
    return v;
  };
  ObjectiveTraits traits;
  traits.global_min_value = d;
  traits.global_min_point = std::vector<double>(dim, 0.0);
  traits.smooth_everywhere = true;
  traits.params = {{"D", d}, {"quad_coef", quad_coef}};
  traits.default_box = Box::cube(dim, -5.12, 5.12);
  const AxisScan scan = scan_first_axis(fn, dim);
  traits.basin_radius = scan.basin_radius;
  traits.best_local_min_value = scan.next_min_value;
  const char* name = quad_coef == 1.0 ? "rastrigin"
                     : quad_coef == 2.0 ? "rastrigin_modified"
                                        : "rastrigin";
  return Objective(name, dim, std::move(fn), std::move(traits));
}

Objective levy() {
  ValueGradFn fn = [](std::span<const double> x, std::span<double> g) {
    const double w1 = 1.0 + (x[0] - 1.0) / 4.0;
    const double w2 = 1.0 + (x[1] - 1.0) / 4.0;
    const double s1 = std::sin(kPi * w1);
    const double s1p = std::sin(kPi * w1 + 1.0);
    const double s2 = std::sin(2.0 * kPi * w2);
    if (!g.empty()) {
      const double dw1 = kPi * std::sin(2.0 * kPi * w1) +
                         2.0 * (w1 - 1.0) * (1.0 + 10.0 * s1p * s1p) +
                         10.0 * kPi * sq(w1 - 1.0) *
                             std::sin(2.0 * (kPi * w1 + 1.0));
      const double dw2 = 2.0 * (w2 - 1.0) * (1.0 + s2 * s2) +
                         2.0 * kPi * sq(w2 - 1.0) * std::sin(4.0 * kPi * w2);
      g[0] = dw1 / 4.0;
      g[1] = dw2 / 4.0;
    }
    return s1 * s1 + sq(w1 - 1.0) * (1.0 + 10.0 * s1p * s1p) +
           sq(w2 - 1.0) * (1.0 + s2 * s2);
  };
  ObjectiveTraits traits;
  traits.global_min_point = std::vector<double>{1.0, 1.0};
  traits.default_box = Box::cube(2, -10.0, 10.0);
  return Objective("levy", 2, std::move(fn), std::move(traits));
}

Objective levy13() {
  ValueGradFn fn = [](std::span<const double> x, std::span<double> g) {
    const double sx = std::sin(3.0 * kPi * x[0]);
    const double sy3 = std::sin(3.0 * kPi * x[1]);
    const double sy2 = std::sin(2.0 * kPi * x[1]);
    if (!g.empty()) {
      g[0] = 3.0 * kPi * std::sin(6.0 * kPi * x[0]) +
             2.0 * (x[0] - 1.0) * (1.0 + sy3 * sy3);
      g[1] = 3.0 * kPi * sq(x[0] - 1.0) * std::sin(6.0 * kPi * x[1]) +
             2.0 * (x[1] - 1.0) * (1.0 + sy2 * sy2) +
             2.0 * kPi * sq(x[1] - 1.0) * std::sin(4.0 * kPi * x[1]);
    }
    return sx * sx + sq(x[0] - 1.0) * (1.0 + sy3 * sy3) +
           sq(x[1] - 1.0) * (1.0 + sy2 * sy2);
  };
  ObjectiveTraits traits;
  traits.global_min_point = std::vector<double>{1.0, 1.0};
  traits.default_box = Box::cube(2, -10.0, 10.0);
  return Objective("levy13", 2, std::move(fn), std::move(traits));
}

Objective drop_wave() {
  ValueGradFn fn = [](std::span<const double> x, std::span<double> g) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    const double r = std::sqrt(r2);
    const double num = 1.0 + std::cos(12.0 * r);
    const double den = 0.5 * r2 + 2.0;
    if (!g.empty()) {
      // sin(12 r) / r -> 12 at the origin, where the gradient vanishes.
      const double sinc = r > 0.0 ? std::sin(12.0 * r) / r : 12.0;
      const double coef = (12.0 * sinc * den + num) / (den * den);
      g[0] = coef * x[0];
      g[1] = coef * x[1];
    }
    return -num / den;
  };
  ObjectiveTraits traits;
  traits.global_min_value = -1.0;
  traits.global_min_point = std::vector<double>{0.0, 0.0};
  traits.smooth_everywhere = false;
  traits.default_box = Box::cube(2, -5.12, 5.12);
  traits.nonsmooth_distance = [](std::span<const double> x) {
    return std::hypot(x[0], x[1]);
  };
  return Objective("dropwave", 2, std::move(fn), std::move(traits));
}

Objective schaffer2() {
  ValueGradFn fn = [](std::span<const double> x, std::span<double> g) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    const double u = x[0] * x[0] - x[1] * x[1];
    const double s = std::sin(u);
    const double base = 1.0 + 0.001 * r2;
    const double den = base * base;
    const double num = s * s - 0.5;
    if (!g.empty()) {
      const double s2u = std::sin(2.0 * u);
      const double damp = num * 0.004 / (den * base);
      g[0] = 2.0 * x[0] * s2u / den - damp * x[0];
      g[1] = -2.0 * x[1] * s2u / den - damp * x[1];
    }
    return 0.5 + num / den;
  };
  ObjectiveTraits traits;
  traits.global_min_point = std::vector<double>{0.0, 0.0};
  traits.default_box = Box::cube(2, -100.0, 100.0);
  return Objective("schaffer2", 2, std::move(fn), std::move(traits));
}

Objective bukin6() {
  ValueGradFn fn = [](std::span<const double> x, std::span<double> g) {
    const double u = x[1] - x[0] * x[0] / 100.0;
    const double root = std::sqrt(std::abs(u));
    if (!g.empty()) {
      // Zero subgradient on the ridge u = 0 and on the kink x = -10.
      const double du = root > 0.0 ? 50.0 * sgn(u) / root : 0.0;
      g[0] = -du * x[0] / 50.0 + 0.01 * sgn(x[0] + 10.0);
      g[1] = du;
    }
    return 100.0 * root + 0.01 * std::abs(x[0] + 10.0);
  };
  ObjectiveTraits traits;
  traits.global_min_point = std::vector<double>{-10.0, 1.0};
  traits.smooth_everywhere = false;
  traits.default_box = Box{{-15.0, -3.0}, {-5.0, 3.0}};
  traits.nonsmooth_distance = [](std::span<const double> x) {
    return std::min(std::abs(x[1] - x[0] * x[0] / 100.0),
                    std::abs(x[0] + 10.0));
  };
  return Objective("bukin6", 2, std::move(fn), std::move(traits));
}

std::vector<Objective> appendix_c_suite() {
  return {levy(), levy13(), drop_wave(), schaffer2(), bukin6()};
}

std::vector<Objective> catalog() {
  std::vector<Objective> all{ackley(2), rastrigin(2, 0.0, 1.0),
                             rastrigin(2, 0.0, 2.0)};
  for (auto& f : appendix_c_suite()) all.push_back(std::move(f));
  return all;
}

std::vector<std::string> objective_names() {
  return {"ackley", "rastrigin", "rastrigin_modified", "levy",
          "levy13", "dropwave",  "schaffer2",          "bukin6"};
}

Objective make_objective(const std::string& name, std::size_t dim,
                         const std::map<std::string, double>& params) {
  auto param = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto only = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
      if (std::none_of(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; })) {
        throw Error(ErrorCode::kSchemaError,
                    "objective '" + name + "' has no parameter '" + key + "'");
      }
    }
  };
  if (name == "ackley") {
    only({"A", "C", "D"});
    return ackley(dim, param("A", 20.0), param("C", 0.2), param("D", 0.0));
  }
  if (name == "rastrigin" || name == "rastrigin_modified") {
    only({"D", "quad_coef"});
    const double quad = param("quad_coef", name == "rastrigin" ? 1.0 : 2.0);
    return rastrigin(dim, param("D", 0.0), quad);
  }
  using Factory = Objective (*)();
  const std::map<std::string, Factory> fixed{
      {"levy", &levy},         {"levy13", &levy13},       {"dropwave", &drop_wave},
      {"schaffer2", &schaffer2}, {"bukin6", &bukin6}};
  const auto it = fixed.find(name);
  if (it == fixed.end()) {
    throw Error(ErrorCode::kUnknownObjective, "unknown objective '" + name + "'");
  }
  only({});
  if (dim != 2) {
    throw Error(ErrorCode::kInvalidDimension,
                name + ": only defined for dim = 2");
  }
  return it->second();
}

std::vector<double> fd_gradient(const Objective& f, std::span<const double> x,
                                double step) {
  if (!(step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fd_gradient: step must be > 0");
  }
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = f(probe);
    probe[i] = x[i] - step;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

GradientCheck check_gradient(const Objective& f, const RngStream& rng,
                             std::size_t n_points, double step, double rel_tol,
                             double abs_floor, double exclusion) {
  GradientCheck out{f.name(), f.dim(), 0, 0, 0.0, true};
  const Box& box = f.default_box();
  std::vector<double> x(f.dim());
  std::vector<double> u(f.dim());
  std::uint64_t draw = 0;
  const auto& distance = f.traits().nonsmooth_distance;
  while (out.points < n_points) {
    rng.uniforms(DrawPurpose::kGradientCheck, draw++, 0, u);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = box.lower[i] + u[i] * (box.upper[i] - box.lower[i]);
    }
    if (distance && distance(x) < exclusion) {
      ++out.skipped;
      continue;
    }
    const auto analytic = f.gradient(x);
    const auto numeric = fd_gradient(f, x, step);
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      err = std::max(err, std::abs(analytic[i] - numeric[i]));
      scale = std::max(scale, std::abs(analytic[i]));
    }
    const double rel = err / std::max(scale, abs_floor / rel_tol);
    out.max_rel_error = std::max(out.max_rel_error, rel);
    ++out.points;
  }
  out.passed = out.max_rel_error <= rel_tol;
  return out;
}

}  // namespace ssa
